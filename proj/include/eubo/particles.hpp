#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "eubo/model.hpp"
#include "eubo/variational.hpp"

namespace eubo {

// One Monte Carlo batch: M reparameterized draws with everything the bound
// and gradient estimators need. log_omega = log_joint - log_q is the
// log importance weight against the (unnormalized) joint; weights_hat is its
// self-normalized counterpart.
struct ParticleBatch {
    NoiseDraw noise;            // the eps draws behind theta, for pathwise gradients
    Eigen::MatrixXd theta;      // M x D
    Eigen::VectorXd log_joint;  // minibatch-scaled log p(D, theta_i)
    Eigen::VectorXd log_q;      // log q(theta_i; lambda)
    Eigen::VectorXd log_omega;  // log_joint - log_q
    Eigen::VectorXd weights_hat; // normalized, sums to 1

    Eigen::Index size() const { return theta.rows(); }
};

// Draw M particles from q and evaluate the model on the given rows.
// Deterministic in `seed`. Throws DegenerateWeightsError if every weight
// underflows.
ParticleBatch simulate_particles(const Model& model, std::span<const int> rows,
                                 Eigen::Index total_n, const VariationalParams& params,
                                 Eigen::Index m, std::uint64_t seed);

// Same, but from caller-supplied noise (finite-difference tests perturb
// lambda while holding eps fixed).
ParticleBatch simulate_particles(const Model& model, std::span<const int> rows,
                                 Eigen::Index total_n, const VariationalParams& params,
                                 const NoiseDraw& noise);

} // namespace eubo
