#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

namespace eubo {

// Fully factorized Gaussian variational family, lambda = (mu, log_sigma).
// The log-scale parameterization keeps sigma > 0 without constraints.
struct VariationalParams {
    Eigen::VectorXd mu;
    Eigen::VectorXd log_sigma;

    VariationalParams() = default;
    VariationalParams(Eigen::VectorXd mu_, Eigen::VectorXd log_sigma_);

    Eigen::Index dim() const { return mu.size(); }
    Eigen::VectorXd sigma() const { return log_sigma.array().exp(); }
    bool all_finite() const;
};

// M x D standard-normal draws plus the seed that produced them, so a particle
// batch can be reproduced exactly.
struct NoiseDraw {
    Eigen::MatrixXd epsilon;
    std::uint64_t seed_record = 0;
};

NoiseDraw draw_noise(Eigen::Index m, Eigen::Index d, std::uint64_t seed);

// Deterministic stream splitting (splitmix64 finalizer): one base seed fans
// out into independent seeds for splitting, shuffling, noise, evaluation.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// theta_i = mu + sigma .* eps_i, one particle per row.
Eigen::MatrixXd reparameterize(const VariationalParams& params, const NoiseDraw& noise);

// log q(theta; lambda) = sum_d [ -0.5 log(2 pi) - log_sigma_d
//                                - (theta_d - mu_d)^2 / (2 sigma_d^2) ].
double log_density_q(const VariationalParams& params, const Eigen::VectorXd& theta);

// Gradient of log q with respect to lambda at a FIXED theta (no pathway
// through the sampling step): d/dmu = (theta-mu)/sigma^2,
// d/dlog_sigma = (theta-mu)^2/sigma^2 - 1.
std::pair<Eigen::VectorXd, Eigen::VectorXd>
grad_logq_wrt_lambda(const VariationalParams& params, const Eigen::VectorXd& theta);

} // namespace eubo
