#pragma once

#include <span>

#include <Eigen/Dense>

#include "eubo/bounds.hpp"
#include "eubo/model.hpp"
#include "eubo/particles.hpp"
#include "eubo/variational.hpp"

namespace eubo {

// A stochastic gradient of one bound with respect to lambda = (mu, log_sigma).
struct GradientEstimate {
    enum class Tag { EUBO_SCORE, EUBO_REPARAM, ELBO_REPARAM, RENYI_REPARAM, CHI_SCORE };

    Eigen::VectorXd grad_mu;
    Eigen::VectorXd grad_log_sigma;
    Tag tag = Tag::EUBO_SCORE;

    Eigen::VectorXd flat() const; // [grad_mu; grad_log_sigma]
    bool all_finite() const;
};

// --- score-form estimators (samples held fixed, no pathwise term) ---------

// grad U ~= -sum_i w_hat_i * grad_lambda log q(theta_i; lambda).
// Consistent for the EUBO gradient as M grows; works for models without
// theta-gradients.
GradientEstimate eubo_score_gradient(const ParticleBatch& batch,
                                     const VariationalParams& params);

// Score-form gradient of n * U_chi^n = log E_q[omega^n]:
// (1-n) * sum_i w_i^(n) grad_lambda log q, with w^(n) ∝ exp(n log_omega).
// For n = 2 this is -sum_i w_i^(2) grad_lambda log q. The positive factor n
// relative to U_chi^n itself only rescales, so descent directions agree.
GradientEstimate chi_score_gradient(const ParticleBatch& batch,
                                    const VariationalParams& params, double n = 2.0);

// --- reparameterized (pathwise) estimators --------------------------------
// These differentiate through theta = mu + sigma .* eps and need the model's
// theta-gradients; they throw CapabilityError otherwise. Each takes the
// particle batch that was simulated from `params` (its noise draws are the
// pathway). Writing s_i = log_omega(theta_i), the total derivative of s_i is
//   ds/dmu        = grad_theta log p(D, theta)
//   ds/dlog_sigma = grad_theta log p(D, theta) .* (sigma .* eps) + 1
// (the +1 is the total derivative of -log q through the pathway).

// Pathwise gradient of the ELBO estimate (1/M) sum_i s_i.
GradientEstimate elbo_reparam_gradient(const Model& model, std::span<const int> rows,
                                       Eigen::Index total_n,
                                       const VariationalParams& params,
                                       const ParticleBatch& batch);

// Exact pathwise gradient of the SNIS EUBO estimate U_hat = sum_i w_hat_i s_i,
// differentiating through the weights as well:
//   grad U_hat = sum_i w_hat_i (c_i + 1) ds_i,  c_i = s_i - U_hat.
// Dropping the grad-theta pathway term-by-term recovers eubo_score_gradient.
GradientEstimate eubo_reparam_gradient(const Model& model, std::span<const int> rows,
                                       Eigen::Index total_n,
                                       const VariationalParams& params,
                                       const ParticleBatch& batch);

// Pathwise gradient of the Renyi bound 1/(1-alpha) log-mean-exp((1-alpha) s):
// sum_i w_i^(alpha) ds_i with w^(alpha) ∝ exp((1-alpha) s). The bound's
// 1/(1-alpha) prefactor cancels against the chain rule, so none appears.
GradientEstimate renyi_reparam_gradient(const Model& model, std::span<const int> rows,
                                        Eigen::Index total_n,
                                        const VariationalParams& params,
                                        const ParticleBatch& batch, double alpha);

// Convenience overloads matching the simulate-then-estimate flow.
GradientEstimate elbo_reparam_gradient(const Model& model, std::span<const int> rows,
                                       const NoiseDraw& noise,
                                       const VariationalParams& params,
                                       Eigen::Index total_n);
GradientEstimate eubo_reparam_gradient(const Model& model, std::span<const int> rows,
                                       const NoiseDraw& noise,
                                       const VariationalParams& params,
                                       Eigen::Index total_n);
GradientEstimate renyi_reparam_gradient(const Model& model, std::span<const int> rows,
                                        const NoiseDraw& noise,
                                        const VariationalParams& params,
                                        Eigen::Index total_n, double alpha);

} // namespace eubo
