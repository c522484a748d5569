#include "eubo/estimators.hpp"

#include <cmath>

#include "eubo/log_ops.hpp"

namespace eubo {

Eigen::VectorXd GradientEstimate::flat() const {
    Eigen::VectorXd out(grad_mu.size() + grad_log_sigma.size());
    out << grad_mu, grad_log_sigma;
    return out;
}

bool GradientEstimate::all_finite() const {
    return grad_mu.allFinite() && grad_log_sigma.allFinite();
}

namespace {

// sum_i coef_i * grad_lambda log q(theta_i), negated by the caller as needed.
GradientEstimate weighted_score_sum(const ParticleBatch& batch,
                                    const VariationalParams& params,
                                    const Eigen::VectorXd& coef,
                                    GradientEstimate::Tag tag) {
    const Eigen::Index d = params.dim();
    GradientEstimate g;
    g.tag = tag;
    g.grad_mu = Eigen::VectorXd::Zero(d);
    g.grad_log_sigma = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i = 0; i < batch.size(); ++i) {
        if (coef[i] == 0.0) {
            continue;
        }
        auto [gmu, gls] = grad_logq_wrt_lambda(params, batch.theta.row(i));
        g.grad_mu += coef[i] * gmu;
        g.grad_log_sigma += coef[i] * gls;
    }
    return g;
}

// Per-particle total derivatives of s = log_omega through the pathway,
// combined as sum_i coef_i * ds_i.
GradientEstimate weighted_pathwise_sum(const Model& model, std::span<const int> rows,
                                       Eigen::Index total_n,
                                       const VariationalParams& params,
                                       const ParticleBatch& batch,
                                       const Eigen::VectorXd& coef,
                                       GradientEstimate::Tag tag) {
    if (!model.has_theta_gradient()) {
        throw CapabilityError("reparameterized estimator needs model theta-gradients");
    }
    if (batch.noise.epsilon.rows() != batch.size() ||
        batch.noise.epsilon.cols() != params.dim()) {
        throw ConfigError("pathwise estimator: batch noise does not match params");
    }
    const Eigen::ArrayXd sig = params.sigma().array();
    GradientEstimate g;
    g.tag = tag;
    g.grad_mu = Eigen::VectorXd::Zero(params.dim());
    g.grad_log_sigma = Eigen::VectorXd::Zero(params.dim());
    for (Eigen::Index i = 0; i < batch.size(); ++i) {
        const Eigen::VectorXd theta_i = batch.theta.row(i);
        const Eigen::ArrayXd gj =
            grad_log_joint_minibatch(model, rows, theta_i, total_n).array();
        const Eigen::ArrayXd ds_mu = gj;
        const Eigen::ArrayXd ds_ls =
            gj * sig * batch.noise.epsilon.row(i).transpose().array() + 1.0;
        g.grad_mu += coef[i] * ds_mu.matrix();
        g.grad_log_sigma += coef[i] * ds_ls.matrix();
    }
    return g;
}

} // namespace

GradientEstimate eubo_score_gradient(const ParticleBatch& batch,
                                     const VariationalParams& params) {
    const Eigen::VectorXd coef = -batch.weights_hat;
    return weighted_score_sum(batch, params, coef, GradientEstimate::Tag::EUBO_SCORE);
}

GradientEstimate chi_score_gradient(const ParticleBatch& batch,
                                    const VariationalParams& params, double n) {
    if (!(n > 1.0)) {
        throw ConfigError("chi_score_gradient: requires n > 1");
    }
    const Eigen::VectorXd w_n =
        normalize_weights((n * batch.log_omega.array()).matrix());
    const Eigen::VectorXd coef = (1.0 - n) * w_n;
    return weighted_score_sum(batch, params, coef, GradientEstimate::Tag::CHI_SCORE);
}

GradientEstimate elbo_reparam_gradient(const Model& model, std::span<const int> rows,
                                       Eigen::Index total_n,
                                       const VariationalParams& params,
                                       const ParticleBatch& batch) {
    const double m = static_cast<double>(batch.size());
    const Eigen::VectorXd coef = Eigen::VectorXd::Constant(batch.size(), 1.0 / m);
    return weighted_pathwise_sum(model, rows, total_n, params, batch, coef,
                                 GradientEstimate::Tag::ELBO_REPARAM);
}

GradientEstimate eubo_reparam_gradient(const Model& model, std::span<const int> rows,
                                       Eigen::Index total_n,
                                       const VariationalParams& params,
                                       const ParticleBatch& batch) {
    const Eigen::VectorXd& w = batch.weights_hat;
    const double u_hat = w.dot(batch.log_omega);
    // c_i + 1 with c_i = s_i - U_hat; differentiating the self-normalized
    // weights contributes the c_i term, the bound itself the +1.
    const Eigen::VectorXd coef =
        (w.array() * ((batch.log_omega.array() - u_hat) + 1.0)).matrix();
    return weighted_pathwise_sum(model, rows, total_n, params, batch, coef,
                                 GradientEstimate::Tag::EUBO_REPARAM);
}

GradientEstimate renyi_reparam_gradient(const Model& model, std::span<const int> rows,
                                        Eigen::Index total_n,
                                        const VariationalParams& params,
                                        const ParticleBatch& batch, double alpha) {
    if (alpha == 1.0) {
        throw ConfigError("renyi_reparam_gradient: alpha = 1; use the ELBO estimator");
    }
    const Eigen::VectorXd w_alpha =
        normalize_weights(((1.0 - alpha) * batch.log_omega.array()).matrix());
    return weighted_pathwise_sum(model, rows, total_n, params, batch, w_alpha,
                                 GradientEstimate::Tag::RENYI_REPARAM);
}

GradientEstimate elbo_reparam_gradient(const Model& model, std::span<const int> rows,
                                       const NoiseDraw& noise,
                                       const VariationalParams& params,
                                       Eigen::Index total_n) {
    const ParticleBatch batch = simulate_particles(model, rows, total_n, params, noise);
    return elbo_reparam_gradient(model, rows, total_n, params, batch);
}

GradientEstimate eubo_reparam_gradient(const Model& model, std::span<const int> rows,
                                       const NoiseDraw& noise,
                                       const VariationalParams& params,
                                       Eigen::Index total_n) {
    const ParticleBatch batch = simulate_particles(model, rows, total_n, params, noise);
    return eubo_reparam_gradient(model, rows, total_n, params, batch);
}

GradientEstimate renyi_reparam_gradient(const Model& model, std::span<const int> rows,
                                        const NoiseDraw& noise,
                                        const VariationalParams& params,
                                        Eigen::Index total_n, double alpha) {
    const ParticleBatch batch = simulate_particles(model, rows, total_n, params, noise);
    return renyi_reparam_gradient(model, rows, total_n, params, batch, alpha);
}

} // namespace eubo
