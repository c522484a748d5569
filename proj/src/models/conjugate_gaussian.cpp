#include "eubo/models/conjugate_gaussian.hpp"

#include <cmath>

namespace eubo {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;

double gaussian_log_density(double x, double mean, double var) {
    const double r = x - mean;
    return -kHalfLog2Pi - 0.5 * std::log(var) - r * r / (2.0 * var);
}
} // namespace

ConjugateGaussianModel::ConjugateGaussianModel(double prior_mean, double prior_var,
                                               double lik_var,
                                               std::vector<double> observations)
    : prior_mean_(prior_mean), prior_var_(prior_var), lik_var_(lik_var),
      obs_(std::move(observations)) {
    if (prior_var_ <= 0.0 || lik_var_ <= 0.0) {
        throw ConfigError("ConjugateGaussianModel: variances must be positive");
    }
    // Sequential conjugate update: fold in one observation at a time through
    // the predictive N(x; m, tau^2 + lik_var). Exact, and the evidence falls
    // out as the sum of predictive log-densities (0 for no observations).
    double m = prior_mean_;
    double tau2 = prior_var_;
    double log_z = 0.0;
    for (double x : obs_) {
        const double pred_var = tau2 + lik_var_;
        log_z += gaussian_log_density(x, m, pred_var);
        const double k = tau2 / pred_var;
        m += k * (x - m);
        tau2 *= lik_var_ / pred_var;
    }
    post_mean_ = m;
    post_var_ = tau2;
    log_evidence_ = log_z;
}

ConjugateGaussianModel ConjugateGaussianModel::canonical() {
    return ConjugateGaussianModel(0.0, 1.0, 1.0, {0.0});
}

double ConjugateGaussianModel::log_prior(const Eigen::VectorXd& theta) const {
    return gaussian_log_density(theta[0], prior_mean_, prior_var_);
}

double ConjugateGaussianModel::log_lik_sum(const Eigen::VectorXd& theta,
                                           std::span<const int> rows) const {
    double total = 0.0;
    for (int r : rows) {
        total += gaussian_log_density(obs_.at(static_cast<std::size_t>(r)), theta[0],
                                      lik_var_);
    }
    return total;
}

Eigen::VectorXd ConjugateGaussianModel::grad_log_prior(const Eigen::VectorXd& theta) const {
    Eigen::VectorXd g(1);
    g[0] = -(theta[0] - prior_mean_) / prior_var_;
    return g;
}

Eigen::VectorXd ConjugateGaussianModel::grad_log_lik_sum(const Eigen::VectorXd& theta,
                                                         std::span<const int> rows) const {
    double g = 0.0;
    for (int r : rows) {
        g += (obs_.at(static_cast<std::size_t>(r)) - theta[0]) / lik_var_;
    }
    Eigen::VectorXd out(1);
    out[0] = g;
    return out;
}

} // namespace eubo
