#pragma once

#include <vector>

#include "eubo/model.hpp"

namespace eubo {

// 1-D Gaussian mean estimation with a Gaussian prior: everything is available
// in closed form (posterior, evidence), which makes this the ground-truth
// testbed for the quadrature oracle and the gradient estimators.
//
//   theta ~ N(prior_mean, prior_var)
//   x_i   ~ N(theta, lik_var)
class ConjugateGaussianModel final : public Model {
public:
    ConjugateGaussianModel(double prior_mean, double prior_var, double lik_var,
                           std::vector<double> observations);

    // Canonical testbed: prior N(0,1), likelihood N(x|theta,1), one datum 0.
    // Posterior N(0, 0.5), log evidence = -0.5*log(4*pi).
    static ConjugateGaussianModel canonical();

    Eigen::Index latent_dim() const override { return 1; }
    Eigen::Index data_size() const override {
        return static_cast<Eigen::Index>(obs_.size());
    }
    bool has_theta_gradient() const override { return true; }

    double log_prior(const Eigen::VectorXd& theta) const override;
    double log_lik_sum(const Eigen::VectorXd& theta,
                       std::span<const int> rows) const override;
    Eigen::VectorXd grad_log_prior(const Eigen::VectorXd& theta) const override;
    Eigen::VectorXd grad_log_lik_sum(const Eigen::VectorXd& theta,
                                     std::span<const int> rows) const override;

    double prior_mean() const { return prior_mean_; }
    double prior_var() const { return prior_var_; }
    double lik_var() const { return lik_var_; }
    const std::vector<double>& observations() const { return obs_; }

    // Exact conjugate update over all observations.
    double posterior_mean() const { return post_mean_; }
    double posterior_var() const { return post_var_; }
    double log_evidence() const { return log_evidence_; }

private:
    double prior_mean_;
    double prior_var_;
    double lik_var_;
    std::vector<double> obs_;
    double post_mean_;
    double post_var_;
    double log_evidence_;
};

} // namespace eubo
