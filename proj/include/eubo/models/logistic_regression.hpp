#pragma once

#include "eubo/data/dataset.hpp"
#include "eubo/model.hpp"

namespace eubo {

// Bayesian logistic regression with independent N(0,1) priors on all
// coefficients (the feature matrix is expected to carry an intercept column).
// Targets must be 0/1.
class LogisticRegressionModel final : public Model {
public:
    explicit LogisticRegressionModel(const Dataset& data);

    Eigen::Index latent_dim() const override { return data_->feature_dim(); }
    Eigen::Index data_size() const override { return data_->size(); }
    bool has_theta_gradient() const override { return true; }

    double log_prior(const Eigen::VectorXd& theta) const override;
    double log_lik_sum(const Eigen::VectorXd& theta,
                       std::span<const int> rows) const override;
    Eigen::VectorXd grad_log_prior(const Eigen::VectorXd& theta) const override;
    Eigen::VectorXd grad_log_lik_sum(const Eigen::VectorXd& theta,
                                     std::span<const int> rows) const override;

    // P(y = 1 | x, theta) = sigmoid(x . theta), strictly inside (0, 1).
    // Takes the feature vector directly so test rows work too.
    double predict_prob(const Eigen::VectorXd& theta, const Eigen::VectorXd& x) const;

    const Dataset& data() const { return *data_; }

private:
    const Dataset* data_;
};

// log(1 + exp(a)) without overflow.
double softplus(double a);

} // namespace eubo
