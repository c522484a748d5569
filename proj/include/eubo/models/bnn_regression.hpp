#pragma once

#include "eubo/data/dataset.hpp"
#include "eubo/model.hpp"

namespace eubo {

// One-hidden-layer ReLU network for scalar regression, with N(0,1) priors on
// every latent coordinate. The latent vector packs, in order:
//   W1 (hidden x input, row-major) | b1 (hidden) | w2 (hidden) | b2 | gamma
// where gamma is the log of the observation-noise standard deviation, carried
// as a latent so the same variational machinery learns it.
//
//   y | x, theta ~ N(f_theta(x), exp(gamma)^2)
//   f_theta(x) = w2 . relu(W1 x + b1) + b2
class BnnRegressionModel final : public Model {
public:
    BnnRegressionModel(const Dataset& data, int hidden_units);

    Eigen::Index latent_dim() const override { return dim_; }
    Eigen::Index data_size() const override { return data_->size(); }
    bool has_theta_gradient() const override { return true; }

    double log_prior(const Eigen::VectorXd& theta) const override;
    double log_lik_sum(const Eigen::VectorXd& theta,
                       std::span<const int> rows) const override;
    Eigen::VectorXd grad_log_prior(const Eigen::VectorXd& theta) const override;
    Eigen::VectorXd grad_log_lik_sum(const Eigen::VectorXd& theta,
                                     std::span<const int> rows) const override;

    // Network outputs f_theta(x) for each row of X (N x input_dim), in
    // whatever scale the data is in (standardized, typically).
    Eigen::VectorXd predict(const Eigen::VectorXd& theta, const Eigen::MatrixXd& X) const;
    double noise_log_std(const Eigen::VectorXd& theta) const { return theta[dim_ - 1]; }

    int hidden_units() const { return hidden_; }
    int input_dim() const { return input_dim_; }
    const Dataset& data() const { return *data_; }

private:
    const Dataset* data_;
    int hidden_;
    int input_dim_;
    Eigen::Index dim_;

    // X columns = selected data rows, ready for W1 * X products.
    Eigen::MatrixXd gather_columns(std::span<const int> rows) const;
};

} // namespace eubo
