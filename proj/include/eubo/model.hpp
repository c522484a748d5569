#pragma once

#include <span>

#include <Eigen/Dense>

#include "eubo/errors.hpp"

namespace eubo {

// Interface a probabilistic model implements: log-prior, log-likelihood
// summed over a subset of its data rows, and (optionally) their gradients
// with respect to the latent vector theta. Models own or reference their
// data; operations are pure and safe to call concurrently.
class Model {
public:
    virtual ~Model() = default;

    virtual Eigen::Index latent_dim() const = 0;
    virtual Eigen::Index data_size() const = 0;
    virtual bool has_theta_gradient() const { return false; }

    virtual double log_prior(const Eigen::VectorXd& theta) const = 0;
    virtual double log_lik_sum(const Eigen::VectorXd& theta,
                               std::span<const int> rows) const = 0;

    virtual Eigen::VectorXd grad_log_prior(const Eigen::VectorXd& theta) const {
        (void)theta;
        throw CapabilityError("model does not provide prior gradients");
    }
    virtual Eigen::VectorXd grad_log_lik_sum(const Eigen::VectorXd& theta,
                                             std::span<const int> rows) const {
        (void)theta;
        (void)rows;
        throw CapabilityError("model does not provide likelihood gradients");
    }
};

// Minibatch-scaled log-joint: (N/S) * sum_{n in rows} log p(x_n | theta)
// + log p(theta). The prior term is never scaled; the scale factor uses the
// actual batch size, so the last (short) batch of an epoch is handled right.
double log_joint_minibatch(const Model& model, std::span<const int> rows,
                           const Eigen::VectorXd& theta, Eigen::Index total_n);

// Gradient of the same quantity with respect to theta.
Eigen::VectorXd grad_log_joint_minibatch(const Model& model, std::span<const int> rows,
                                         const Eigen::VectorXd& theta,
                                         Eigen::Index total_n);

// Convenience: [0, 1, ..., n-1], the full-batch row set.
std::vector<int> all_rows(Eigen::Index n);

} // namespace eubo
