#include "eubo/models/logistic_regression.hpp"

#include <cmath>

namespace eubo {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;
}

double softplus(double a) {
    // max(a, 0) + log1p(exp(-|a|)): exact for both tails.
    return std::max(a, 0.0) + std::log1p(std::exp(-std::abs(a)));
}

LogisticRegressionModel::LogisticRegressionModel(const Dataset& data) : data_(&data) {
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        if (data.targets[i] != 0.0 && data.targets[i] != 1.0) {
            throw InputError("LogisticRegressionModel: target at row " +
                             std::to_string(i) + " is not 0/1");
        }
    }
}

double LogisticRegressionModel::log_prior(const Eigen::VectorXd& theta) const {
    return -kHalfLog2Pi * static_cast<double>(theta.size()) - 0.5 * theta.squaredNorm();
}

double LogisticRegressionModel::log_lik_sum(const Eigen::VectorXd& theta,
                                            std::span<const int> rows) const {
    // log p(y|x,theta) = -softplus(-(2y-1) * x.theta), stable for any margin.
    double total = 0.0;
    for (int r : rows) {
        const double z = data_->features.row(r).dot(theta);
        const double sign = data_->targets[r] > 0.5 ? 1.0 : -1.0;
        total -= softplus(-sign * z);
    }
    return total;
}

Eigen::VectorXd LogisticRegressionModel::grad_log_prior(const Eigen::VectorXd& theta) const {
    return -theta;
}

Eigen::VectorXd LogisticRegressionModel::grad_log_lik_sum(const Eigen::VectorXd& theta,
                                                          std::span<const int> rows) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(theta.size());
    for (int r : rows) {
        const double z = data_->features.row(r).dot(theta);
        const double p = 1.0 / (1.0 + std::exp(-z));
        g += (data_->targets[r] - p) * data_->features.row(r).transpose();
    }
    return g;
}

double LogisticRegressionModel::predict_prob(const Eigen::VectorXd& theta,
                                             const Eigen::VectorXd& x) const {
    const double z = x.dot(theta);
    const double p = 1.0 / (1.0 + std::exp(-z));
    // Clamp away from exact 0/1 so downstream logs stay finite.
    return std::min(std::max(p, 1e-15), 1.0 - 1e-15);
}

} // namespace eubo
