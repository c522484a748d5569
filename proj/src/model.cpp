#include "eubo/model.hpp"

#include <numeric>
#include <vector>

namespace eubo {

namespace {

double batch_scale(std::span<const int> rows, Eigen::Index total_n) {
    if (rows.empty()) {
        throw InputError("log_joint_minibatch: empty batch");
    }
    if (total_n < static_cast<Eigen::Index>(rows.size())) {
        throw InputError("log_joint_minibatch: total_n smaller than batch");
    }
    return static_cast<double>(total_n) / static_cast<double>(rows.size());
}

} // namespace

double log_joint_minibatch(const Model& model, std::span<const int> rows,
                           const Eigen::VectorXd& theta, Eigen::Index total_n) {
    const double scale = batch_scale(rows, total_n);
    return scale * model.log_lik_sum(theta, rows) + model.log_prior(theta);
}

Eigen::VectorXd grad_log_joint_minibatch(const Model& model, std::span<const int> rows,
                                         const Eigen::VectorXd& theta,
                                         Eigen::Index total_n) {
    const double scale = batch_scale(rows, total_n);
    return scale * model.grad_log_lik_sum(theta, rows) + model.grad_log_prior(theta);
}

std::vector<int> all_rows(Eigen::Index n) {
    std::vector<int> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

} // namespace eubo
