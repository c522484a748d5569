#include "eubo/log_ops.hpp"

#include <cmath>
#include <limits>

namespace eubo {

double log_sum_exp(const Eigen::VectorXd& x) {
    if (x.size() == 0) {
        throw InputError("log_sum_exp: empty input");
    }
    const double m = x.maxCoeff();
    if (!std::isfinite(m)) {
        if (std::isnan(m)) {
            throw InputError("log_sum_exp: NaN entry");
        }
        // All -inf, or a +inf entry dominating; both propagate faithfully.
        return m;
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i])) {
            throw InputError("log_sum_exp: NaN entry");
        }
        acc += std::exp(x[i] - m);
    }
    return m + std::log(acc);
}

double log_mean_exp(const Eigen::VectorXd& x) {
    return log_sum_exp(x) - std::log(static_cast<double>(x.size()));
}

Eigen::VectorXd normalize_weights(const Eigen::VectorXd& log_omega) {
    if (log_omega.size() == 0) {
        throw InputError("normalize_weights: empty input");
    }
    double m = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < log_omega.size(); ++i) {
        if (std::isnan(log_omega[i])) {
            throw InputError("normalize_weights: NaN log-weight");
        }
        m = std::max(m, log_omega[i]);
    }
    if (!std::isfinite(m)) {
        throw DegenerateWeightsError(
            "normalize_weights: every log-weight is -inf; the proposal "
            "assigns no mass anywhere near the target");
    }
    Eigen::VectorXd w = (log_omega.array() - m).exp();
    const double total = w.sum();
    // total >= 1 always (the max entry contributes exp(0) = 1), so this
    // division cannot underflow or divide by zero.
    return w / total;
}

double effective_sample_size(const Eigen::VectorXd& weights_hat) {
    const double s2 = weights_hat.squaredNorm();
    if (s2 <= 0.0 || !std::isfinite(s2)) {
        throw InputError("effective_sample_size: weights are not normalized");
    }
    return 1.0 / s2;
}

} // namespace eubo
