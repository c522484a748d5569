#pragma once

#include <Eigen/Dense>

#include "eubo/errors.hpp"

namespace eubo {

// Numerically stable log-space reductions. Every exponentiation in the
// library goes through one of these; nothing ever calls exp() on raw
// log-weights directly.

// log(sum_i exp(x_i)), max-shifted. -inf entries are allowed and contribute
// nothing; if all entries are -inf the result is -inf.
double log_sum_exp(const Eigen::VectorXd& x);

// log((1/M) * sum_i exp(x_i)).
double log_mean_exp(const Eigen::VectorXd& x);

// Self-normalized weights w_i = exp(x_i) / sum_j exp(x_j), computed with a
// max shift so any finite input is safe. Output is nonnegative and sums to 1.
// Throws DegenerateWeightsError when every entry underflows (all -inf), and
// InputError on empty input or NaN entries.
Eigen::VectorXd normalize_weights(const Eigen::VectorXd& log_omega);

// 1 / sum_i w_i^2 for normalized weights; ranges from 1 (degenerate) to M
// (uniform). Diagnostic only.
double effective_sample_size(const Eigen::VectorXd& weights_hat);

} // namespace eubo
