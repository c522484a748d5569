#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eubo {

// Relative error floor: a quadrature gradient can be exactly zero (the
// alpha = 0 Renyi bound is constant in lambda), where a bare ratio is
// undefined. Errors are measured against max(|target|, kGradCheckFloor),
// i.e. tiny targets are held to an absolute standard of 5% of 0.01.
inline constexpr double kGradCheckFloor = 0.01;

struct GradCheckRow {
    std::string name;
    Eigen::VectorXd mc; // batch-averaged Monte Carlo gradient [d/dmu, d/dlog_sigma]
    Eigen::VectorXd fd; // finite-difference quadrature gradient of the same target
    double max_rel_error = 0.0; // per-coordinate max against the floored target
};

// Run every gradient estimator on the canonical conjugate testbed at
// q = N(0.5, 1), averaging `batches` independent batches of `particles`
// draws, and compare against finite differences of the quadrature bounds.
// chi_score targets n * U_chi^n (its natural log E_q[omega^n] form), so its
// finite-difference column carries that factor.
std::vector<GradCheckRow> conjugate_gradient_checks(Eigen::Index particles, int batches,
                                                    std::uint64_t seed);

// Finite-difference validation of a model's analytic theta-gradients at
// random draws, on synthetic data (logreg) / random parameters (bnn).
struct ModelGradCheck {
    std::string name;
    int draws = 0;
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
};

ModelGradCheck logreg_gradient_check(std::uint64_t seed);
ModelGradCheck bnn_gradient_check(std::uint64_t seed);

} // namespace eubo
