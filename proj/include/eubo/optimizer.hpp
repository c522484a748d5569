#pragma once

#include <Eigen/Dense>

#include "eubo/estimators.hpp"
#include "eubo/variational.hpp"

namespace eubo {

// First-order optimizer over the flattened parameter vector [mu; log_sigma].
// optimizer_step applies one DESCENT step; callers negate the gradient first
// when the objective is maximized.
struct OptimizerState {
    enum class Kind { SGD, ADAM };

    Kind kind = Kind::ADAM;
    long step_count = 0;
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps_stab = 1e-8;
    Eigen::VectorXd first_moment;  // ADAM only, size 2D
    Eigen::VectorXd second_moment; // ADAM only, size 2D

    static OptimizerState sgd(double learning_rate);
    static OptimizerState adam(Eigen::Index dim, double learning_rate,
                               double beta1 = 0.9, double beta2 = 0.999,
                               double eps_stab = 1e-8);
};

// One descent step; mutates state (moments, step_count) and returns the
// updated parameters. Throws OptimizerError on non-finite gradients, naming
// the first bad coordinate.
VariationalParams optimizer_step(OptimizerState& state, const VariationalParams& params,
                                 const GradientEstimate& grad);

} // namespace eubo
