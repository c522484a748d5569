#pragma once

#include <functional>

#include <Eigen/Dense>

namespace eubo {

// Central-difference gradient of a scalar function, step h per coordinate.
Eigen::VectorXd finite_diff_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                     const Eigen::VectorXd& x, double h = 1e-5);

} // namespace eubo
