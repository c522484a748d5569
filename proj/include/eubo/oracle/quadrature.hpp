#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace eubo {

// Composite Simpson rule on a fixed symmetric grid. Deterministic ground
// truth for everything the stochastic estimators claim.
struct QuadratureGrid {
    enum class Rule { SIMPSON };

    double lower = -12.0;
    double upper = 12.0;
    int num_points = 20001; // odd
    Rule rule = Rule::SIMPSON;

    // Grid covering mean +- 10*sigma of every listed Gaussian, at least
    // `min_points` points (rounded up to odd).
    static QuadratureGrid covering(const std::vector<std::pair<double, double>>& mean_sigma,
                                   int min_points = 20001);
};

// Simpson integral of f over the grid; throws OracleError on a non-finite
// integrand sample.
double quad_integrate(const std::function<double(double)>& f, const QuadratureGrid& grid);

// A 1-D density given by its log; check() verifies it integrates to 1.
struct Density1D {
    std::function<double(double)> log_density;

    double density(double x) const;
    // Throws OracleError if |integral - 1| > tol.
    void check_normalized(const QuadratureGrid& grid, double tol = 1e-8) const;
};

// E_p[f] = integral of f * p.
double quad_expectation(const std::function<double(double)>& f, const Density1D& p,
                        const QuadratureGrid& grid);

} // namespace eubo
