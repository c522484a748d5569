#include "eubo/oracle/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eubo/errors.hpp"

namespace eubo {

QuadratureGrid QuadratureGrid::covering(
    const std::vector<std::pair<double, double>>& mean_sigma, int min_points) {
    if (mean_sigma.empty()) {
        throw ConfigError("QuadratureGrid::covering: no distributions given");
    }
    QuadratureGrid g;
    g.lower = mean_sigma[0].first;
    g.upper = mean_sigma[0].first;
    for (const auto& [mu, sigma] : mean_sigma) {
        if (sigma <= 0.0) {
            throw ConfigError("QuadratureGrid::covering: sigma must be positive");
        }
        g.lower = std::min(g.lower, mu - 10.0 * sigma);
        g.upper = std::max(g.upper, mu + 10.0 * sigma);
    }
    g.num_points = std::max(min_points, 1001);
    if (g.num_points % 2 == 0) {
        ++g.num_points;
    }
    return g;
}

double quad_integrate(const std::function<double(double)>& f, const QuadratureGrid& grid) {
    if (grid.num_points < 3 || grid.num_points % 2 == 0) {
        throw ConfigError("quad_integrate: num_points must be odd and >= 3");
    }
    if (!(grid.upper > grid.lower)) {
        throw ConfigError("quad_integrate: need upper > lower");
    }
    const int n = grid.num_points;
    const double h = (grid.upper - grid.lower) / static_cast<double>(n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = grid.lower + h * static_cast<double>(i);
        const double fx = f(x);
        if (!std::isfinite(fx)) {
            throw OracleError("quad_integrate: non-finite integrand at x = " +
                              std::to_string(x));
        }
        const double coef = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += coef * fx;
    }
    return acc * h / 3.0;
}

double Density1D::density(double x) const {
    const double lp = log_density(x);
    // -inf log-density (zero mass) is fine; NaN is not.
    if (std::isnan(lp)) {
        throw OracleError("Density1D: NaN log-density at x = " + std::to_string(x));
    }
    return std::exp(lp);
}

void Density1D::check_normalized(const QuadratureGrid& grid, double tol) const {
    const double z = quad_integrate([this](double x) { return density(x); }, grid);
    if (std::abs(z - 1.0) > tol) {
        throw OracleError("Density1D: integrates to " + std::to_string(z) +
                          ", expected 1 within " + std::to_string(tol));
    }
}

double quad_expectation(const std::function<double(double)>& f, const Density1D& p,
                        const QuadratureGrid& grid) {
    return quad_integrate([&](double x) {
        const double px = p.density(x);
        // Skip the multiply when the density is exactly 0 so f may be
        // undefined off the support without poisoning the integral.
        return px == 0.0 ? 0.0 : f(x) * px;
    }, grid);
}

} // namespace eubo
