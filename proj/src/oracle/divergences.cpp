#include "eubo/oracle/divergences.hpp"

#include <cmath>
#include <limits>

#include "eubo/errors.hpp"

namespace eubo {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;
}

double Gaussian1D::log_density(double x) const {
    const double z = (x - mean) / sigma;
    return -kHalfLog2Pi - std::log(sigma) - 0.5 * z * z;
}

Density1D Gaussian1D::as_density() const {
    const Gaussian1D self = *this;
    return Density1D{[self](double x) { return self.log_density(x); }};
}

double gaussian_kl(const Gaussian1D& a, const Gaussian1D& b) {
    const double dm = a.mean - b.mean;
    return std::log(b.sigma / a.sigma) +
           (a.sigma * a.sigma + dm * dm) / (2.0 * b.sigma * b.sigma) - 0.5;
}

double quad_kl(const Density1D& p, const Density1D& q, const QuadratureGrid& grid) {
    return quad_integrate([&](double x) {
        const double lp = p.log_density(x);
        if (lp == -std::numeric_limits<double>::infinity()) {
            return 0.0; // 0 * log(0/q) contributes nothing
        }
        return std::exp(lp) * (lp - q.log_density(x));
    }, grid);
}

double quad_alpha_divergence(const Density1D& q, const Density1D& p, double alpha,
                             const QuadratureGrid& grid) {
    if (alpha == 1.0) {
        throw ConfigError("quad_alpha_divergence: alpha = 1 is the KL limit; use quad_kl");
    }
    const double k = 1.0 - alpha;
    // E_q[(p/q)^k] via log-space arithmetic per grid point; the integrand
    // q^(1-k) p^k = exp(lq + k*(lp - lq)) stays finite for the grids we use.
    const double e = quad_integrate([&](double x) {
        const double lq = q.log_density(x);
        if (lq == -std::numeric_limits<double>::infinity()) {
            return 0.0;
        }
        return std::exp(lq + k * (p.log_density(x) - lq));
    }, grid);
    if (!(e > 0.0) || !std::isfinite(e)) {
        throw OracleError("quad_alpha_divergence: integral not positive/finite");
    }
    return std::log(e) / k;
}

double quad_chi_divergence(const Density1D& q, const Density1D& p, double n,
                           const QuadratureGrid& grid) {
    if (!(n > 1.0)) {
        throw ConfigError("quad_chi_divergence: requires n > 1");
    }
    // D_chi^n(q||p) = (1/n) log E_q[(p/q)^n] = alpha-divergence at alpha = 1-n
    // rescaled: both share the integral E_q[(p/q)^n].
    const double e = quad_integrate([&](double x) {
        const double lq = q.log_density(x);
        if (lq == -std::numeric_limits<double>::infinity()) {
            return 0.0;
        }
        return std::exp(lq + n * (p.log_density(x) - lq));
    }, grid);
    if (!(e > 0.0) || !std::isfinite(e)) {
        throw OracleError("quad_chi_divergence: integral not positive/finite");
    }
    return std::log(e) / n;
}

bool chi_divergence_is_finite(const Gaussian1D& q, const Gaussian1D& p, double n) {
    // Tail exponent of q (p/q)^n is -x^2/2 * (n/sigma_p^2 - (n-1)/sigma_q^2);
    // the integral converges iff that coefficient is positive.
    return n / (p.sigma * p.sigma) - (n - 1.0) / (q.sigma * q.sigma) > 0.0;
}

double quad_chi_divergence(const Gaussian1D& q, const Gaussian1D& p, double n,
                           const QuadratureGrid& grid) {
    if (!(n > 1.0)) {
        throw ConfigError("quad_chi_divergence: requires n > 1");
    }
    if (!chi_divergence_is_finite(q, p, n)) {
        throw DivergenceError(
            "quad_chi_divergence: E_q[(p/q)^n] diverges for these Gaussians "
            "(proposal tail too light: n/sigma_p^2 - (n-1)/sigma_q^2 <= 0)");
    }
    return quad_chi_divergence(q.as_density(), p.as_density(), n, grid);
}

} // namespace eubo
