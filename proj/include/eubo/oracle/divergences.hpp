#pragma once

#include "eubo/oracle/quadrature.hpp"

namespace eubo {

// 1-D Gaussian as an oracle density; carries its parameters so domain checks
// (chi^n finiteness) can reason about tails analytically.
struct Gaussian1D {
    double mean = 0.0;
    double sigma = 1.0;

    double log_density(double x) const;
    Density1D as_density() const;
};

// Closed-form KL(a || b) between Gaussians:
// log(s_b/s_a) + (s_a^2 + (m_a-m_b)^2) / (2 s_b^2) - 1/2.
double gaussian_kl(const Gaussian1D& a, const Gaussian1D& b);

// Quadrature KL(p || q) = E_p[log p - log q] for arbitrary densities.
double quad_kl(const Density1D& p, const Density1D& q, const QuadratureGrid& grid);

// Renyi alpha-divergence D_alpha(q || p) = 1/(1-alpha) log E_q[(p/q)^(1-alpha)],
// alpha != 1, by quadrature (max-shifted inside the integral via direct
// exponent arithmetic on the log-densities).
double quad_alpha_divergence(const Density1D& q, const Density1D& p, double alpha,
                             const QuadratureGrid& grid);

// chi^n divergence D_chi^n(q || p) = (1/n) log E_q[(p/q)^n], n > 1.
double quad_chi_divergence(const Density1D& q, const Density1D& p, double n,
                           const QuadratureGrid& grid);

// Gaussian pair overload with the analytic finiteness pre-check: E_q[(p/q)^n]
// is finite iff n/sigma_p^2 - (n-1)/sigma_q^2 > 0 (tail-exponent comparison).
// Outside that domain the integral is genuinely infinite and a huge finite
// quadrature number would be a silent lie — DivergenceError instead.
double quad_chi_divergence(const Gaussian1D& q, const Gaussian1D& p, double n,
                           const QuadratureGrid& grid);

bool chi_divergence_is_finite(const Gaussian1D& q, const Gaussian1D& p, double n);

} // namespace eubo
