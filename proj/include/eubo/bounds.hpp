#pragma once

#include <string>

#include <Eigen/Dense>

#include "eubo/particles.hpp"

namespace eubo {

// Which evidence bound is being estimated or optimized.
//   ELBO     lower bound,  E_q[log omega]
//   EUBO     upper bound,  E_p[log omega]  (estimated by SNIS)
//   RENYI    1/(1-alpha) log E_q[omega^(1-alpha)]; upper bound for alpha < 0,
//            lower bound for alpha > 0 (alpha = 1 is the ELBO limit, rejected)
//   CHI      (1/n) log E_q[omega^n], upper bound for n > 1
struct BoundObjective {
    enum class Kind { ELBO, EUBO, RENYI, CHI };

    Kind kind = Kind::EUBO;
    double alpha = -1.0; // RENYI only
    double n = 2.0;      // CHI only

    static BoundObjective elbo() { return {Kind::ELBO, 0.0, 0.0}; }
    static BoundObjective eubo() { return {Kind::EUBO, 0.0, 0.0}; }
    static BoundObjective renyi(double alpha);
    static BoundObjective chi(double n);

    // True when optimization should minimize (upper bounds) rather than
    // maximize (lower bounds).
    bool is_upper_bound() const;
    std::string label() const;
};

// Plug-in bound estimate from one particle batch's log-weights:
//   ELBO   mean(log_omega)
//   EUBO   sum_i w_hat_i * log_omega_i
//   RENYI  1/(1-alpha) * log-mean-exp((1-alpha) * log_omega)
//   CHI    (1/n)       * log-mean-exp(n * log_omega)
// All reductions are max-shifted. On any single batch the estimates are
// ordered exactly (mean <= log-mean-exp <= SNIS-weighted mean, by convexity):
// ELBO <= log-evidence <= EUBO, with RENYI/CHI interleaving by exponent.
double estimate_bound(const BoundObjective& objective, const ParticleBatch& batch);

// SNIS evidence estimate: log-mean-exp(log_omega).
double estimate_log_evidence(const ParticleBatch& batch);

} // namespace eubo
