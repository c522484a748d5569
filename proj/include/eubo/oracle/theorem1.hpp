#pragma once

#include <string>
#include <vector>

#include "eubo/oracle/conjugate_oracle.hpp"

namespace eubo {

// A grid of Gaussian (p, q) pairs plus divergence orders, describing one run
// of the sandwich/divergence validation suite. Loadable from a kv file so
// the grid is an inspectable artifact rather than hard-wired constants.
struct Theorem1Spec {
    std::vector<double> means = {-1.0, -0.5, 0.0, 0.5, 1.0}; // p and q means
    std::vector<double> sigmas_p = {0.6, 1.0};
    std::vector<double> sigma_q_factors = {1.0, 1.6, 2.5}; // sigma_q/sigma_p >= 1
    std::vector<double> alphas = {-2.0, -1.0, -0.5, -0.1}; // alpha <= 0 branch
    std::vector<double> chi_ns = {2.0, 3.0, 4.0};          // n >= 2 branch
    double tolerance = 1e-9;

    static Theorem1Spec load(const std::string& path);
    void validate() const; // throws ConfigError on out-of-domain entries
};

struct Theorem1Result {
    int num_pairs = 0;      // (p, q) pairs checked
    long num_checks = 0;    // individual inequalities evaluated
    double max_violation = 0.0; // worst inequality slack overrun, 0 if none
    std::vector<std::string> failures; // human-readable, empty on success

    bool passed() const { return failures.empty(); }
};

// Checks, by quadrature:
//  - sandwich: ELBO(q) <= log Z <= EUBO(q) on the conjugate testbed;
//  - divergence lower bounds: D_alpha(q||p) >= (-alpha/(1-alpha)) KL(p||q)
//    and D_chi^n(q||p) >= ((n-1)/n) KL(p||q) for every grid pair;
//  - bound combinations on the testbed: U_alpha >= (-alpha/(1-alpha)) U
//    + (1/(1-alpha)) log Z, and U_chi^n >= ((n-1)/n) U + (1/n) log Z.
Theorem1Result validate_theorem1(const Theorem1Spec& spec);

} // namespace eubo
