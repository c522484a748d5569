#include "eubo/oracle/theorem1.hpp"

#include <cmath>
#include <sstream>

#include "eubo/errors.hpp"
#include "eubo/util/kv.hpp"

namespace eubo {

Theorem1Spec Theorem1Spec::load(const std::string& path) {
    const KvFile kv = KvFile::parse_file(path);
    kv.require_known_keys({"means", "sigmas_p", "sigma_q_factors", "alphas", "chi_ns",
                           "tolerance"});
    Theorem1Spec spec;
    if (kv.has("means")) spec.means = parse_double_list(kv.get_string("means"));
    if (kv.has("sigmas_p")) spec.sigmas_p = parse_double_list(kv.get_string("sigmas_p"));
    if (kv.has("sigma_q_factors")) {
        spec.sigma_q_factors = parse_double_list(kv.get_string("sigma_q_factors"));
    }
    if (kv.has("alphas")) spec.alphas = parse_double_list(kv.get_string("alphas"));
    if (kv.has("chi_ns")) spec.chi_ns = parse_double_list(kv.get_string("chi_ns"));
    spec.tolerance = kv.get_double("tolerance", spec.tolerance);
    spec.validate();
    return spec;
}

void Theorem1Spec::validate() const {
    if (means.empty() || sigmas_p.empty() || sigma_q_factors.empty()) {
        throw ConfigError("theorem1 grid: empty dimension");
    }
    for (double s : sigmas_p) {
        if (!(s > 0.0)) throw ConfigError("theorem1 grid: sigma_p must be positive");
    }
    for (double f : sigma_q_factors) {
        if (!(f >= 1.0)) {
            throw ConfigError("theorem1 grid: sigma_q_factors must be >= 1 "
                              "(the divergence bounds assume sigma_q >= sigma_p)");
        }
    }
    for (double a : alphas) {
        if (!(a <= 0.0)) throw ConfigError("theorem1 grid: alphas must be <= 0");
    }
    for (double n : chi_ns) {
        if (!(n >= 2.0)) throw ConfigError("theorem1 grid: chi_ns must be >= 2");
    }
    if (!(tolerance > 0.0)) throw ConfigError("theorem1 grid: tolerance must be positive");
}

namespace {

// Collects one inequality check: lhs >= rhs - tol.
struct Checker {
    double tolerance;
    long checks = 0;
    double max_violation = 0.0;
    std::vector<std::string> failures;

    void require_ge(double lhs, double rhs, const std::string& what) {
        ++checks;
        const double violation = rhs - lhs;
        if (violation > max_violation) {
            max_violation = violation;
        }
        if (violation > tolerance) {
            std::ostringstream msg;
            msg.precision(12);
            msg << what << ": lhs " << lhs << " < rhs " << rhs << " by " << violation;
            failures.push_back(msg.str());
        }
    }

    // An upper bound whose divergence is analytically +infinity exceeds any
    // finite right-hand side; certified by tail analysis, not quadrature.
    void pass_infinite() { ++checks; }
};

std::string pair_label(const Gaussian1D& p, const Gaussian1D& q) {
    std::ostringstream out;
    out << "p=N(" << p.mean << "," << p.sigma << ") q=N(" << q.mean << "," << q.sigma
        << ")";
    return out.str();
}

} // namespace

Theorem1Result validate_theorem1(const Theorem1Spec& spec) {
    spec.validate();
    Checker check{spec.tolerance};
    int num_pairs = 0;

    // Divergence lower bounds on arbitrary Gaussian pairs.
    for (double mp : spec.means) {
        for (double sp : spec.sigmas_p) {
            const Gaussian1D p{mp, sp};
            for (double mq : spec.means) {
                for (double f : spec.sigma_q_factors) {
                    const Gaussian1D q{mq, sp * f};
                    ++num_pairs;
                    const QuadratureGrid grid = QuadratureGrid::covering(
                        {{p.mean, p.sigma}, {q.mean, q.sigma}});
                    const double kl_pq = quad_kl(p.as_density(), q.as_density(), grid);
                    for (double a : spec.alphas) {
                        const double lhs =
                            quad_alpha_divergence(q.as_density(), p.as_density(), a, grid);
                        const double rhs = (-a / (1.0 - a)) * kl_pq;
                        check.require_ge(lhs, rhs,
                                         "D_alpha bound alpha=" + std::to_string(a) +
                                             " " + pair_label(p, q));
                    }
                    for (double n : spec.chi_ns) {
                        const double lhs = quad_chi_divergence(q, p, n, grid);
                        const double rhs = ((n - 1.0) / n) * kl_pq;
                        check.require_ge(lhs, rhs,
                                         "D_chi bound n=" + std::to_string(n) + " " +
                                             pair_label(p, q));
                    }
                }
            }
        }
    }

    // Sandwich and bound combinations on the conjugate testbed, sweeping q
    // over the same grid.
    const ConjugateGaussianModel model = ConjugateGaussianModel::canonical();
    const double log_z = model.log_evidence();
    const Gaussian1D post = posterior_gaussian(model);
    for (double mq : spec.means) {
        for (double sp : spec.sigmas_p) {
            for (double f : spec.sigma_q_factors) {
                const double sq = sp * f;
                const Gaussian1D q_gauss{mq, sq};
                const VariationalParams q(Eigen::VectorXd::Constant(1, mq),
                                          Eigen::VectorXd::Constant(1, std::log(sq)));
                const QuadratureGrid grid = default_grid(model, q);
                const double lower = quad_elbo(model, q, grid);
                const double upper = quad_eubo(model, q, grid);
                const std::string label =
                    "q=N(" + std::to_string(mq) + "," + std::to_string(sq) + ")";
                check.require_ge(log_z, lower, "sandwich lower " + label);
                check.require_ge(upper, log_z, "sandwich upper " + label);
                for (double a : spec.alphas) {
                    // E_q[omega^(1-alpha)] has the same tail exponent as a
                    // chi divergence of order 1-alpha.
                    if (!chi_divergence_is_finite(q_gauss, post, 1.0 - a)) {
                        check.pass_infinite();
                        continue;
                    }
                    const double u_alpha =
                        quad_bound(BoundObjective::renyi(a), model, q, grid);
                    const double rhs =
                        (-a / (1.0 - a)) * upper + (1.0 / (1.0 - a)) * log_z;
                    check.require_ge(u_alpha, rhs,
                                     "U_alpha combination alpha=" + std::to_string(a) +
                                         " " + label);
                }
                for (double n : spec.chi_ns) {
                    if (!chi_divergence_is_finite(q_gauss, post, n)) {
                        check.pass_infinite();
                        continue;
                    }
                    const double u_chi = quad_bound(BoundObjective::chi(n), model, q, grid);
                    const double rhs = ((n - 1.0) / n) * upper + (1.0 / n) * log_z;
                    check.require_ge(u_chi, rhs,
                                     "U_chi combination n=" + std::to_string(n) + " " +
                                         label);
                }
            }
        }
    }

    Theorem1Result result;
    result.num_pairs = num_pairs;
    result.num_checks = check.checks;
    result.max_violation = check.max_violation;
    result.failures = std::move(check.failures);
    return result;
}

} // namespace eubo
