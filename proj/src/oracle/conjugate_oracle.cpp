#include "eubo/oracle/conjugate_oracle.hpp"

#include <cmath>

#include "eubo/errors.hpp"
#include "eubo/model.hpp"

namespace eubo {

Gaussian1D posterior_gaussian(const ConjugateGaussianModel& model) {
    return Gaussian1D{model.posterior_mean(), std::sqrt(model.posterior_var())};
}

Gaussian1D variational_gaussian(const VariationalParams& q) {
    if (q.dim() != 1) {
        throw ConfigError("variational_gaussian: oracle works on 1-D q only");
    }
    return Gaussian1D{q.mu[0], std::exp(q.log_sigma[0])};
}

QuadratureGrid default_grid(const ConjugateGaussianModel& model,
                            const VariationalParams& q) {
    const Gaussian1D post = posterior_gaussian(model);
    const Gaussian1D qg = variational_gaussian(q);
    return QuadratureGrid::covering({{post.mean, post.sigma},
                                     {qg.mean, qg.sigma},
                                     {model.prior_mean(), std::sqrt(model.prior_var())}});
}

namespace {

// log omega(theta) = log p(D, theta) - log q(theta), full data.
double log_omega_at(const ConjugateGaussianModel& model, const VariationalParams& q,
                    double theta) {
    Eigen::VectorXd t(1);
    t[0] = theta;
    const std::vector<int> rows = all_rows(model.data_size());
    const double lj = model.data_size() == 0
                          ? model.log_prior(t)
                          : log_joint_minibatch(model, rows, t, model.data_size());
    return lj - log_density_q(q, t);
}

} // namespace

double quad_bound(const BoundObjective& objective, const ConjugateGaussianModel& model,
                  const VariationalParams& q, const QuadratureGrid& grid) {
    const Density1D qd = variational_gaussian(q).as_density();
    const Density1D post = posterior_gaussian(model).as_density();
    auto s = [&](double theta) { return log_omega_at(model, q, theta); };

    switch (objective.kind) {
    case BoundObjective::Kind::ELBO:
        return quad_expectation(s, qd, grid);
    case BoundObjective::Kind::EUBO:
        return quad_expectation(s, post, grid);
    case BoundObjective::Kind::RENYI: {
        if (objective.alpha == 1.0) {
            throw ConfigError("quad_bound: alpha = 1; use the ELBO");
        }
        const double k = 1.0 - objective.alpha;
        const double e = quad_expectation(
            [&](double theta) { return std::exp(k * s(theta)); }, qd, grid);
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw OracleError("quad_bound: Renyi integral not positive/finite");
        }
        return std::log(e) / k;
    }
    case BoundObjective::Kind::CHI: {
        const double n = objective.n;
        if (!(n > 1.0)) {
            throw ConfigError("quad_bound: chi^n requires n > 1");
        }
        if (!chi_divergence_is_finite(variational_gaussian(q), posterior_gaussian(model),
                                      n)) {
            throw DivergenceError("quad_bound: chi^n bound diverges for this q");
        }
        const double e = quad_expectation(
            [&](double theta) { return std::exp(n * s(theta)); }, qd, grid);
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw OracleError("quad_bound: chi integral not positive/finite");
        }
        return std::log(e) / n;
    }
    }
    throw ConfigError("quad_bound: unknown objective kind");
}

double quad_eubo(const ConjugateGaussianModel& model, const VariationalParams& q,
                 const QuadratureGrid& grid) {
    return quad_bound(BoundObjective::eubo(), model, q, grid);
}

double quad_elbo(const ConjugateGaussianModel& model, const VariationalParams& q,
                 const QuadratureGrid& grid) {
    return quad_bound(BoundObjective::elbo(), model, q, grid);
}

} // namespace eubo
