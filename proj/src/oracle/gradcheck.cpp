#include "eubo/oracle/gradcheck.hpp"

#include <cmath>
#include <random>

#include "eubo/data/dataset.hpp"
#include "eubo/estimators.hpp"
#include "eubo/models/bnn_regression.hpp"
#include "eubo/models/conjugate_gaussian.hpp"
#include "eubo/models/logistic_regression.hpp"
#include "eubo/oracle/conjugate_oracle.hpp"
#include "eubo/oracle/finite_diff.hpp"

namespace eubo {

namespace {

double floored_rel_error(const Eigen::VectorXd& mc, const Eigen::VectorXd& fd) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < mc.size(); ++i) {
        const double denom = std::max(std::abs(fd[i]), kGradCheckFloor);
        worst = std::max(worst, std::abs(mc[i] - fd[i]) / denom);
    }
    return worst;
}

} // namespace

std::vector<GradCheckRow> conjugate_gradient_checks(Eigen::Index particles, int batches,
                                                    std::uint64_t seed) {
    const ConjugateGaussianModel model = ConjugateGaussianModel::canonical();
    const std::vector<int> rows = all_rows(model.data_size());
    const Eigen::Index n = model.data_size();

    const VariationalParams q(Eigen::VectorXd::Constant(1, 0.5),
                              Eigen::VectorXd::Constant(1, 0.0));
    const QuadratureGrid grid = default_grid(model, q);

    const auto bound_fd = [&](const BoundObjective& objective, double scale) {
        const auto f = [&](const Eigen::VectorXd& lam) {
            const VariationalParams p(lam.head(1), lam.tail(1));
            return scale * quad_bound(objective, model, p, grid);
        };
        Eigen::VectorXd lam0(2);
        lam0 << q.mu[0], q.log_sigma[0];
        return finite_diff_gradient(f, lam0);
    };

    const Eigen::VectorXd fd_eubo = bound_fd(BoundObjective::eubo(), 1.0);
    const Eigen::VectorXd fd_elbo = bound_fd(BoundObjective::elbo(), 1.0);
    const Eigen::VectorXd fd_renyi_m1 = bound_fd(BoundObjective::renyi(-1.0), 1.0);
    const Eigen::VectorXd fd_renyi_0 = bound_fd(BoundObjective::renyi(0.0), 1.0);
    const Eigen::VectorXd fd_chi2_n = bound_fd(BoundObjective::chi(2.0), 2.0);

    std::vector<GradCheckRow> table = {
        {"eubo_score", Eigen::VectorXd::Zero(2), fd_eubo, 0.0},
        {"eubo_reparam", Eigen::VectorXd::Zero(2), fd_eubo, 0.0},
        {"elbo_reparam", Eigen::VectorXd::Zero(2), fd_elbo, 0.0},
        {"renyi_reparam_alpha=-1", Eigen::VectorXd::Zero(2), fd_renyi_m1, 0.0},
        {"renyi_reparam_alpha=0", Eigen::VectorXd::Zero(2), fd_renyi_0, 0.0},
        {"chi_score_n=2", Eigen::VectorXd::Zero(2), fd_chi2_n, 0.0},
    };

    for (int b = 0; b < batches; ++b) {
        const ParticleBatch batch = simulate_particles(
            model, rows, n, q, particles, derive_seed(seed, static_cast<std::uint64_t>(b)));
        const GradientEstimate ests[] = {
            eubo_score_gradient(batch, q),
            eubo_reparam_gradient(model, rows, n, q, batch),
            elbo_reparam_gradient(model, rows, n, q, batch),
            renyi_reparam_gradient(model, rows, n, q, batch, -1.0),
            renyi_reparam_gradient(model, rows, n, q, batch, 0.0),
            chi_score_gradient(batch, q, 2.0),
        };
        for (std::size_t i = 0; i < table.size(); ++i) {
            table[i].mc += ests[i].flat();
        }
    }
    for (auto& row : table) {
        row.mc /= static_cast<double>(batches);
        row.max_rel_error = floored_rel_error(row.mc, row.fd);
    }
    return table;
}

namespace {

// Central differences assume f is smooth across [x-h, x+h]; a ReLU kink
// inside that stencil makes the quotient a slope mixture rather than the
// derivative. Detect it by step refinement — for smooth coordinates the h
// and h/10 estimates agree to O(h^2), so a large gap means the stencil
// straddles a kink and a smaller stencil isolates it. A wrong analytic
// gradient still fails the check: a formula error disagrees at every h.
Eigen::VectorXd refined_central_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x) {
    Eigen::VectorXd g = finite_diff_gradient(f, x, 1e-5);
    Eigen::VectorXd g_fine = finite_diff_gradient(f, x, 1e-6);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double gap = std::abs(g[i] - g_fine[i]);
        if (gap <= std::max(1e-6, 1e-6 * std::abs(g_fine[i]))) {
            continue;
        }
        Eigen::VectorXd xp = x;
        const double h = 1e-7;
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

// model gradient vs finite differences of log_prior + log_lik_sum at theta.
double model_fd_error(const Model& model, const Eigen::VectorXd& theta,
                      std::span<const int> rows, double* rel_out) {
    const std::vector<int> row_copy(rows.begin(), rows.end());
    const auto f = [&](const Eigen::VectorXd& t) {
        return model.log_prior(t) + model.log_lik_sum(t, row_copy);
    };
    const Eigen::VectorXd fd = refined_central_gradient(f, theta);
    const Eigen::VectorXd analytic =
        model.grad_log_prior(theta) + model.grad_log_lik_sum(theta, rows);
    double abs_err = 0.0;
    double rel_err = 0.0;
    for (Eigen::Index i = 0; i < fd.size(); ++i) {
        const double d = std::abs(analytic[i] - fd[i]);
        abs_err = std::max(abs_err, d);
        rel_err = std::max(rel_err, d / std::max(std::abs(fd[i]), 1.0));
    }
    *rel_out = rel_err;
    return abs_err;
}

} // namespace

ModelGradCheck logreg_gradient_check(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const int n = 24;
    const int d = 4; // 3 features + intercept
    Dataset data;
    data.features.resize(n, d);
    data.targets.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d - 1; ++j) {
            data.features(i, j) = normal(rng);
        }
        data.features(i, d - 1) = 1.0;
        data.targets[i] = (normal(rng) > 0.0) ? 1.0 : 0.0;
    }
    data.column_stats.assign(d, ColumnStats{});
    data.intercept_column = d - 1;
    data.name = "synthetic-logreg";
    const LogisticRegressionModel model(data);
    const std::vector<int> rows = all_rows(n);

    ModelGradCheck result{"logreg", 20, 0.0, 0.0};
    for (int k = 0; k < result.draws; ++k) {
        Eigen::VectorXd theta(d);
        for (int j = 0; j < d; ++j) {
            theta[j] = normal(rng);
        }
        double rel = 0.0;
        result.max_abs_error =
            std::max(result.max_abs_error, model_fd_error(model, theta, rows, &rel));
        result.max_rel_error = std::max(result.max_rel_error, rel);
    }
    return result;
}

ModelGradCheck bnn_gradient_check(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    const int n = 16;
    const int in_dim = 3;
    const int hidden = 5;
    Dataset data;
    data.features.resize(n, in_dim);
    data.targets.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < in_dim; ++j) {
            data.features(i, j) = normal(rng);
        }
        data.targets[i] = normal(rng);
    }
    data.column_stats.assign(in_dim, ColumnStats{});
    data.name = "synthetic-bnn";
    const BnnRegressionModel model(data, hidden);
    const std::vector<int> rows = all_rows(n);

    ModelGradCheck result{"bnn", 20, 0.0, 0.0};
    for (int k = 0; k < result.draws; ++k) {
        Eigen::VectorXd theta(model.latent_dim());
        for (Eigen::Index j = 0; j < theta.size(); ++j) {
            theta[j] = 0.5 * normal(rng);
        }
        double rel = 0.0;
        result.max_abs_error =
            std::max(result.max_abs_error, model_fd_error(model, theta, rows, &rel));
        result.max_rel_error = std::max(result.max_rel_error, rel);
    }
    return result;
}

} // namespace eubo
