#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "eubo/models/bnn_regression.hpp"
#include "eubo/models/conjugate_gaussian.hpp"
#include "eubo/models/logistic_regression.hpp"
#include "eubo/oracle/finite_diff.hpp"

using namespace eubo;

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

double log_normal_pdf(double x, double mean, double var) {
    return -0.5 * kLog2Pi - 0.5 * std::log(var) - (x - mean) * (x - mean) / (2.0 * var);
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) {
        out[i++] = x;
    }
    return out;
}

Dataset make_dataset(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     int intercept_col = -1) {
    Dataset ds;
    ds.features = X;
    ds.targets = y;
    ds.column_stats.assign(static_cast<std::size_t>(X.cols()), ColumnStats{});
    ds.name = "synthetic";
    ds.intercept_column = intercept_col;
    return ds;
}

} // namespace

TEST_CASE("canonical conjugate testbed matches closed form") {
    const ConjugateGaussianModel m = ConjugateGaussianModel::canonical();
    CHECK(m.posterior_mean() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(m.posterior_var() == doctest::Approx(0.5).epsilon(1e-15));
    // log Z = -0.5 * log(4 pi)
    CHECK(m.log_evidence() == doctest::Approx(-1.2655121234846454).epsilon(1e-12));

    // density values at theta = 0.7
    const Eigen::VectorXd t = vec({0.7});
    CHECK(m.log_prior(t) == doctest::Approx(log_normal_pdf(0.7, 0.0, 1.0)).epsilon(1e-14));
    const std::vector<int> rows = {0};
    CHECK(m.log_lik_sum(t, rows) ==
          doctest::Approx(log_normal_pdf(0.0, 0.7, 1.0)).epsilon(1e-14));
}

TEST_CASE("conjugate model with no observations is its prior") {
    const ConjugateGaussianModel m(0.3, 2.0, 1.5, {});
    CHECK(m.data_size() == 0);
    CHECK(m.log_evidence() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(m.posterior_mean() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(m.posterior_var() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("conjugate multi-observation update composes sequentially") {
    const double m0 = 0.4, v0 = 1.3, vl = 0.8;
    const double x1 = -0.9, x2 = 1.7;
    const ConjugateGaussianModel joint(m0, v0, vl, {x1, x2});

    // one-step update with x1
    const double v1 = 1.0 / (1.0 / v0 + 1.0 / vl);
    const double m1 = v1 * (m0 / v0 + x1 / vl);
    // then x2
    const double v2 = 1.0 / (1.0 / v1 + 1.0 / vl);
    const double m2 = v2 * (m1 / v1 + x2 / vl);
    CHECK(joint.posterior_mean() == doctest::Approx(m2).epsilon(1e-13));
    CHECK(joint.posterior_var() == doctest::Approx(v2).epsilon(1e-13));

    // evidence chains through the posterior predictive
    const double lz = log_normal_pdf(x1, m0, v0 + vl) + log_normal_pdf(x2, m1, v1 + vl);
    CHECK(joint.log_evidence() == doctest::Approx(lz).epsilon(1e-13));
}

TEST_CASE("conjugate rejects nonpositive variances") {
    CHECK_THROWS_AS(ConjugateGaussianModel(0.0, 0.0, 1.0, {0.0}), ConfigError);
    CHECK_THROWS_AS(ConjugateGaussianModel(0.0, 1.0, -2.0, {0.0}), ConfigError);
}

TEST_CASE("conjugate gradients match finite differences") {
    const ConjugateGaussianModel m(0.2, 1.5, 0.7, {-0.3, 0.9, 0.1});
    const std::vector<int> rows = all_rows(m.data_size());
    for (double t0 : {-1.2, 0.0, 0.8}) {
        const Eigen::VectorXd t = vec({t0});
        const Eigen::VectorXd fd = finite_diff_gradient(
            [&](const Eigen::VectorXd& x) { return m.log_prior(x) + m.log_lik_sum(x, rows); },
            t);
        const Eigen::VectorXd an = m.grad_log_prior(t) + m.grad_log_lik_sum(t, rows);
        CHECK(std::abs(fd[0] - an[0]) <= 1e-6 * std::max(1.0, std::abs(an[0])));
    }
}

TEST_CASE("logistic regression at theta=0 gives log(1/2) per row") {
    Eigen::MatrixXd X(4, 3);
    X << 0.5, -1.0, 1.0,
         2.0, 0.3, 1.0,
        -0.7, 0.9, 1.0,
         0.0, 0.0, 1.0;
    const Dataset ds = make_dataset(X, vec({1.0, 0.0, 0.0, 1.0}), 2);
    const LogisticRegressionModel m(ds);
    CHECK(m.latent_dim() == 3);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
    const std::vector<int> rows = all_rows(4);
    CHECK(m.log_lik_sum(zero, rows) ==
          doctest::Approx(4.0 * std::log(0.5)).epsilon(1e-13));
    // prior is standard normal
    const Eigen::VectorXd t = vec({0.3, -0.6, 0.1});
    CHECK(m.log_prior(t) ==
          doctest::Approx(-1.5 * kLog2Pi - 0.5 * t.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("logistic regression log-likelihood is concave along segments") {
    Eigen::MatrixXd X(5, 2);
    X << 1.2, 1.0, -0.4, 1.0, 0.8, 1.0, -1.5, 1.0, 0.05, 1.0;
    const Dataset ds = make_dataset(X, vec({1.0, 0.0, 1.0, 0.0, 1.0}), 1);
    const LogisticRegressionModel m(ds);
    const std::vector<int> rows = all_rows(5);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 2.0);
    for (int c = 0; c < 50; ++c) {
        const Eigen::VectorXd a = vec({normal(rng), normal(rng)});
        const Eigen::VectorXd b = vec({normal(rng), normal(rng)});
        const double mid = m.log_lik_sum(0.5 * (a + b), rows);
        const double chord = 0.5 * (m.log_lik_sum(a, rows) + m.log_lik_sum(b, rows));
        CHECK(mid + 1e-10 >= chord);
    }
}

TEST_CASE("logistic regression gradients match finite differences") {
    Eigen::MatrixXd X(6, 3);
    X << 0.5, -1.0, 1.0, 2.0, 0.3, 1.0, -0.7, 0.9, 1.0,
         0.1, 1.4, 1.0, -1.2, -0.5, 1.0, 0.9, 0.2, 1.0;
    const Dataset ds = make_dataset(X, vec({1.0, 0.0, 0.0, 1.0, 1.0, 0.0}), 2);
    const LogisticRegressionModel m(ds);
    const std::vector<int> rows = all_rows(6);
    std::mt19937_64 rng(6);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int c = 0; c < 20; ++c) {
        Eigen::VectorXd t(3);
        for (int i = 0; i < 3; ++i) {
            t[i] = normal(rng);
        }
        const Eigen::VectorXd fd = finite_diff_gradient(
            [&](const Eigen::VectorXd& x) { return m.log_prior(x) + m.log_lik_sum(x, rows); },
            t);
        const Eigen::VectorXd an = m.grad_log_prior(t) + m.grad_log_lik_sum(t, rows);
        CHECK((fd - an).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, an.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("logistic regression rejects non-binary targets") {
    Eigen::MatrixXd X(2, 1);
    X << 1.0, 1.0;
    const Dataset ds = make_dataset(X, vec({0.0, 2.0}));
    CHECK_THROWS_AS(LogisticRegressionModel{ds}, InputError);
}

TEST_CASE("predict_prob stays strictly inside (0,1) at extreme logits") {
    Eigen::MatrixXd X(2, 1);
    X << 1.0, -1.0;
    const Dataset ds = make_dataset(X, vec({1.0, 0.0}));
    const LogisticRegressionModel m(ds);
    const double hi = m.predict_prob(vec({1000.0}), vec({1.0}));
    const double lo = m.predict_prob(vec({1000.0}), vec({-1.0}));
    CHECK(hi < 1.0);
    CHECK(hi > 0.999);
    CHECK(lo > 0.0);
    CHECK(lo < 1e-6);
    // softplus sanity: exact small-value identity and linear tail
    CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(softplus(800.0) == doctest::Approx(800.0).epsilon(1e-15));
}

TEST_CASE("bnn latent packing and hand-computed evaluation") {
    Eigen::MatrixXd X(2, 1);
    X << 2.0, -1.0;
    const Dataset ds = make_dataset(X, vec({3.0, 0.0}));
    const BnnRegressionModel m(ds, 2);
    // H*IN + 2H + 2 = 2 + 4 + 2
    CHECK(m.latent_dim() == 8);
    CHECK(m.hidden_units() == 2);
    CHECK(m.input_dim() == 1);

    // W1 = [1; -1], b1 = 0, w2 = [1, 1], b2 = 0.5, gamma = 0
    const Eigen::VectorXd t = vec({1.0, -1.0, 0.0, 0.0, 1.0, 1.0, 0.5, 0.0});
    const Eigen::VectorXd f = m.predict(t, X);
    // x=2: relu([2,-2]) = [2,0] -> 2 + 0.5; x=-1: relu([-1,1]) = [0,1] -> 1 + 0.5
    CHECK(f[0] == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(1.5).epsilon(1e-14));

    const std::vector<int> row0 = {0};
    CHECK(m.log_lik_sum(t, row0) ==
          doctest::Approx(log_normal_pdf(3.0, 2.5, 1.0)).epsilon(1e-13));

    // all-zero weights: f = b2 everywhere
    Eigen::VectorXd tz = Eigen::VectorXd::Zero(8);
    tz[6] = -0.25;
    const Eigen::VectorXd fz = m.predict(tz, X);
    CHECK(fz[0] == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(fz[1] == doctest::Approx(-0.25).epsilon(1e-15));

    CHECK(m.noise_log_std(t) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(m.predict(vec({1.0, 2.0}), X), ConfigError);
    CHECK_THROWS_AS(BnnRegressionModel(ds, 0), ConfigError);
}

TEST_CASE("bnn noise-scale shift law") {
    Eigen::MatrixXd X(1, 1);
    X << 0.7;
    const Dataset ds = make_dataset(X, vec({1.3}));
    const BnnRegressionModel m(ds, 3);
    const Eigen::Index d = m.latent_dim();
    Eigen::VectorXd t = Eigen::VectorXd::Zero(d); // f = 0, residual r = 1.3
    const std::vector<int> rows = {0};
    const double r2 = 1.3 * 1.3;
    const double base = m.log_lik_sum(t, rows);
    // gamma -> gamma + log 2 changes the log-lik by -log2 - r^2 (1/4 - 1) / 2
    t[d - 1] = std::log(2.0);
    const double shifted = m.log_lik_sum(t, rows);
    CHECK(shifted - base ==
          doctest::Approx(-std::log(2.0) - r2 * (0.25 - 1.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("bnn gradients match finite differences over random draws") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 0.6);
    Eigen::MatrixXd X(5, 2);
    Eigen::VectorXd y(5);
    for (int i = 0; i < 5; ++i) {
        X(i, 0) = normal(rng);
        X(i, 1) = normal(rng);
        y[i] = normal(rng);
    }
    const Dataset ds = make_dataset(X, y);
    const BnnRegressionModel m(ds, 4);
    const std::vector<int> rows = all_rows(5);
    for (int c = 0; c < 20; ++c) {
        Eigen::VectorXd t(m.latent_dim());
        for (Eigen::Index i = 0; i < t.size(); ++i) {
            t[i] = normal(rng);
        }
        const Eigen::VectorXd fd = finite_diff_gradient(
            [&](const Eigen::VectorXd& x) { return m.log_prior(x) + m.log_lik_sum(x, rows); },
            t);
        const Eigen::VectorXd an = m.grad_log_prior(t) + m.grad_log_lik_sum(t, rows);
        CHECK((fd - an).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, an.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("minibatch log-joint scales only the likelihood") {
    const ConjugateGaussianModel m(0.0, 1.0, 1.0, {0.5, -0.2, 0.9});
    const Eigen::VectorXd t = vec({0.4});
    const std::vector<int> batch = {1};
    // scale = total_n / batch_size = 3
    const double expect = m.log_prior(t) + 3.0 * m.log_lik_sum(t, batch);
    CHECK(log_joint_minibatch(m, batch, t, 3) == doctest::Approx(expect).epsilon(1e-14));

    const Eigen::VectorXd g_expect =
        m.grad_log_prior(t) + 3.0 * m.grad_log_lik_sum(t, batch);
    CHECK(grad_log_joint_minibatch(m, batch, t, 3)[0] ==
          doctest::Approx(g_expect[0]).epsilon(1e-14));

    const std::vector<int> empty;
    CHECK_THROWS_AS(log_joint_minibatch(m, empty, t, 3), InputError);
    const std::vector<int> too_many = {0, 1, 2};
    CHECK_THROWS_AS(log_joint_minibatch(m, too_many, t, 2), InputError);
}
