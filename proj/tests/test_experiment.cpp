#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eubo/errors.hpp"
#include "eubo/experiment/config.hpp"
#include "eubo/experiment/report.hpp"
#include "eubo/experiment/runner.hpp"
#include "eubo/experiment/trainer.hpp"
#include "eubo/models/conjugate_gaussian.hpp"
#include "eubo/util/kv.hpp"

using namespace eubo;

namespace {

const std::string kRoot = EUBO_SOURCE_DIR;

std::string temp_file(const std::string& tag, const std::string& text) {
    const std::string path = "/tmp/eubo_exp_test_" + tag;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Small conjugate run: fast and fully in-memory.
ExperimentConfig tiny_conjugate() {
    ExperimentConfig cfg;
    cfg.model = "conjugate";
    cfg.dataset = "conjugate-testbed";
    cfg.objective = "eubo";
    cfg.estimator = "score";
    cfg.num_particles = 50;
    cfg.batch_size = 1;
    cfg.epochs = 20;
    cfg.learning_rate = 0.05;
    cfg.trials = 2;
    cfg.base_seed = 31;
    cfg.eval_particles = 200;
    return cfg;
}

} // namespace

TEST_CASE("config file loading honors every key and rejects unknowns") {
    const std::string path = temp_file("ok.kv",
                                       "model = conjugate\n"
                                       "objective = renyi\n"
                                       "alpha = -2\n"
                                       "estimator = reparam\n"
                                       "num_particles = 25\n"
                                       "epochs = 7\n"
                                       "learning_rate = 0.125\n"
                                       "trials = 3\n"
                                       "base_seed = 99\n");
    const ExperimentConfig cfg = ExperimentConfig::load(path);
    CHECK(cfg.model == "conjugate");
    CHECK(cfg.objective == "renyi");
    CHECK(cfg.alpha == doctest::Approx(-2.0));
    CHECK(cfg.estimator == "reparam");
    CHECK(cfg.num_particles == 25);
    CHECK(cfg.epochs == 7);
    CHECK(cfg.learning_rate == doctest::Approx(0.125));
    CHECK(cfg.trials == 3);
    CHECK(cfg.base_seed == 99);
    // untouched keys keep their defaults
    CHECK(cfg.batch_size == 100);
    CHECK(cfg.predict_draws == 200);
    CHECK(cfg.bound_objective().kind == BoundObjective::Kind::RENYI);

    CHECK_THROWS_WITH_AS(
        ExperimentConfig::load(temp_file("typo.kv", "model = conjugate\nepochz = 3\n")),
        doctest::Contains("unknown key 'epochz'"), ConfigError);
}

TEST_CASE("config validation rejects bad enums and domains") {
    ExperimentConfig cfg = tiny_conjugate();

    cfg.model = "quantum";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_conjugate();

    cfg.objective = "banana";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_conjugate();

    cfg.estimator = "magic";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_conjugate();

    cfg.optimizer = "newton";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_conjugate();

    cfg.objective = "renyi";
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_conjugate();

    cfg.objective = "chi";
    cfg.chi_n = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_conjugate();

    for (int* field : {&cfg.num_particles, &cfg.epochs, &cfg.trials, &cfg.batch_size,
                       &cfg.eval_particles, &cfg.predict_draws}) {
        const int saved = *field;
        *field = 0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        *field = saved;
    }
    cfg.learning_rate = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_conjugate();
    cfg.train_fraction = 1.2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("to_kv round-trips the whole config through a file") {
    ExperimentConfig cfg = tiny_conjugate();
    cfg.objective = "chi";
    cfg.chi_n = 3.0;
    cfg.init_log_sigma = -1.25;
    const std::string path = temp_file("roundtrip.kv", cfg.to_kv());
    const ExperimentConfig back = ExperimentConfig::load(path);
    CHECK(back.model == cfg.model);
    CHECK(back.dataset == cfg.dataset);
    CHECK(back.data_path == cfg.data_path);
    CHECK(back.schema_path == cfg.schema_path);
    CHECK(back.hidden_units == cfg.hidden_units);
    CHECK(back.train_fraction == cfg.train_fraction);
    CHECK(back.objective == cfg.objective);
    CHECK(back.alpha == cfg.alpha);
    CHECK(back.chi_n == cfg.chi_n);
    CHECK(back.estimator == cfg.estimator);
    CHECK(back.num_particles == cfg.num_particles);
    CHECK(back.batch_size == cfg.batch_size);
    CHECK(back.epochs == cfg.epochs);
    CHECK(back.optimizer == cfg.optimizer);
    CHECK(back.learning_rate == cfg.learning_rate);
    CHECK(back.beta1 == cfg.beta1);
    CHECK(back.beta2 == cfg.beta2);
    CHECK(back.eps_stab == cfg.eps_stab);
    CHECK(back.init_mu == cfg.init_mu);
    CHECK(back.init_log_sigma == cfg.init_log_sigma);
    CHECK(back.trials == cfg.trials);
    CHECK(back.base_seed == cfg.base_seed);
    CHECK(back.eval_particles == cfg.eval_particles);
    CHECK(back.predict_draws == cfg.predict_draws);
}

TEST_CASE("conjugate trials are bit-deterministic") {
    const ExperimentConfig cfg = tiny_conjugate();
    const TrialReport a = run_trial(cfg, nullptr, 0);
    const TrialReport b = run_trial(cfg, nullptr, 0);
    CHECK(a.trial_seed == b.trial_seed);
    CHECK(a.trace_elbo == b.trace_elbo);
    CHECK(a.trace_eubo == b.trace_eubo);
    CHECK(a.trace_log_evidence == b.trace_log_evidence);
    CHECK(a.final_bounds == b.final_bounds);
    CHECK(a.final_params.mu == b.final_params.mu);
    CHECK(a.final_params.log_sigma == b.final_params.log_sigma);

    // a different trial index gives a different stream
    const TrialReport c = run_trial(cfg, nullptr, 1);
    CHECK(c.trial_seed != a.trial_seed);
    CHECK(c.trace_eubo != a.trace_eubo);
}

TEST_CASE("per-epoch traces keep the sandwich order on shared batches") {
    ExperimentConfig cfg = tiny_conjugate();
    cfg.epochs = 40;
    const TrialReport r = run_trial(cfg, nullptr, 0);
    REQUIRE(r.epochs_run == 40);
    REQUIRE(r.trace_elbo.size() == 40);
    for (int e = 0; e < 40; ++e) {
        CHECK(r.trace_elbo[e] <= r.trace_log_evidence[e] + 1e-12);
        CHECK(r.trace_log_evidence[e] <= r.trace_eubo[e] + 1e-12);
    }
    CHECK(r.mean_ess > 0.0);
    CHECK(r.min_ess > 0.0);
    CHECK(r.min_ess <= r.mean_ess);
    // conjugate runs have no test split
    CHECK(std::isnan(r.test_error));
    CHECK(std::isnan(r.test_rmse));
    CHECK(std::isnan(r.test_log_lik));
}

TEST_CASE("both bound directions converge to the conjugate evidence") {
    const double lz = ConjugateGaussianModel::canonical().log_evidence();
    ExperimentConfig cfg = tiny_conjugate();
    cfg.num_particles = 100;
    cfg.epochs = 500;
    cfg.learning_rate = 0.01;
    cfg.eval_particles = 1000;

    cfg.objective = "eubo";
    const TrialReport up = run_trial(cfg, nullptr, 0);
    CHECK_FALSE(up.diverged);
    CHECK(std::abs(up.final_bounds.at("U_eubo") - lz) < 0.05);

    cfg.objective = "elbo";
    cfg.estimator = "reparam";
    const TrialReport low = run_trial(cfg, nullptr, 0);
    CHECK_FALSE(low.diverged);
    CHECK(std::abs(low.final_bounds.at("L_elbo") - lz) < 0.05);

    // optimized variational parameters approach the posterior N(0, 0.5)
    CHECK(std::abs(up.final_params.mu[0]) < 0.1);
    CHECK(std::abs(low.final_params.mu[0]) < 0.1);
    CHECK(std::abs(low.final_params.log_sigma[0] - 0.5 * std::log(0.5)) < 0.15);
}

TEST_CASE("aggregate: mean, sample std, single-trial convention") {
    const AggregateCell abc = aggregate({1.0, 2.0, 3.0});
    CHECK(abc.mean == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(abc.std_dev == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(abc.count == 3);
    CHECK_FALSE(abc.flagged_single);

    const AggregateCell one = aggregate({5.0});
    CHECK(one.mean == doctest::Approx(5.0));
    CHECK(one.std_dev == doctest::Approx(0.0));
    CHECK(one.count == 1);
    CHECK(one.flagged_single);

    const AggregateCell none = aggregate({});
    CHECK(none.count == 0);
    CHECK(std::isnan(none.mean));
}

TEST_CASE("format_full survives a parse round-trip bitwise") {
    for (double v : {1.0 / 3.0, 0.1, -1.2655121234846454, 3.0, 1e-17, -7.25e300}) {
        CHECK(std::stod(format_full(v)) == v);
    }
    CHECK(format_mean_std({2.0, 1.0, 3, false}) == "2.00±1.00");
    CHECK(format_mean_std({-0.126, 0.5, 2, false}) == "-0.13±0.50");
}

namespace {

TrialReport fake_trial(double base, bool diverged = false) {
    TrialReport t;
    t.trial_seed = static_cast<std::uint64_t>(base * 100);
    t.diverged = diverged;
    t.epochs_run = 2;
    t.trace_elbo = {base - 1.0, base - 0.5};
    t.trace_eubo = {base + 1.0, base + 0.5};
    t.trace_log_evidence = {base, base};
    for (const std::string& row : kBoundRows) {
        t.final_bounds[row] = base;
    }
    t.test_error = 0.25;
    t.test_log_lik = -0.5 * base;
    t.mean_ess = 42.0;
    return t;
}

} // namespace

TEST_CASE("aggregate_trials excludes divergent trials loudly") {
    const ExperimentConfig cfg = tiny_conjugate();
    const AggregateReport rep =
        aggregate_trials(cfg, {fake_trial(1.0), fake_trial(3.0), fake_trial(100.0, true)});
    CHECK(rep.divergent_count == 1);
    REQUIRE(rep.bound_rows.size() == kBoundRows.size());
    for (const auto& [name, cell] : rep.bound_rows) {
        CHECK(cell.count == 2); // divergent trial not in the mean
        CHECK(cell.mean == doctest::Approx(2.0));
    }
    // metric rows: test_error (classification), test_log_lik, mean_ess
    REQUIRE(rep.metric_rows.size() == 3);
    CHECK(rep.metric_rows[0].first == "test_error");
    CHECK(rep.metric_rows[1].first == "test_log_lik");
    CHECK(rep.metric_rows[2].first == "mean_ess");

    const std::string csv = render_bounds_table(rep, TableFormat::CSV);
    CHECK(csv.find("bound,mean,std,trials") == 0);
    CHECK(csv.find("# divergent_trials_excluded,1") != std::string::npos);
    const std::string md = render_bounds_table(rep, TableFormat::MARKDOWN);
    CHECK(md.find("±") != std::string::npos);
    CHECK(md.find("1 divergent trial(s) excluded") != std::string::npos);

    // CSV means reparse to the exact aggregate values
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    for (const auto& [name, cell] : rep.bound_rows) {
        REQUIRE(std::getline(lines, line));
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        CHECK(line.substr(0, c1) == name);
        CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) == cell.mean);
    }
}

TEST_CASE("single-trial tables carry the std-0 flag") {
    const ExperimentConfig cfg = tiny_conjugate();
    const AggregateReport rep = aggregate_trials(cfg, {fake_trial(2.0)});
    const std::string md = render_bounds_table(rep, TableFormat::MARKDOWN);
    CHECK(md.find("single trial, std 0 by convention") != std::string::npos);
}

TEST_CASE("trace CSV format") {
    const TrialReport t = fake_trial(0.0);
    const std::string csv = render_trace_csv(t);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "epoch,elbo,eubo,log_evidence");
    REQUIRE(std::getline(lines, line));
    CHECK(line.substr(0, 2) == "1,"); // 1-based epochs
    REQUIRE(std::getline(lines, line));
    CHECK(line.substr(0, 2) == "2,");
    CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("run_experiment writes a reproducible bundle") {
    ExperimentConfig cfg = tiny_conjugate();
    const AggregateReport rep = run_experiment(cfg);
    CHECK(rep.trials.size() == 2);
    CHECK(rep.divergent_count == 0);

    const std::filesystem::path dir = "/tmp/eubo_exp_bundle";
    std::filesystem::remove_all(dir);
    write_outputs(rep, dir.string());
    CHECK(std::filesystem::exists(dir / "bounds_table.csv"));
    CHECK(std::filesystem::exists(dir / "bounds_table.md"));
    CHECK(std::filesystem::exists(dir / "test_metrics.csv"));
    CHECK(std::filesystem::exists(dir / "trace_trial0.csv"));
    CHECK(std::filesystem::exists(dir / "trace_trial1.csv"));
    CHECK(std::filesystem::exists(dir / "run_manifest"));

    const std::string manifest = read_file(dir / "run_manifest");
    CHECK(manifest.find("trial_seeds") != std::string::npos);
    CHECK(manifest.find("base_seed = 31") != std::string::npos);

    // a rerun of the same config is byte-identical
    const AggregateReport rep2 = run_experiment(cfg);
    const std::string csv1 = render_bounds_table(rep, TableFormat::CSV);
    const std::string csv2 = render_bounds_table(rep2, TableFormat::CSV);
    CHECK(csv1 == csv2);
}

TEST_CASE("a diverging run is flagged and excluded, not fatal") {
    ExperimentConfig cfg = tiny_conjugate();
    cfg.learning_rate = 1e9; // one step throws lambda to +-1e9, exp overflows
    cfg.epochs = 5;
    cfg.trials = 1;
    const AggregateReport rep = run_experiment(cfg);
    CHECK(rep.divergent_count == 1);
    CHECK(rep.trials[0].diverged);
    const std::string csv = render_bounds_table(rep, TableFormat::CSV);
    CHECK(csv.find("# divergent_trials_excluded,1") != std::string::npos);
}
