#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "eubo/errors.hpp"
#include "eubo/experiment/runner.hpp"
#include "eubo/oracle/gradcheck.hpp"
#include "eubo/oracle/theorem1.hpp"

namespace {

int cmd_run(const std::string& config_path, int trials_override,
            long long seed_override, const std::string& out_dir,
            const std::string& format) {
    eubo::ExperimentConfig config = eubo::ExperimentConfig::load(config_path);
    if (trials_override > 0) {
        config.trials = trials_override;
    }
    if (seed_override >= 0) {
        config.base_seed = static_cast<std::uint64_t>(seed_override);
    }

    eubo::OutputFormat out_format;
    if (format == "csv") {
        out_format.markdown = false;
    } else if (format == "md") {
        out_format.csv = false;
    } else if (!format.empty()) {
        throw eubo::ConfigError("--format must be csv or md");
    }

    const eubo::AggregateReport report = eubo::run_experiment(config);
    eubo::write_outputs(report, out_dir, out_format);

    std::cout << "# " << config.dataset << " / " << config.objective << ", "
              << config.trials << " trial(s)\n\n";
    std::cout << render_bounds_table(report, eubo::TableFormat::MARKDOWN) << '\n';
    if (!report.metric_rows.empty()) {
        std::cout << render_metrics_table(report, eubo::TableFormat::MARKDOWN) << '\n';
    }
    if (report.divergent_count > 0) {
        std::cout << "warning: " << report.divergent_count
                  << " divergent trial(s) excluded from aggregates\n";
    }
    std::cout << "outputs written to " << out_dir << '\n';
    return 0;
}

int cmd_validate_theorem1(const std::string& grid_path) {
    const eubo::Theorem1Spec spec = eubo::Theorem1Spec::load(grid_path);
    const eubo::Theorem1Result result = eubo::validate_theorem1(spec);
    std::cout << "pairs checked:    " << result.num_pairs << '\n'
              << "inequalities:     " << result.num_checks << '\n';
    std::printf("max violation:    %.3e (tolerance %.1e)\n", result.max_violation,
                spec.tolerance);
    if (result.passed()) {
        std::cout << "all inequalities hold\n";
        return 0;
    }
    std::cout << result.failures.size() << " FAILURES:\n";
    for (const auto& f : result.failures) {
        std::cout << "  " << f << '\n';
    }
    return 1;
}

int cmd_gradcheck(const std::string& model_name) {
    if (model_name == "conjugate") {
        const auto table = eubo::conjugate_gradient_checks(100000, 300, 20240501);
        bool ok = true;
        std::printf("%-24s %12s %12s %12s %12s %8s\n", "estimator", "mc_mu", "mc_ls",
                    "fd_mu", "fd_ls", "rel_err");
        for (const auto& row : table) {
            std::printf("%-24s %12.6f %12.6f %12.6f %12.6f %7.2f%%\n", row.name.c_str(),
                        row.mc[0], row.mc[1], row.fd[0], row.fd[1],
                        100.0 * row.max_rel_error);
            ok = ok && row.max_rel_error < 0.05;
        }
        std::cout << (ok ? "all estimators within 5%\n" : "FAILED: estimator above 5%\n");
        return ok ? 0 : 1;
    }
    if (model_name == "logreg" || model_name == "bnn") {
        const eubo::ModelGradCheck check = model_name == "logreg"
                                               ? eubo::logreg_gradient_check(7)
                                               : eubo::bnn_gradient_check(7);
        std::printf("%s: %d random draws, max |analytic-fd| = %.3e (rel %.3e)\n",
                    check.name.c_str(), check.draws, check.max_abs_error,
                    check.max_rel_error);
        const bool ok = check.max_abs_error < 1e-5 || check.max_rel_error < 1e-6;
        std::cout << (ok ? "gradients consistent\n" : "FAILED: gradient mismatch\n");
        return ok ? 0 : 1;
    }
    throw eubo::ConfigError("gradcheck: unknown model '" + model_name +
                            "' (expected conjugate|logreg|bnn)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sandwiched variational inference: train bounds, validate them, "
                 "check gradients"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string format;
    int trials_override = -1;
    long long seed_override = -1;
    auto* run = app.add_subcommand("run", "train and emit bound/metric tables");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--trials", trials_override, "override trial count");
    run->add_option("--seed", seed_override, "override base seed");
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_option("--format", format, "restrict table format: csv or md");

    std::string grid_path;
    auto* validate = app.add_subcommand(
        "validate-theorem1", "quadrature check of sandwich and divergence bounds");
    validate->add_option("--grid", grid_path, "grid spec file")->required();

    std::string model_name;
    auto* gradcheck =
        app.add_subcommand("gradcheck", "Monte Carlo vs finite-difference gradients");
    gradcheck->add_option("--model", model_name, "conjugate|logreg|bnn")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, trials_override, seed_override, out_dir, format);
        }
        if (validate->parsed()) {
            return cmd_validate_theorem1(grid_path);
        }
        return cmd_gradcheck(model_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
