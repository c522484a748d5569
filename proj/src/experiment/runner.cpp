#include "eubo/experiment/runner.hpp"

#include <filesystem>
#include <fstream>

#include "eubo/errors.hpp"

namespace eubo {

AggregateReport run_experiment(const ExperimentConfig& config) {
    config.validate();

    std::optional<Dataset> raw;
    if (config.model != "conjugate") {
        const DatasetSchema schema = DatasetSchema::load(config.schema_path);
        raw = load_csv(config.data_path, schema, config.dataset);
    }
    const Dataset* raw_ptr = raw.has_value() ? &*raw : nullptr;

    std::vector<TrialReport> trials;
    trials.reserve(static_cast<std::size_t>(config.trials));
    for (int k = 0; k < config.trials; ++k) {
        trials.push_back(run_trial(config, raw_ptr, k));
    }
    return aggregate_trials(config, std::move(trials));
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("write_outputs: cannot open " + path.string());
    }
    out << content;
    if (!out) {
        throw InputError("write_outputs: short write to " + path.string());
    }
}

} // namespace

void write_outputs(const AggregateReport& report, const std::string& out_dir,
                   const OutputFormat& format) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    if (format.csv) {
        write_file(dir / "bounds_table.csv",
                   render_bounds_table(report, TableFormat::CSV));
        write_file(dir / "test_metrics.csv",
                   render_metrics_table(report, TableFormat::CSV));
    }
    if (format.markdown) {
        write_file(dir / "bounds_table.md",
                   render_bounds_table(report, TableFormat::MARKDOWN));
        write_file(dir / "test_metrics.md",
                   render_metrics_table(report, TableFormat::MARKDOWN));
    }
    for (std::size_t k = 0; k < report.trials.size(); ++k) {
        write_file(dir / ("trace_trial" + std::to_string(k) + ".csv"),
                   render_trace_csv(report.trials[k]));
    }
    write_file(dir / "run_manifest", render_manifest(report));
}

} // namespace eubo
