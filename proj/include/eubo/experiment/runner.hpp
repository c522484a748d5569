#pragma once

#include <optional>
#include <string>

#include "eubo/experiment/report.hpp"

namespace eubo {

// Run all trials of one experiment. Loads the dataset once (when the model
// needs one) and reuses it across trials; each trial re-splits and
// re-standardizes from the raw copy with its own derived seed.
AggregateReport run_experiment(const ExperimentConfig& config);

// Which table formats to write; both by default.
struct OutputFormat {
    bool csv = true;
    bool markdown = true;
};

// Write bounds_table.{csv,md}, test_metrics.{csv,md}, trace_trial<k>.csv and
// run_manifest into `out_dir` (created if missing). Tables are byte-stable
// for a fixed (config, seed) on one platform.
void write_outputs(const AggregateReport& report, const std::string& out_dir,
                   const OutputFormat& format = {});

} // namespace eubo
