#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "eubo/experiment/config.hpp"
#include "eubo/experiment/trainer.hpp"

namespace eubo {

// Mean +- sample standard deviation over trials. A single trial keeps
// std = 0 by convention and is flagged via `flagged_single`.
struct AggregateCell {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double std_dev = std::numeric_limits<double>::quiet_NaN();
    int count = 0;
    bool flagged_single = false;
};

AggregateCell aggregate(const std::vector<double>& values);

// Everything run_experiment produces: raw trial reports plus the aggregate
// rows the output tables are built from. Divergent trials stay in `trials`
// but are excluded from every aggregate; the exclusion is reported, never
// silent.
struct AggregateReport {
    ExperimentConfig config;
    std::vector<TrialReport> trials;
    int divergent_count = 0;

    // Bound rows in kBoundRows order.
    std::vector<std::pair<std::string, AggregateCell>> bound_rows;
    // Test-metric rows; empty for models without a test split.
    std::vector<std::pair<std::string, AggregateCell>> metric_rows;
};

AggregateReport aggregate_trials(const ExperimentConfig& config,
                                 std::vector<TrialReport> trials);

enum class TableFormat { CSV, MARKDOWN };

// Full-precision CSV (values survive a parse round-trip bitwise) or a
// markdown table with "m.mm±s.ss" cells.
std::string render_bounds_table(const AggregateReport& report, TableFormat format);
std::string render_metrics_table(const AggregateReport& report, TableFormat format);

// Per-epoch trace of one trial; header `epoch,elbo,eubo,log_evidence`.
std::string render_trace_csv(const TrialReport& trial);

// Config echo + trial seeds + versions + timing. Human-oriented.
std::string render_manifest(const AggregateReport& report);

// Formatting helpers shared by tables and tests.
std::string format_full(double v);     // round-trippable %.17g
std::string format_mean_std(const AggregateCell& cell); // "m.mm±s.ss"

} // namespace eubo
