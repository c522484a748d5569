#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eubo/data/dataset.hpp"
#include "eubo/experiment/config.hpp"
#include "eubo/model.hpp"
#include "eubo/variational.hpp"

namespace eubo {

// Stable row labels for the bounds table, in presentation order.
// half_U_plus_half_logp is the derived combination row.
extern const std::vector<std::string> kBoundRows;

// Everything recorded about one training trial.
struct TrialReport {
    std::uint64_t trial_seed = 0;
    bool diverged = false;
    int epochs_run = 0;

    // Per-epoch traces, evaluated on the full training data with fresh
    // particles (scale factor 1); lengths equal epochs_run.
    std::vector<double> trace_elbo;
    std::vector<double> trace_eubo;
    std::vector<double> trace_log_evidence;

    // Final bound estimates from one shared eval batch, keyed by kBoundRows.
    std::map<std::string, double> final_bounds;

    // Test metrics; NaN when not applicable (conjugate runs, divergence).
    double test_error = std::numeric_limits<double>::quiet_NaN();
    double test_rmse = std::numeric_limits<double>::quiet_NaN();
    double test_log_lik = std::numeric_limits<double>::quiet_NaN();

    double mean_ess = 0.0; // effective sample size, averaged over steps
    double min_ess = 0.0;
    double wall_seconds = 0.0;

    VariationalParams final_params;
};

// Run one trial. `full_raw` is the unsplit, unstandardized dataset (ignored
// and may be null for the conjugate model). Divergence (non-finite lambda)
// flags the report instead of throwing.
TrialReport run_trial(const ExperimentConfig& config, const Dataset* full_raw,
                      int trial_index);

} // namespace eubo
