#include "eubo/experiment/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Core>

namespace eubo {

AggregateCell aggregate(const std::vector<double>& values) {
    AggregateCell cell;
    cell.count = static_cast<int>(values.size());
    if (values.empty()) {
        return cell;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    cell.mean = sum / static_cast<double>(values.size());
    if (values.size() == 1) {
        cell.std_dev = 0.0;
        cell.flagged_single = true;
        return cell;
    }
    double sq = 0.0;
    for (double v : values) {
        sq += (v - cell.mean) * (v - cell.mean);
    }
    cell.std_dev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    return cell;
}

namespace {

std::vector<const TrialReport*> usable_trials(const std::vector<TrialReport>& trials) {
    std::vector<const TrialReport*> out;
    for (const auto& t : trials) {
        if (!t.diverged) {
            out.push_back(&t);
        }
    }
    return out;
}

AggregateCell aggregate_over(const std::vector<const TrialReport*>& trials,
                             double (*pick)(const TrialReport&)) {
    std::vector<double> values;
    values.reserve(trials.size());
    for (const auto* t : trials) {
        values.push_back(pick(*t));
    }
    return aggregate(values);
}

} // namespace

AggregateReport aggregate_trials(const ExperimentConfig& config,
                                 std::vector<TrialReport> trials) {
    AggregateReport report;
    report.config = config;
    report.trials = std::move(trials);
    for (const auto& t : report.trials) {
        report.divergent_count += t.diverged ? 1 : 0;
    }
    const auto usable = usable_trials(report.trials);

    for (const auto& row : kBoundRows) {
        std::vector<double> values;
        values.reserve(usable.size());
        for (const auto* t : usable) {
            values.push_back(t->final_bounds.at(row));
        }
        report.bound_rows.emplace_back(row, aggregate(values));
    }

    const bool has_test = !usable.empty() && !std::isnan(usable.front()->test_log_lik);
    if (has_test) {
        const bool classification = !std::isnan(usable.front()->test_error);
        if (classification) {
            report.metric_rows.emplace_back(
                "test_error",
                aggregate_over(usable, [](const TrialReport& t) { return t.test_error; }));
        } else {
            report.metric_rows.emplace_back(
                "test_rmse",
                aggregate_over(usable, [](const TrialReport& t) { return t.test_rmse; }));
        }
        report.metric_rows.emplace_back(
            "test_log_lik",
            aggregate_over(usable, [](const TrialReport& t) { return t.test_log_lik; }));
    }
    if (!usable.empty()) {
        report.metric_rows.emplace_back(
            "mean_ess",
            aggregate_over(usable, [](const TrialReport& t) { return t.mean_ess; }));
    }
    return report;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_mean_std(const AggregateCell& cell) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.2f±%.2f", cell.mean, cell.std_dev);
    return buf;
}

namespace {

std::string render_rows(const std::vector<std::pair<std::string, AggregateCell>>& rows,
                        const std::string& key_header, int divergent_count,
                        TableFormat format) {
    std::ostringstream out;
    if (format == TableFormat::CSV) {
        out << key_header << ",mean,std,trials\n";
        for (const auto& [name, cell] : rows) {
            out << name << ',' << format_full(cell.mean) << ',' << format_full(cell.std_dev)
                << ',' << cell.count << '\n';
        }
        if (divergent_count > 0) {
            out << "# divergent_trials_excluded," << divergent_count << '\n';
        }
        return out.str();
    }
    out << "| " << key_header << " | value | trials |\n";
    out << "|---|---|---|\n";
    for (const auto& [name, cell] : rows) {
        out << "| " << name << " | " << format_mean_std(cell) << " | " << cell.count;
        if (cell.flagged_single) {
            out << " (single trial, std 0 by convention)";
        }
        out << " |\n";
    }
    if (divergent_count > 0) {
        out << "\n" << divergent_count << " divergent trial(s) excluded from aggregates.\n";
    }
    return out.str();
}

} // namespace

std::string render_bounds_table(const AggregateReport& report, TableFormat format) {
    return render_rows(report.bound_rows, "bound", report.divergent_count, format);
}

std::string render_metrics_table(const AggregateReport& report, TableFormat format) {
    return render_rows(report.metric_rows, "metric", report.divergent_count, format);
}

std::string render_trace_csv(const TrialReport& trial) {
    std::ostringstream out;
    out << "epoch,elbo,eubo,log_evidence\n";
    for (int e = 0; e < trial.epochs_run; ++e) {
        out << (e + 1) << ',' << format_full(trial.trace_elbo[e]) << ','
            << format_full(trial.trace_eubo[e]) << ','
            << format_full(trial.trace_log_evidence[e]) << '\n';
    }
    return out.str();
}

std::string render_manifest(const AggregateReport& report) {
    std::ostringstream out;
    out << "# run manifest\n";
    out << "library_version = 1.0.0\n";
    out << "eigen_version = " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.'
        << EIGEN_MINOR_VERSION << '\n';
    out << "compiler = "
#if defined(__clang__)
        << "clang " << __clang_major__ << '.' << __clang_minor__
#elif defined(__GNUC__)
        << "gcc " << __GNUC__ << '.' << __GNUC_MINOR__
#else
        << "unknown"
#endif
        << '\n';
    out << "\n# config echo\n" << report.config.to_kv();
    out << "\n# trials\n";
    out << "trial_count = " << report.trials.size() << '\n';
    out << "divergent_trials = " << report.divergent_count << '\n';
    out << "trial_seeds =";
    for (const auto& t : report.trials) {
        out << ' ' << t.trial_seed;
    }
    out << '\n';
    out << "wall_seconds =";
    for (const auto& t : report.trials) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), " %.1f", t.wall_seconds);
        out << buf;
    }
    out << '\n';
    out << "\n# notes\n";
    out << "# bound rows are estimated on the full data with eval_particles draws;\n";
    out << "# the evidence is a whole-dataset quantity, so no train/test restriction.\n";
    return out.str();
}

} // namespace eubo
