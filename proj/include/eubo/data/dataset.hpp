#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eubo {

// What to do with a CSV file: which column is the target, how labels map to
// 0/1, and which preprocessing applies. Schemas are checked-in files — the
// single source of truth for per-dataset preprocessing.
struct DatasetSchema {
    enum class Task { CLASSIFICATION, REGRESSION };

    Task task = Task::CLASSIFICATION;
    bool has_header = true;
    std::string target; // column name (with header) or 0-based index (without)
    std::map<std::string, double> label_map; // classification: raw label -> 0/1
    bool add_intercept = false;
    bool standardize = true;
    bool standardize_target = false; // regression only
    std::optional<int> hidden_units; // per-dataset model-width override

    static DatasetSchema load(const std::string& path);
};

struct ColumnStats {
    double mean = 0.0;
    double std = 1.0; // sample std (N-1); constant columns keep std = 0
};

struct Dataset {
    Eigen::MatrixXd features; // N x D
    Eigen::VectorXd targets;  // N (0/1 labels or regression values)
    std::vector<ColumnStats> column_stats; // per feature column, post-standardization
    ColumnStats target_stats;              // identity unless target standardized
    std::string name;
    int intercept_column = -1; // index of the all-ones column, -1 if none

    Eigen::Index size() const { return features.rows(); }
    Eigen::Index feature_dim() const { return features.cols(); }
};

// Parse a CSV per the schema: extract features, map labels, append the
// intercept column when asked. No standardization happens here. Errors name
// the offending row/column; non-finite cells (e.g. "NaN") are rejected, never
// imputed.
Dataset load_csv(const std::string& path, const DatasetSchema& schema,
                 const std::string& name = "");

// Center/scale each feature column to mean 0, sample std 1, in place,
// recording the stats used. The intercept column and constant columns are
// exempt (constant columns are centered only). Idempotent. With
// standardize_target, the target column gets the same treatment and its stats
// are kept for inverse-transforming predictions.
void standardize(Dataset& ds, bool standardize_target = false);

// Apply previously fitted stats (train stats applied to a test split).
void apply_standardization(Dataset& ds, const std::vector<ColumnStats>& feature_stats,
                           const ColumnStats& target_stats, bool standardize_target);

struct SplitSpec {
    double train_fraction = 0.9;
    std::uint64_t seed = 0;
};

// Deterministic shuffled partition; train gets ceil(fraction * N) rows.
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec);

} // namespace eubo
