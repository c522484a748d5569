#include "eubo/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "eubo/errors.hpp"
#include "eubo/util/kv.hpp"

namespace eubo {

DatasetSchema DatasetSchema::load(const std::string& path) {
    const KvFile kv = KvFile::parse_file(path);
    kv.require_known_keys({"task", "has_header", "target", "label_map", "add_intercept",
                           "standardize", "standardize_target", "hidden_units"});
    DatasetSchema s;
    const std::string task = kv.get_string("task");
    if (task == "classification") {
        s.task = Task::CLASSIFICATION;
    } else if (task == "regression") {
        s.task = Task::REGRESSION;
    } else {
        throw ConfigError(path + ": task must be 'classification' or 'regression'");
    }
    s.has_header = kv.get_bool("has_header", true);
    s.target = kv.get_string("target");
    if (kv.has("label_map")) {
        s.label_map = parse_label_map(kv.get_string("label_map"));
    }
    s.add_intercept = kv.get_bool("add_intercept", false);
    s.standardize = kv.get_bool("standardize", true);
    s.standardize_target = kv.get_bool("standardize_target", false);
    if (kv.has("hidden_units")) {
        s.hidden_units = static_cast<int>(kv.get_int("hidden_units"));
    }
    if (s.task == Task::CLASSIFICATION && s.standardize_target) {
        throw ConfigError(path + ": standardize_target only applies to regression");
    }
    return s;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.push_back("");
    }
    return cells;
}

double parse_numeric_cell(const std::string& cell, int row, const std::string& column) {
    double v = 0.0;
    try {
        std::size_t pos = 0;
        v = std::stod(cell, &pos);
        if (pos != cell.size()) {
            throw std::invalid_argument(cell);
        }
    } catch (const std::exception&) {
        throw IngestError("row " + std::to_string(row) + ", column '" + column +
                          "': unparseable cell '" + cell + "'");
    }
    if (!std::isfinite(v)) {
        throw IngestError("row " + std::to_string(row) + ", column '" + column +
                          "': non-finite value '" + cell + "' (no imputation)");
    }
    return v;
}

} // namespace

Dataset load_csv(const std::string& path, const DatasetSchema& schema,
                 const std::string& name) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open CSV file: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) {
            lines.push_back(line);
        }
    }
    if (lines.empty()) {
        throw IngestError(path + ": empty file");
    }

    std::vector<std::string> column_names;
    std::size_t first_data_line = 0;
    if (schema.has_header) {
        column_names = split_csv_line(lines[0]);
        first_data_line = 1;
    } else {
        const std::size_t ncols = split_csv_line(lines[0]).size();
        for (std::size_t c = 0; c < ncols; ++c) {
            column_names.push_back(std::to_string(c));
        }
    }

    const auto target_it =
        std::find(column_names.begin(), column_names.end(), schema.target);
    if (target_it == column_names.end()) {
        throw IngestError(path + ": target column '" + schema.target + "' not found");
    }
    const std::size_t target_col =
        static_cast<std::size_t>(target_it - column_names.begin());
    const std::size_t ncols = column_names.size();
    const Eigen::Index n_rows = static_cast<Eigen::Index>(lines.size() - first_data_line);
    if (n_rows < 1) {
        throw IngestError(path + ": no data rows");
    }

    Dataset ds;
    ds.name = name.empty() ? path : name;
    const Eigen::Index raw_dim = static_cast<Eigen::Index>(ncols) - 1;
    const Eigen::Index dim = raw_dim + (schema.add_intercept ? 1 : 0);
    ds.features.resize(n_rows, dim);
    ds.targets.resize(n_rows);

    for (Eigen::Index r = 0; r < n_rows; ++r) {
        const int file_row = static_cast<int>(first_data_line + static_cast<std::size_t>(r)) + 1;
        const auto cells = split_csv_line(lines[first_data_line + static_cast<std::size_t>(r)]);
        if (cells.size() != ncols) {
            throw IngestError("row " + std::to_string(file_row) + ": expected " +
                              std::to_string(ncols) + " cells, got " +
                              std::to_string(cells.size()));
        }
        Eigen::Index d = 0;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (c == target_col) {
                continue;
            }
            ds.features(r, d++) = parse_numeric_cell(cells[c], file_row, column_names[c]);
        }
        const std::string& raw_target = cells[target_col];
        if (schema.task == DatasetSchema::Task::CLASSIFICATION) {
            double label = 0.0;
            if (!schema.label_map.empty()) {
                const auto it = schema.label_map.find(raw_target);
                if (it == schema.label_map.end()) {
                    throw IngestError("row " + std::to_string(file_row) + ", column '" +
                                      column_names[target_col] + "': unknown label '" +
                                      raw_target + "'");
                }
                label = it->second;
            } else {
                label = parse_numeric_cell(raw_target, file_row, column_names[target_col]);
            }
            if (label != 0.0 && label != 1.0) {
                throw IngestError("row " + std::to_string(file_row) +
                                  ": label must map to 0 or 1, got " +
                                  std::to_string(label));
            }
            ds.targets[r] = label;
        } else {
            ds.targets[r] =
                parse_numeric_cell(raw_target, file_row, column_names[target_col]);
        }
    }

    if (schema.add_intercept) {
        ds.features.col(dim - 1).setOnes();
        ds.intercept_column = static_cast<int>(dim - 1);
    }
    ds.column_stats.assign(static_cast<std::size_t>(dim), ColumnStats{0.0, 1.0});
    return ds;
}

namespace {

// Mean and sample std (N-1 denominator) of one column.
ColumnStats column_moments(const Eigen::VectorXd& col) {
    ColumnStats st;
    st.mean = col.mean();
    if (col.size() < 2) {
        st.std = 0.0;
        return st;
    }
    const double ss = (col.array() - st.mean).square().sum();
    st.std = std::sqrt(ss / static_cast<double>(col.size() - 1));
    return st;
}

// Compose "then standardize by (m2, s2)" onto an existing transform
// x_cur = (x_orig - m1)/s1, keeping stats expressed against the original data.
ColumnStats compose(const ColumnStats& prev, const ColumnStats& next) {
    ColumnStats out;
    const double s1 = prev.std == 0.0 ? 1.0 : prev.std;
    out.mean = prev.mean + s1 * next.mean;
    out.std = next.std == 0.0 ? 0.0 : s1 * next.std;
    return out;
}

void standardize_column(Eigen::Ref<Eigen::VectorXd> col, const ColumnStats& st) {
    col.array() -= st.mean;
    if (st.std != 0.0) {
        col /= st.std;
    }
}

} // namespace

void standardize(Dataset& ds, bool standardize_target) {
    for (Eigen::Index c = 0; c < ds.feature_dim(); ++c) {
        if (static_cast<int>(c) == ds.intercept_column) {
            continue;
        }
        const ColumnStats st = column_moments(ds.features.col(c));
        standardize_column(ds.features.col(c), st);
        ds.column_stats[static_cast<std::size_t>(c)] =
            compose(ds.column_stats[static_cast<std::size_t>(c)], st);
    }
    if (standardize_target) {
        const ColumnStats st = column_moments(ds.targets);
        standardize_column(ds.targets, st);
        ds.target_stats = compose(ds.target_stats, st);
    }
}

void apply_standardization(Dataset& ds, const std::vector<ColumnStats>& feature_stats,
                           const ColumnStats& target_stats, bool standardize_target) {
    if (feature_stats.size() != static_cast<std::size_t>(ds.feature_dim())) {
        throw ConfigError("apply_standardization: stats dimension mismatch");
    }
    for (Eigen::Index c = 0; c < ds.feature_dim(); ++c) {
        if (static_cast<int>(c) == ds.intercept_column) {
            continue;
        }
        standardize_column(ds.features.col(c), feature_stats[static_cast<std::size_t>(c)]);
    }
    ds.column_stats = feature_stats;
    if (standardize_target) {
        standardize_column(ds.targets, target_stats);
        ds.target_stats = target_stats;
    }
}

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec) {
    if (spec.train_fraction <= 0.0 || spec.train_fraction > 1.0) {
        throw ConfigError("split: train_fraction must be in (0, 1]");
    }
    const Eigen::Index n = ds.size();
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(spec.seed);
    std::shuffle(perm.begin(), perm.end(), rng);

    const Eigen::Index n_train = static_cast<Eigen::Index>(
        std::ceil(spec.train_fraction * static_cast<double>(n)));

    auto take = [&](Eigen::Index begin, Eigen::Index count, const char* tag) {
        Dataset out;
        out.features.resize(count, ds.feature_dim());
        out.targets.resize(count);
        for (Eigen::Index i = 0; i < count; ++i) {
            out.features.row(i) = ds.features.row(perm[static_cast<std::size_t>(begin + i)]);
            out.targets[i] = ds.targets[perm[static_cast<std::size_t>(begin + i)]];
        }
        out.column_stats = ds.column_stats;
        out.target_stats = ds.target_stats;
        out.name = ds.name + "/" + tag;
        out.intercept_column = ds.intercept_column;
        return out;
    };
    return {take(0, n_train, "train"), take(n_train, n - n_train, "test")};
}

} // namespace eubo
