#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eubo/data/dataset.hpp"
#include "eubo/data/minibatch.hpp"
#include "eubo/errors.hpp"
#include "eubo/util/kv.hpp"

using namespace eubo;

namespace {

const std::string kRoot = EUBO_SOURCE_DIR;

// Writes `text` to a throwaway file and returns its path.
std::string temp_file(const std::string& tag, const std::string& text) {
    const std::string path = "/tmp/eubo_data_test_" + tag;
    std::ofstream out(path);
    out << text;
    return path;
}

DatasetSchema iris_schema() {
    return DatasetSchema::load(kRoot + "/data/iris.schema");
}

} // namespace

TEST_CASE("kv parsing: comments, trimming, typed getters, fallbacks") {
    const KvFile kv = KvFile::parse_string("# leading comment\n"
                                           "name = run one   \n"
                                           "\n"
                                           "count = 42 # inline comment\n"
                                           "rate=0.25\n"
                                           "flag = true\n",
                                           "inline.kv");
    CHECK(kv.has("name"));
    CHECK(kv.get_string("name") == "run one");
    CHECK(kv.get_int("count") == 42);
    CHECK(kv.get_double("rate") == doctest::Approx(0.25));
    CHECK(kv.get_bool("flag"));
    CHECK(kv.get_string("missing", "dflt") == "dflt");
    CHECK(kv.get_double("missing", 1.5) == doctest::Approx(1.5));
    CHECK(kv.get_int("missing", 7) == 7);
    CHECK_FALSE(kv.get_bool("missing", false));
    CHECK(kv.keys() == std::vector<std::string>{"name", "count", "rate", "flag"});

    CHECK_THROWS_AS(kv.get_string("missing"), ConfigError);
    CHECK_THROWS_AS(kv.get_double("name"), ConfigError);
    CHECK_THROWS_AS(kv.get_int("rate"), ConfigError);
    CHECK_THROWS_AS(kv.get_bool("count"), ConfigError);
}

TEST_CASE("kv parsing rejects duplicates/garbage with file:line context") {
    CHECK_THROWS_WITH_AS(KvFile::parse_string("a = 1\na = 2\n", "dup.kv"),
                         doctest::Contains("dup.kv:2"), ConfigError);
    CHECK_THROWS_WITH_AS(KvFile::parse_string("just some words\n", "bad.kv"),
                         doctest::Contains("bad.kv:1"), ConfigError);
    CHECK_THROWS_WITH_AS(KvFile::parse_string(" = 3\n", "nokey.kv"),
                         doctest::Contains("nokey.kv:1"), ConfigError);
    CHECK_THROWS_AS(KvFile::parse_file("/nonexistent/nowhere.kv"), ConfigError);

    const KvFile kv = KvFile::parse_string("a = 1\nb = 2\n", "known.kv");
    CHECK_NOTHROW(kv.require_known_keys({"a", "b", "c"}));
    CHECK_THROWS_WITH_AS(kv.require_known_keys({"a"}), doctest::Contains("unknown key 'b'"),
                         ConfigError);
}

TEST_CASE("list and label-map helpers") {
    CHECK(split_list("a, b ,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_list("").empty());
    CHECK(parse_double_list("1, 2.5, -3e2") == std::vector<double>{1.0, 2.5, -300.0});
    CHECK_THROWS_AS(parse_double_list("1, soup"), ConfigError);

    const auto m = parse_label_map("setosa:1, versicolor:0");
    CHECK(m.size() == 2);
    CHECK(m.at("setosa") == doctest::Approx(1.0));
    CHECK(m.at("versicolor") == doctest::Approx(0.0));
    CHECK_THROWS_AS(parse_label_map("setosa"), ConfigError);
    CHECK_THROWS_AS(parse_label_map("a:1, a:0"), ConfigError);
}

TEST_CASE("iris schema and CSV load") {
    const DatasetSchema schema = iris_schema();
    CHECK(schema.task == DatasetSchema::Task::CLASSIFICATION);
    CHECK(schema.has_header);
    CHECK(schema.target == "species");
    CHECK(schema.label_map.size() == 3);
    CHECK(schema.add_intercept);
    CHECK(schema.standardize);

    const Dataset ds = load_csv(kRoot + "/data/iris.csv", schema, "iris");
    CHECK(ds.size() == 150);
    CHECK(ds.feature_dim() == 5); // 4 measurements + intercept
    CHECK(ds.intercept_column == 4);
    CHECK((ds.features.col(4).array() == 1.0).all());
    CHECK(ds.targets.sum() == doctest::Approx(50.0)); // setosa maps to 1
    CHECK((ds.targets.array() == 0.0).count() == 100);
    // spot value from the first data row
    CHECK(ds.features(0, 0) == doctest::Approx(5.1));
}

TEST_CASE("CSV rejection: NaN, ragged rows, garbage cells, unknown labels") {
    DatasetSchema schema;
    schema.task = DatasetSchema::Task::REGRESSION;
    schema.has_header = true;
    schema.target = "y";

    const std::string nan_csv = temp_file("nan.csv", "x,y\n1.0,2.0\nNaN,3.0\n");
    CHECK_THROWS_WITH_AS(load_csv(nan_csv, schema), doctest::Contains("no imputation"),
                         IngestError);

    const std::string ragged = temp_file("ragged.csv", "x,y\n1.0,2.0\n1.0\n");
    CHECK_THROWS_WITH_AS(load_csv(ragged, schema), doctest::Contains("row 3"), IngestError);

    const std::string garbage = temp_file("garbage.csv", "x,y\n1.0,2.0\nsoup,3.0\n");
    CHECK_THROWS_WITH_AS(load_csv(garbage, schema),
                         doctest::Contains("column 'x'"), IngestError);

    CHECK_THROWS_AS(load_csv("/nonexistent.csv", schema), IngestError);
    CHECK_THROWS_WITH_AS(load_csv(temp_file("empty.csv", ""), schema),
                         doctest::Contains("empty"), IngestError);

    DatasetSchema cls;
    cls.task = DatasetSchema::Task::CLASSIFICATION;
    cls.has_header = true;
    cls.target = "y";
    cls.label_map = {{"yes", 1.0}, {"no", 0.0}};
    const std::string labels = temp_file("label.csv", "x,y\n1.0,yes\n2.0,maybe\n");
    CHECK_THROWS_WITH_AS(load_csv(labels, cls), doctest::Contains("unknown label 'maybe'"),
                         IngestError);

    const std::string missing_col = temp_file("col.csv", "x,z\n1.0,2.0\n");
    CHECK_THROWS_WITH_AS(load_csv(missing_col, schema),
                         doctest::Contains("target column 'y'"), IngestError);
}

namespace {

Dataset toy_regression() {
    Dataset ds;
    ds.features.resize(4, 3);
    // col 0 varies, col 1 constant, col 2 intercept
    ds.features << 1.0, 5.0, 1.0,
                   2.0, 5.0, 1.0,
                   3.0, 5.0, 1.0,
                   6.0, 5.0, 1.0;
    ds.targets.resize(4);
    ds.targets << 10.0, 20.0, 30.0, 60.0;
    ds.column_stats.assign(3, ColumnStats{});
    ds.intercept_column = 2;
    ds.name = "toy";
    return ds;
}

} // namespace

TEST_CASE("standardize: sample std, intercept and constant-column handling") {
    Dataset ds = toy_regression();
    const Eigen::MatrixXd original = ds.features;
    standardize(ds, true);

    // col 0: mean 3, sample std sqrt(14/3)
    const double std0 = std::sqrt((4.0 + 1.0 + 0.0 + 9.0) / 3.0);
    CHECK(ds.column_stats[0].mean == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(ds.column_stats[0].std == doctest::Approx(std0).epsilon(1e-14));
    CHECK(ds.features.col(0).mean() == doctest::Approx(0.0).epsilon(1e-14));
    const double var0 =
        ds.features.col(0).squaredNorm() / 3.0; // mean is 0, N-1 denominator
    CHECK(var0 == doctest::Approx(1.0).epsilon(1e-13));

    // col 1 constant: centered only, std recorded as 0
    CHECK(ds.column_stats[1].std == doctest::Approx(0.0));
    CHECK((ds.features.col(1).array() == 0.0).all());

    // intercept untouched
    CHECK((ds.features.col(2).array() == 1.0).all());
    CHECK(ds.column_stats[2].mean == doctest::Approx(0.0));
    CHECK(ds.column_stats[2].std == doctest::Approx(1.0));

    // target standardized too
    CHECK(ds.target_stats.mean == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(ds.targets.mean() == doctest::Approx(0.0).epsilon(1e-14));

    // stats invert the transform
    for (int r = 0; r < 4; ++r) {
        CHECK(ds.features(r, 0) * ds.column_stats[0].std + ds.column_stats[0].mean ==
              doctest::Approx(original(r, 0)).epsilon(1e-13));
    }

    // idempotent
    const Eigen::MatrixXd once = ds.features;
    const Eigen::VectorXd once_t = ds.targets;
    standardize(ds, true);
    CHECK((ds.features - once).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((ds.targets - once_t).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("apply_standardization maps a test split with train stats") {
    Dataset train = toy_regression();
    standardize(train, true);

    Dataset test = toy_regression();
    test.features.row(0) << 4.0, 5.0, 1.0; // unseen point
    test.targets[0] = 40.0;
    apply_standardization(test, train.column_stats, train.target_stats, true);
    const double std0 = std::sqrt(14.0 / 3.0);
    CHECK(test.features(0, 0) == doctest::Approx((4.0 - 3.0) / std0).epsilon(1e-13));
    CHECK(test.targets[0] ==
          doctest::Approx((40.0 - train.target_stats.mean) / train.target_stats.std)
              .epsilon(1e-13));

    std::vector<ColumnStats> wrong(2);
    CHECK_THROWS_AS(apply_standardization(test, wrong, ColumnStats{}, false), ConfigError);
}

TEST_CASE("split: sizes, disjointness, determinism, seed sensitivity") {
    Dataset ds;
    ds.features.resize(150, 1);
    for (int i = 0; i < 150; ++i) {
        ds.features(i, 0) = i; // row identity travels with the split
    }
    ds.targets = Eigen::VectorXd::Zero(150);
    ds.column_stats.assign(1, ColumnStats{});
    ds.name = "ids";

    const auto [train, test] = split(ds, {0.9, 42});
    CHECK(train.size() == 135);
    CHECK(test.size() == 15);

    std::set<int> seen;
    for (int i = 0; i < train.size(); ++i) {
        seen.insert(static_cast<int>(train.features(i, 0)));
    }
    for (int i = 0; i < test.size(); ++i) {
        const int id = static_cast<int>(test.features(i, 0));
        CHECK(seen.count(id) == 0); // disjoint
        seen.insert(id);
    }
    CHECK(seen.size() == 150); // union complete

    const auto [train2, test2] = split(ds, {0.9, 42});
    CHECK((train.features - train2.features).cwiseAbs().maxCoeff() == 0.0);
    CHECK((test.features - test2.features).cwiseAbs().maxCoeff() == 0.0);

    std::set<std::set<int>> distinct_tests;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto [tr, te] = split(ds, {0.9, s});
        std::set<int> ids;
        for (int i = 0; i < te.size(); ++i) {
            ids.insert(static_cast<int>(te.features(i, 0)));
        }
        distinct_tests.insert(ids);
    }
    CHECK(distinct_tests.size() >= 19);

    CHECK_THROWS_AS(split(ds, {0.0, 1}), ConfigError);
    CHECK_THROWS_AS(split(ds, {1.5, 1}), ConfigError);
}

TEST_CASE("minibatch sampler: batch sizes and epoch boundaries") {
    MinibatchSampler sampler(135, 100, 9);
    CHECK(sampler.batches_per_epoch() == 2);
    CHECK(sampler.at_epoch_start());
    const std::vector<int> b1 = sampler.next_batch();
    CHECK(b1.size() == 100);
    CHECK_FALSE(sampler.at_epoch_start());
    const std::vector<int> b2 = sampler.next_batch();
    CHECK(b2.size() == 35); // epoch remainder
    CHECK(sampler.at_epoch_start());

    CHECK_THROWS_AS(MinibatchSampler(0, 10, 1), ConfigError);
    CHECK_THROWS_AS(MinibatchSampler(10, 0, 1), ConfigError);
}

TEST_CASE("minibatch sampler covers every index exactly once per epoch, 1000 cases") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> n_dist(1, 64);
    for (int c = 0; c < 1000; ++c) {
        const int n = n_dist(rng);
        const int s = std::uniform_int_distribution<int>(1, n + 3)(rng);
        MinibatchSampler sampler(n, s, 1000 + static_cast<std::uint64_t>(c));
        std::vector<int> counts(static_cast<std::size_t>(n), 0);
        int drawn = 0;
        while (drawn < n) {
            for (int idx : sampler.next_batch()) {
                REQUIRE(idx >= 0);
                REQUIRE(idx < n);
                ++counts[static_cast<std::size_t>(idx)];
                ++drawn;
            }
        }
        for (int k : counts) {
            CHECK(k == 1);
        }
        CHECK(sampler.at_epoch_start());
    }
}

TEST_CASE("minibatch sampler reshuffles between epochs") {
    MinibatchSampler sampler(64, 64, 5);
    const std::vector<int> epoch1 = sampler.next_batch();
    const std::vector<int> epoch2 = sampler.next_batch();
    CHECK(epoch1 != epoch2);
    // same content, different order
    std::vector<int> a = epoch1, b = epoch2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
}
