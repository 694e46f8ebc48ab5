#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "spmvlab/model.hpp"
#include "spmvlab/rng.hpp"
#include "support/oracles.hpp"

using namespace spmvlab;
using namespace spmvlab::testing;

namespace {

Sample make_sample(double job_var, double speedup, Rng* noise = nullptr) {
    Sample s;
    s.matrix = "synthetic";
    s.features.job_var = job_var;
    s.features.n_rows = noise ? noise->uniform(100, 10000) : 1000.0;
    s.features.nnz_avg = noise ? noise->uniform(1, 50) : 4.0;
    s.features.nnz_var = noise ? noise->uniform(0, 20) : 1.0;
    s.features.L2_DCMR_change = noise ? noise->uniform(-0.01, 0.08) : 0.0;
    s.speedup = speedup;
    return s;
}

// Labels depend on job_var alone through a clean step.
std::vector<Sample> step_dataset(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Sample> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double jv = rng.uniform(0.25, 1.0);
        out.push_back(make_sample(jv, jv <= 0.45 ? 2.0 : 1.0, &rng));
    }
    return out;
}

} // namespace

TEST_CASE("constant labels give a single leaf and no importance") {
    std::vector<Sample> samples;
    Rng rng(1);
    for (int i = 0; i < 40; ++i) samples.push_back(make_sample(rng.uniform(), 1.5, &rng));
    TrainConfig cfg;
    cfg.n_trees = 1;
    cfg.train_fraction = 1.0;
    const Forest model = fit(samples, cfg);
    REQUIRE(model.trees.size() == 1);
    CHECK(model.trees[0].nodes.size() == 1);
    CHECK(predict(model, samples[7].features) == 1.5);
    CHECK(feature_importance(model).empty());
    for (const double w : model.trees[0].importance()) CHECK(w == 0.0);
}

TEST_CASE("step function: root splits on job_var with full importance") {
    const std::vector<Sample> samples = step_dataset(1000, 5);
    TrainConfig cfg;
    cfg.n_trees = 1;
    cfg.seed = 5;
    const Forest model = fit(samples, cfg);

    const RegressionTree& tree = model.trees[0];
    REQUIRE(!tree.nodes.empty());
    const TreeNode& root = tree.nodes[0];
    REQUIRE_FALSE(root.is_leaf());
    CHECK(model.feature_names[static_cast<std::size_t>(root.feature)] == "job_var");

    // The threshold separates the training values adjacent to the step.
    const auto [train_idx, test_idx] = train_test_split(samples.size(), 0.9, 5);
    double below = 0.0, above = 2.0;
    for (const std::size_t i : train_idx) {
        const double jv = samples[i].features.job_var;
        if (jv <= 0.45) below = std::max(below, jv);
        if (jv > 0.45) above = std::min(above, jv);
    }
    CHECK(root.threshold > below - 1e-15);
    CHECK(root.threshold < above + 1e-15);

    const auto ranked = feature_importance(model);
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0].first == "job_var");
    CHECK(ranked[0].second == 1.0);

    // Exhaustive-scan oracle agrees with the fitted root split.
    const Dataset ds = build_dataset(samples);
    std::vector<std::vector<double>> rows;
    std::vector<double> labels;
    for (const std::size_t i : train_idx) {
        rows.push_back(ds.rows[i]);
        labels.push_back(ds.labels[i]);
    }
    const OracleSplit oracle = best_split_oracle(rows, labels, cfg.min_samples_leaf);
    CHECK(ds.names[static_cast<std::size_t>(oracle.feature)] == "job_var");
    CHECK(oracle.threshold == doctest::Approx(root.threshold).epsilon(1e-12));

    // Routing follows the fitted split.
    FeatureVector probe = samples[0].features;
    probe.job_var = 0.1;
    CHECK(predict(model, probe) == 2.0);
    probe.job_var = 0.9;
    CHECK(predict(model, probe) == 1.0);
}

TEST_CASE("fitted root split equals the exhaustive oracle on random data") {
    Rng rng(17);
    for (int it = 0; it < 20; ++it) {
        const std::size_t n = 20 + rng.below(80);
        std::vector<Sample> samples;
        for (std::size_t i = 0; i < n; ++i) {
            Sample s = make_sample(rng.uniform(), 0.0, &rng);
            s.speedup =
                0.5 + s.features.job_var + 0.3 * s.features.nnz_var + rng.uniform(0.0, 0.2);
            samples.push_back(s);
        }
        TrainConfig cfg;
        cfg.n_trees = 1;
        cfg.train_fraction = 1.0;
        cfg.max_depth = 1;
        cfg.min_samples_leaf = 3;
        const Forest model = fit(samples, cfg);
        const TreeNode& root = model.trees[0].nodes[0];

        const Dataset ds = build_dataset(samples);
        const OracleSplit oracle = best_split_oracle(ds.rows, ds.labels, cfg.min_samples_leaf);
        if (oracle.feature < 0) {
            CHECK(root.is_leaf());
            continue;
        }
        REQUIRE_FALSE(root.is_leaf());
        CHECK(root.feature == oracle.feature);
        CHECK(root.threshold == doctest::Approx(oracle.threshold).epsilon(1e-12));
    }
}

TEST_CASE("two-feature linear target splits on the stronger feature") {
    Rng rng(19);
    std::vector<Sample> samples;
    for (int i = 0; i < 50; ++i) {
        Sample s;
        s.matrix = "lin";
        s.features.job_var = rng.uniform();
        s.features.nnz_var = rng.uniform();
        s.speedup = 1.0 + 3.0 * s.features.job_var + 0.1 * s.features.nnz_var;
        samples.push_back(s);
    }
    TrainConfig cfg;
    cfg.n_trees = 1;
    cfg.train_fraction = 1.0;
    cfg.max_depth = 1;
    cfg.min_samples_leaf = 5;
    const Forest model = fit(samples, cfg);
    const Dataset ds = build_dataset(samples);
    const OracleSplit oracle = best_split_oracle(ds.rows, ds.labels, 5);
    const TreeNode& root = model.trees[0].nodes[0];
    CHECK(root.feature == oracle.feature);
    CHECK(ds.names[static_cast<std::size_t>(root.feature)] == "job_var");
}

TEST_CASE("fully grown tree memorizes unique training rows") {
    Rng rng(23);
    std::vector<Sample> samples;
    std::set<double> seen;
    for (int i = 0; i < 30; ++i) {
        double jv = rng.uniform();
        while (seen.count(jv)) jv = rng.uniform();
        seen.insert(jv);
        samples.push_back(make_sample(jv, 1.0 + rng.uniform(), nullptr));
    }
    TrainConfig cfg;
    cfg.n_trees = 1;
    cfg.train_fraction = 1.0;
    cfg.min_samples_leaf = 1;
    cfg.max_depth = 64;
    const Forest model = fit(samples, cfg);
    for (const Sample& s : samples) CHECK(predict(model, s.features) == s.speedup);
}

TEST_CASE("missing features are reported at prediction time") {
    std::vector<Sample> samples;
    Rng rng(29);
    for (int i = 0; i < 30; ++i) {
        Sample s = make_sample(rng.uniform(), 1.0, &rng);
        s.features.TOT_INS = 100.0;
        s.features.TOT_CYC = 80.0;
        s.speedup = 1.0 + s.features.job_var;
        samples.push_back(s);
    }
    TrainConfig cfg;
    cfg.n_trees = 1;
    cfg.train_fraction = 1.0;
    const Forest model = fit(samples, cfg);
    FeatureVector incomplete = samples[0].features;
    incomplete.TOT_INS.reset();
    CHECK_THROWS_AS(predict(model, incomplete), ValidationError);
}

TEST_CASE("partially absent columns abort training with the column name") {
    std::vector<Sample> samples;
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        Sample s = make_sample(rng.uniform(), 1.0 + rng.uniform(), &rng);
        if (i == 7) s.features.TOT_INS = 5.0;  // present in just one sample
        samples.push_back(s);
    }
    try {
        fit(samples, TrainConfig{});
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("TOT_INS") != std::string::npos);
    }
}

TEST_CASE("forest prediction stays inside its trees' range") {
    const std::vector<Sample> samples = step_dataset(300, 7);
    TrainConfig cfg;
    cfg.n_trees = 15;
    cfg.seed = 7;
    const Forest model = fit(samples, cfg);
    Rng rng(71);
    for (int it = 0; it < 200; ++it) {
        Sample probe = make_sample(rng.uniform(0.25, 1.0), 1.0, &rng);
        std::vector<double> row;
        for (const std::string& name : model.feature_names)
            row.push_back(*probe.features.get(name));
        double lo = 1e300, hi = -1e300;
        for (const RegressionTree& t : model.trees) {
            const double p = t.predict(row);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        const double p = model.predict_row(row);
        CHECK(p >= lo - 1e-12);
        CHECK(p <= hi + 1e-12);
    }
}

TEST_CASE("serialization is deterministic and round trips predictions") {
    const std::vector<Sample> samples = step_dataset(400, 11);
    TrainConfig cfg;
    cfg.n_trees = 9;
    cfg.seed = 11;
    const Forest a = fit(samples, cfg);
    const Forest b = fit(samples, cfg);
    CHECK(forest_to_json(a) == forest_to_json(b));

    const Forest back = forest_from_json(forest_to_json(a));
    Rng rng(111);
    for (int it = 0; it < 1000; ++it) {
        const Sample probe = make_sample(rng.uniform(0.2, 1.0), 1.0, &rng);
        CHECK(predict(a, probe.features) == predict(back, probe.features));
    }
}

TEST_CASE("holdout report is populated") {
    const std::vector<Sample> samples = step_dataset(500, 13);
    TrainConfig cfg;
    cfg.n_trees = 5;
    cfg.seed = 13;
    const Forest model = fit(samples, cfg);
    CHECK(model.holdout.n_train == 450);
    CHECK(model.holdout.n_test == 50);
    CHECK(model.holdout.mae >= 0.0);
    CHECK(model.holdout.mae < 0.2);  // the step target is easy
    CHECK(model.holdout.r2 > 0.8);
}

TEST_CASE("tree rendering is deterministic and shaped as documented") {
    const std::vector<Sample> samples = step_dataset(600, 3);
    TrainConfig cfg;
    cfg.n_trees = 1;
    cfg.seed = 3;
    const Forest model = fit(samples, cfg);
    const std::string text = export_tree(model, 0);
    CHECK(text.find("job_var <= ") == 0);
    // Step target: root plus two pure leaves, three lines.
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find("speedup=2 (n=") != std::string::npos);
    CHECK(text == export_tree(model, 0));
    CHECK_THROWS_AS(export_tree(model, 1), ValidationError);

    std::vector<Sample> constant;
    Rng rng(33);
    for (int i = 0; i < 20; ++i) constant.push_back(make_sample(rng.uniform(), 1.0, &rng));
    TrainConfig leaf_cfg;
    leaf_cfg.n_trees = 1;
    leaf_cfg.train_fraction = 1.0;
    const Forest leaf = fit(constant, leaf_cfg);
    const std::string leaf_text = export_tree(leaf, 0);
    CHECK(std::count(leaf_text.begin(), leaf_text.end(), '\n') == 1);
}

TEST_CASE("three drivers dominate the forest importance ranking") {
    // Labels driven by job_var, L2_DCMR_change and nnz_var; five other
    // features carry pure noise.
    Rng rng(41);
    std::vector<Sample> samples;
    for (int i = 0; i < 240; ++i) {
        Sample s;
        s.matrix = "gen";
        s.features.job_var = rng.uniform(0.25, 1.0);
        s.features.L2_DCMR_change = rng.uniform(-0.01, 0.1);
        s.features.nnz_var = rng.uniform(0.0, 50.0);
        s.features.n_rows = rng.uniform(100, 100000);
        s.features.nnz_max = rng.uniform(1, 1000);
        s.features.nnz_avg = rng.uniform(1, 100);
        s.features.L1_DCMR = rng.uniform(0, 1);
        s.features.L2_DCMR = rng.uniform(0, 1);
        s.speedup = std::max(0.05, 3.2 - 1.8 * s.features.job_var -
                                       8.0 * s.features.L2_DCMR_change -
                                       0.02 * s.features.nnz_var + rng.normal(0.0, 0.05));
        samples.push_back(s);
    }
    TrainConfig cfg;
    cfg.seed = 41;
    const Forest model = fit(samples, cfg);
    const auto ranked = feature_importance(model);
    REQUIRE(ranked.size() >= 3);
    std::set<std::string> top3 = {ranked[0].first, ranked[1].first, ranked[2].first};
    CHECK(top3.count("job_var") == 1);
    CHECK(top3.count("L2_DCMR_change") == 1);
    CHECK(top3.count("nnz_var") == 1);
}
