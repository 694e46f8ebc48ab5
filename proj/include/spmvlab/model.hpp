#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spmvlab/features.hpp"

namespace spmvlab {

// Flat node array with explicit child indices; feature < 0 marks a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;    // leaf prediction = mean of its training subset
    std::int64_t count = 0;  // leaf training-sample count

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;
    // Total variance (SSE) reduction credited to each feature by this
    // tree's splits; unnormalized.
    std::vector<double> importance_raw;

    double predict(const std::vector<double>& row) const;
    // Normalized to sum 1 when any split exists, all zeros otherwise.
    std::vector<double> importance() const;
};

struct TrainConfig {
    double train_fraction = 0.90;
    int max_depth = 6;
    int min_samples_leaf = 5;
    int n_trees = 50;
    std::uint64_t seed = 0;
};

struct HoldoutReport {
    std::int64_t n_train = 0;
    std::int64_t n_test = 0;
    double mae = 0.0;
    double r2 = 0.0;
};

struct Forest {
    std::vector<std::string> feature_names;  // column order of the trees
    std::vector<RegressionTree> trees;
    TrainConfig config;
    std::vector<std::uint64_t> bootstrap_seeds;
    HoldoutReport holdout;

    double predict_row(const std::vector<double>& row) const;  // mean over trees
    // Mean of the trees' normalized importances.
    std::vector<double> importance() const;
};

// Numeric training view of a sample list. Feature columns absent from
// every sample are dropped; a column absent from only some samples is an
// error naming the column.
struct Dataset {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    std::vector<double> labels;
};

Dataset build_dataset(const std::vector<Sample>& samples);

// Seeded shuffle split; returns (train indices, holdout indices).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> train_test_split(
    std::size_t n, double train_fraction, std::uint64_t seed);

// CART with variance-reduction splitting. At each node the (feature,
// threshold) pair maximizing the SSE decrease is chosen over midpoints of
// sorted distinct values; ties go to the lowest feature id, then the
// lowest threshold. Growth stops at max_depth, min_samples_leaf or zero
// label variance. With n_trees == 1 the single tree trains on the full
// training split; larger forests train each tree on a seeded bootstrap
// resample. The held-out fraction is scored for information only.
Forest fit(const std::vector<Sample>& samples, const TrainConfig& cfg);

// Routes by thresholds (<= goes left); forests average their trees.
// Throws when the vector lacks a feature the model was trained on.
double predict(const Forest& model, const FeatureVector& fv);

// (feature, weight) pairs with weight > 0, heaviest first; ties keep the
// model's column order. Empty for a model with no splits.
std::vector<std::pair<std::string, double>> feature_importance(const Forest& model);

// Deterministic indented rendering: internal nodes as
// "name <= threshold", leaves as "speedup=v (n=k)".
std::string export_tree(const Forest& model, int tree_index);

std::string forest_to_json(const Forest& model);
Forest forest_from_json(const std::string& text);
void save_forest(const Forest& model, const std::string& path);
Forest load_forest(const std::string& path);

} // namespace spmvlab
