#include "spmvlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "spmvlab/rng.hpp"

namespace spmvlab {

using ordered_json = nlohmann::ordered_json;

double RegressionTree::predict(const std::vector<double>& row) const {
    int node = 0;
    while (!nodes[static_cast<std::size_t>(node)].is_leaf()) {
        const TreeNode& n = nodes[static_cast<std::size_t>(node)];
        node = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(node)].value;
}

std::vector<double> RegressionTree::importance() const {
    double total = 0.0;
    for (double v : importance_raw) total += v;
    std::vector<double> out(importance_raw.size(), 0.0);
    if (total > 0.0)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = importance_raw[i] / total;
    return out;
}

double Forest::predict_row(const std::vector<double>& row) const {
    if (trees.empty()) throw ValidationError("model has no trees");
    double sum = 0.0;
    for (const RegressionTree& t : trees) sum += t.predict(row);
    return sum / static_cast<double>(trees.size());
}

std::vector<double> Forest::importance() const {
    std::vector<double> out(feature_names.size(), 0.0);
    for (const RegressionTree& t : trees) {
        const std::vector<double> imp = t.importance();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += imp[i];
    }
    for (double& v : out) v /= static_cast<double>(trees.size());
    return out;
}

Dataset build_dataset(const std::vector<Sample>& samples) {
    if (samples.empty()) throw ValidationError("no samples");

    Dataset ds;
    for (const std::string& name : FeatureVector::names()) {
        std::size_t present = 0;
        for (const Sample& s : samples)
            if (s.features.get(name).has_value()) ++present;
        if (present == 0) continue;  // all-absent columns are dropped
        if (present != samples.size())
            throw ValidationError("feature column '" + name + "' is present in only " +
                                  std::to_string(present) + " of " +
                                  std::to_string(samples.size()) + " samples");
        ds.names.push_back(name);
    }

    ds.rows.reserve(samples.size());
    ds.labels.reserve(samples.size());
    for (const Sample& s : samples) {
        std::vector<double> row;
        row.reserve(ds.names.size());
        for (const std::string& name : ds.names) row.push_back(*s.features.get(name));
        ds.rows.push_back(std::move(row));
        ds.labels.push_back(s.speedup);
    }
    return ds;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> train_test_split(
    std::size_t n, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction <= 1.0))
        throw ValidationError("train fraction must lie in (0, 1]");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng = Rng::stream(seed, 0x5917ull);
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);

    std::size_t n_train = static_cast<std::size_t>(std::llround(train_fraction * n));
    n_train = std::max<std::size_t>(1, std::min(n_train, n));
    return {std::vector<std::size_t>(order.begin(), order.begin() + n_train),
            std::vector<std::size_t>(order.begin() + n_train, order.end())};
}

namespace {

struct TreeBuilder {
    const Dataset& ds;
    const TrainConfig& cfg;
    RegressionTree tree;

    // Scratch: (value, label) pairs re-sorted per candidate feature.
    std::vector<std::pair<double, double>> column;

    explicit TreeBuilder(const Dataset& d, const TrainConfig& c) : ds(d), cfg(c) {
        tree.importance_raw.assign(ds.names.size(), 0.0);
    }

    int build(std::vector<std::size_t>& idx, std::size_t begin, std::size_t end, int depth) {
        const std::size_t n = end - begin;
        double sum = 0.0, lo = ds.labels[idx[begin]], hi = lo;
        for (std::size_t i = begin; i < end; ++i) {
            const double y = ds.labels[idx[i]];
            sum += y;
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        const double node_mean = sum / static_cast<double>(n);

        const auto make_leaf = [&] {
            const int id = static_cast<int>(tree.nodes.size());
            TreeNode leaf;
            leaf.value = node_mean;
            leaf.count = static_cast<std::int64_t>(n);
            tree.nodes.push_back(leaf);
            return id;
        };

        if (depth >= cfg.max_depth || n < 2 * static_cast<std::size_t>(cfg.min_samples_leaf) ||
            lo == hi)
            return make_leaf();

        double parent_sse = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double d = ds.labels[idx[i]] - node_mean;
            parent_sse += d * d;
        }

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_decrease = 0.0;
        for (std::size_t f = 0; f < ds.names.size(); ++f) {
            column.clear();
            for (std::size_t i = begin; i < end; ++i)
                column.emplace_back(ds.rows[idx[i]][f], ds.labels[idx[i]]);
            std::sort(column.begin(), column.end());

            double left_sum = 0.0, left_sq = 0.0;
            double total_sq = 0.0;
            for (const auto& [x, y] : column) total_sq += y * y;
            const double total_sum = sum;

            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                left_sum += column[i].second;
                left_sq += column[i].second * column[i].second;
                if (column[i].first == column[i + 1].first) continue;  // not a boundary
                const std::size_t nl = i + 1;
                const std::size_t nr = n - nl;
                if (nl < static_cast<std::size_t>(cfg.min_samples_leaf) ||
                    nr < static_cast<std::size_t>(cfg.min_samples_leaf))
                    continue;
                const double right_sum = total_sum - left_sum;
                const double right_sq = total_sq - left_sq;
                const double sse_l = left_sq - left_sum * left_sum / static_cast<double>(nl);
                const double sse_r = right_sq - right_sum * right_sum / static_cast<double>(nr);
                const double decrease = parent_sse - sse_l - sse_r;
                // Strict improvement keeps the first (lowest feature id,
                // lowest threshold) candidate on ties.
                if (decrease > best_decrease) {
                    best_decrease = decrease;
                    best_feature = static_cast<int>(f);
                    best_threshold = 0.5 * (column[i].first + column[i + 1].first);
                }
            }
        }

        if (best_feature < 0) return make_leaf();

        const auto mid = std::stable_partition(
            idx.begin() + static_cast<std::ptrdiff_t>(begin),
            idx.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t i) {
                return ds.rows[i][static_cast<std::size_t>(best_feature)] <= best_threshold;
            });
        const std::size_t split =
            static_cast<std::size_t>(mid - idx.begin());

        tree.importance_raw[static_cast<std::size_t>(best_feature)] += best_decrease;

        const int id = static_cast<int>(tree.nodes.size());
        TreeNode node;
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.count = static_cast<std::int64_t>(n);
        tree.nodes.push_back(node);
        const int left = build(idx, begin, split, depth + 1);
        const int right = build(idx, split, end, depth + 1);
        tree.nodes[static_cast<std::size_t>(id)].left = left;
        tree.nodes[static_cast<std::size_t>(id)].right = right;
        return id;
    }
};

RegressionTree fit_tree(const Dataset& ds, const TrainConfig& cfg,
                        std::vector<std::size_t> idx) {
    TreeBuilder builder(ds, cfg);
    builder.build(idx, 0, idx.size(), 0);
    return std::move(builder.tree);
}

} // namespace

Forest fit(const std::vector<Sample>& samples, const TrainConfig& cfg) {
    if (cfg.max_depth < 1) throw ValidationError("max_depth must be at least 1");
    if (cfg.min_samples_leaf < 1) throw ValidationError("min_samples_leaf must be at least 1");
    if (cfg.n_trees < 1) throw ValidationError("n_trees must be at least 1");
    if (samples.size() < 2 * static_cast<std::size_t>(cfg.min_samples_leaf))
        throw ValidationError("need at least 2*min_samples_leaf samples");

    const Dataset ds = build_dataset(samples);
    auto [train_idx, test_idx] = train_test_split(samples.size(), cfg.train_fraction, cfg.seed);

    Forest model;
    model.feature_names = ds.names;
    model.config = cfg;

    if (cfg.n_trees == 1) {
        model.bootstrap_seeds.push_back(cfg.seed);
        model.trees.push_back(fit_tree(ds, cfg, train_idx));
    } else {
        for (int t = 0; t < cfg.n_trees; ++t) {
            Rng rng = Rng::stream(cfg.seed, 0xB0075ull + static_cast<std::uint64_t>(t));
            model.bootstrap_seeds.push_back(rng.next());
            std::vector<std::size_t> idx(train_idx.size());
            for (std::size_t& i : idx)
                i = train_idx[static_cast<std::size_t>(rng.below(train_idx.size()))];
            model.trees.push_back(fit_tree(ds, cfg, std::move(idx)));
        }
    }

    model.holdout.n_train = static_cast<std::int64_t>(train_idx.size());
    model.holdout.n_test = static_cast<std::int64_t>(test_idx.size());
    if (!test_idx.empty()) {
        double abs_err = 0.0, mean_y = 0.0;
        for (std::size_t i : test_idx) mean_y += ds.labels[i];
        mean_y /= static_cast<double>(test_idx.size());
        double ss_res = 0.0, ss_tot = 0.0;
        for (std::size_t i : test_idx) {
            const double pred = model.predict_row(ds.rows[i]);
            abs_err += std::fabs(pred - ds.labels[i]);
            ss_res += (pred - ds.labels[i]) * (pred - ds.labels[i]);
            ss_tot += (ds.labels[i] - mean_y) * (ds.labels[i] - mean_y);
        }
        model.holdout.mae = abs_err / static_cast<double>(test_idx.size());
        model.holdout.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot
                                        : (ss_res == 0.0 ? 1.0 : 0.0);
    }
    return model;
}

double predict(const Forest& model, const FeatureVector& fv) {
    std::vector<double> row;
    row.reserve(model.feature_names.size());
    for (const std::string& name : model.feature_names) {
        const std::optional<double> v = fv.get(name);
        if (!v) throw ValidationError("feature vector lacks '" + name +
                                      "', which the model was trained on");
        row.push_back(*v);
    }
    return model.predict_row(row);
}

std::vector<std::pair<std::string, double>> feature_importance(const Forest& model) {
    const std::vector<double> imp = model.importance();
    std::vector<std::pair<std::string, double>> ranked;
    for (std::size_t i = 0; i < imp.size(); ++i)
        if (imp[i] > 0.0) ranked.emplace_back(model.feature_names[i], imp[i]);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranked;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void render_node(const Forest& model, const RegressionTree& tree, int node, int depth,
                 std::string& out) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    if (n.is_leaf()) {
        out += "speedup=" + fmt(n.value) + " (n=" + std::to_string(n.count) + ")\n";
        return;
    }
    out += model.feature_names[static_cast<std::size_t>(n.feature)] + " <= " +
           fmt(n.threshold) + "\n";
    render_node(model, tree, n.left, depth + 1, out);
    render_node(model, tree, n.right, depth + 1, out);
}

} // namespace

std::string export_tree(const Forest& model, int tree_index) {
    if (tree_index < 0 || static_cast<std::size_t>(tree_index) >= model.trees.size())
        throw ValidationError("tree index " + std::to_string(tree_index) + " out of range");
    std::string out;
    render_node(model, model.trees[static_cast<std::size_t>(tree_index)], 0, 0, out);
    return out;
}

std::string forest_to_json(const Forest& model) {
    ordered_json j;
    j["schema"] = "spmvlab-model-v1";
    j["config"] = {{"train_fraction", model.config.train_fraction},
                   {"max_depth", model.config.max_depth},
                   {"min_samples_leaf", model.config.min_samples_leaf},
                   {"n_trees", model.config.n_trees},
                   {"seed", model.config.seed}};
    j["features"] = model.feature_names;
    j["holdout"] = {{"n_train", model.holdout.n_train},
                    {"n_test", model.holdout.n_test},
                    {"mae", model.holdout.mae},
                    {"r2", model.holdout.r2}};
    j["bootstrap_seeds"] = model.bootstrap_seeds;
    j["trees"] = ordered_json::array();
    for (const RegressionTree& tree : model.trees) {
        ordered_json jt;
        jt["importance"] = tree.importance_raw;
        jt["nodes"] = ordered_json::array();
        for (const TreeNode& n : tree.nodes) {
            ordered_json jn;
            if (n.is_leaf()) {
                jn["value"] = n.value;
                jn["n"] = n.count;
            } else {
                jn["feature"] = n.feature;
                jn["threshold"] = n.threshold;
                jn["left"] = n.left;
                jn["right"] = n.right;
                jn["n"] = n.count;
            }
            jt["nodes"].push_back(jn);
        }
        j["trees"].push_back(jt);
    }
    return j.dump(2) + "\n";
}

Forest forest_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    if (!j.contains("schema") || j["schema"] != "spmvlab-model-v1")
        throw ValidationError("unsupported model schema");

    Forest model;
    model.config.train_fraction = j["config"]["train_fraction"].get<double>();
    model.config.max_depth = j["config"]["max_depth"].get<int>();
    model.config.min_samples_leaf = j["config"]["min_samples_leaf"].get<int>();
    model.config.n_trees = j["config"]["n_trees"].get<int>();
    model.config.seed = j["config"]["seed"].get<std::uint64_t>();
    model.feature_names = j["features"].get<std::vector<std::string>>();
    model.holdout.n_train = j["holdout"]["n_train"].get<std::int64_t>();
    model.holdout.n_test = j["holdout"]["n_test"].get<std::int64_t>();
    model.holdout.mae = j["holdout"]["mae"].get<double>();
    model.holdout.r2 = j["holdout"]["r2"].get<double>();
    model.bootstrap_seeds = j["bootstrap_seeds"].get<std::vector<std::uint64_t>>();

    for (const ordered_json& jt : j["trees"]) {
        RegressionTree tree;
        tree.importance_raw = jt["importance"].get<std::vector<double>>();
        for (const ordered_json& jn : jt["nodes"]) {
            TreeNode n;
            if (jn.contains("feature")) {
                n.feature = jn["feature"].get<int>();
                n.threshold = jn["threshold"].get<double>();
                n.left = jn["left"].get<int>();
                n.right = jn["right"].get<int>();
            } else {
                n.value = jn["value"].get<double>();
            }
            n.count = jn["n"].get<std::int64_t>();
            tree.nodes.push_back(n);
        }
        if (tree.nodes.empty()) throw ValidationError("model tree has no nodes");
        model.trees.push_back(std::move(tree));
    }
    if (model.trees.empty()) throw ValidationError("model has no trees");
    return model;
}

void save_forest(const Forest& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path);
    out << forest_to_json(model);
    if (!out) throw IoError("write failed: " + path);
}

Forest load_forest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return forest_from_json(buf.str());
}

} // namespace spmvlab
