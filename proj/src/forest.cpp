#include "copd/forest.hpp"

#include "copd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace copd {

double gini_impurity(std::size_t count0, std::size_t count1) {
    std::size_t total = count0 + count1;
    if (total == 0) throw NumericError("gini of empty node");
    double p0 = static_cast<double>(count0) / static_cast<double>(total);
    double p1 = static_cast<double>(count1) / static_cast<double>(total);
    return 1.0 - (p0 * p0 + p1 * p1);
}

std::pair<double, double> DecisionTree::predict_row(const double* row) const {
    std::size_t idx = 0;
    while (!nodes[idx].is_leaf()) {
        const TreeNode& node = nodes[idx];
        idx = static_cast<std::size_t>(
            row[node.feature] <= node.threshold ? node.left : node.right);
    }
    return {nodes[idx].p0, nodes[idx].p1};
}

namespace {

struct TreeBuilder {
    const Matrix& X;
    const std::vector<int>& y;
    const TreeParams& params;
    Rng& stream;
    std::vector<TreeNode> nodes;
    std::vector<std::size_t> features; // scratch for per-node subset draws

    std::size_t build(const std::vector<std::size_t>& rows, std::size_t depth) {
        std::size_t count1 = 0;
        for (std::size_t r : rows) count1 += static_cast<std::size_t>(y[r]);
        std::size_t count0 = rows.size() - count1;

        std::size_t idx = nodes.size();
        TreeNode node;
        node.p0 = static_cast<double>(count0) / static_cast<double>(rows.size());
        node.p1 = static_cast<double>(count1) / static_cast<double>(rows.size());
        nodes.push_back(node);

        bool pure = count0 == 0 || count1 == 0;
        if (depth >= params.max_depth || rows.size() < params.min_split || pure) {
            return idx;
        }

        std::size_t d = X.cols;
        std::size_t m = params.max_features == 0 ? d : std::min(params.max_features, d);
        features.resize(d);
        std::iota(features.begin(), features.end(), std::size_t{0});
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t j = i + static_cast<std::size_t>(stream.bounded(
                                    static_cast<std::uint64_t>(d - i)));
            std::swap(features[i], features[j]);
        }
        std::vector<std::size_t> subset(features.begin(),
                                        features.begin() + static_cast<std::ptrdiff_t>(m));
        std::sort(subset.begin(), subset.end());

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_score = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> order(rows);

        for (std::size_t f : subset) {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return X.at(a, f) < X.at(b, f);
            });
            std::size_t left1 = 0;
            for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
                left1 += static_cast<std::size_t>(y[order[pos]]);
                double v = X.at(order[pos], f);
                double next = X.at(order[pos + 1], f);
                if (v == next) continue;
                std::size_t n_left = pos + 1;
                std::size_t n_right = order.size() - n_left;
                std::size_t left0 = n_left - left1;
                std::size_t right1 = count1 - left1;
                std::size_t right0 = n_right - right1;
                double score = static_cast<double>(n_left) * gini_impurity(left0, left1) +
                               static_cast<double>(n_right) * gini_impurity(right0, right1);
                if (score < best_score) {
                    best_score = score;
                    best_feature = static_cast<int>(f);
                    best_threshold = (v + next) / 2.0;
                }
            }
        }

        if (best_feature < 0) return idx;

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        for (std::size_t r : rows) {
            if (X.at(r, static_cast<std::size_t>(best_feature)) <= best_threshold) {
                left_rows.push_back(r);
            } else {
                right_rows.push_back(r);
            }
        }
        if (left_rows.empty() || right_rows.empty()) return idx;

        nodes[idx].feature = best_feature;
        nodes[idx].threshold = best_threshold;
        std::size_t left_idx = build(left_rows, depth + 1);
        std::size_t right_idx = build(right_rows, depth + 1);
        nodes[idx].left = static_cast<int>(left_idx);
        nodes[idx].right = static_cast<int>(right_idx);
        return idx;
    }
};

} // namespace

DecisionTree train_decision_tree(const Matrix& X, const std::vector<int>& y,
                                 const std::vector<std::size_t>& rows,
                                 const TreeParams& params, Rng& stream) {
    if (rows.empty()) throw DataError("empty node");
    TreeBuilder builder{X, y, params, stream, {}, {}};
    builder.build(rows, 0);
    DecisionTree tree;
    tree.nodes = std::move(builder.nodes);
    return tree;
}

RandomForest train_random_forest(const Matrix& X, const std::vector<int>& y,
                                 const RfParams& params) {
    if (X.rows == 0) throw DataError("empty dataset");
    if (y.size() != X.rows) throw DataError("label count mismatch");
    bool has0 = false;
    bool has1 = false;
    for (int label : y) {
        if (label == 0) has0 = true;
        if (label == 1) has1 = true;
    }
    if (!has0 || !has1) throw DataError("degenerate training labels");

    RandomForest forest;
    forest.params = params;
    forest.n_features = X.cols;
    if (forest.params.max_features == 0) {
        forest.params.max_features = static_cast<std::size_t>(
            std::floor(std::sqrt(static_cast<double>(X.cols))));
        if (forest.params.max_features == 0) forest.params.max_features = 1;
    }
    TreeParams tree_params{forest.params.max_depth, forest.params.max_features,
                           forest.params.min_split};

    std::size_t n = X.rows;
    forest.trees.resize(forest.params.n_trees);
    const std::int64_t n_trees = static_cast<std::int64_t>(forest.params.n_trees);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < n_trees; ++t) {
        Rng stream = derive_stream(forest.params.seed, "rf_tree",
                                   static_cast<std::uint64_t>(t));
        std::vector<std::size_t> bootstrap(n);
        for (std::size_t i = 0; i < n; ++i) {
            bootstrap[i] = static_cast<std::size_t>(
                stream.bounded(static_cast<std::uint64_t>(n)));
        }
        forest.trees[static_cast<std::size_t>(t)] =
            train_decision_tree(X, y, bootstrap, tree_params, stream);
    }
    return forest;
}

Matrix forest_predict_proba(const RandomForest& forest, const Matrix& X) {
    if (X.cols != forest.n_features) throw DataError("feature count mismatch");
    Matrix proba(X.rows, 2);
    double scale = 1.0 / static_cast<double>(forest.trees.size());
    const std::int64_t n = static_cast<std::int64_t>(X.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        std::size_t ii = static_cast<std::size_t>(i);
        const double* row = X.data.data() + ii * X.cols;
        double acc0 = 0.0;
        double acc1 = 0.0;
        for (const DecisionTree& tree : forest.trees) {
            auto [p0, p1] = tree.predict_row(row);
            acc0 += p0;
            acc1 += p1;
        }
        proba.at(ii, 0) = acc0 * scale;
        proba.at(ii, 1) = acc1 * scale;
    }
    return proba;
}

std::vector<int> proba_argmax(const Matrix& proba) {
    std::vector<int> labels(proba.rows);
    for (std::size_t i = 0; i < proba.rows; ++i) {
        labels[i] = proba.at(i, 1) > proba.at(i, 0) ? 1 : 0;
    }
    return labels;
}

} // namespace copd
