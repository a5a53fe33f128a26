#pragma once

#include "copd/classifier_spec.hpp"
#include "copd/model.hpp"
#include "copd/rng.hpp"

#include <vector>

namespace copd {

// 1 - sum(p_i^2) over the two classes; errors on an empty node.
double gini_impurity(std::size_t count0, std::size_t count1);

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double p0 = 0.0; // leaf class proportions
    double p1 = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes; // root at index 0, children in DFS pre-order

    // Returns (p0, p1) for one feature row.
    std::pair<double, double> predict_row(const double* row) const;
};

struct TreeParams {
    std::size_t max_depth = 10;
    std::size_t max_features = 0; // 0 -> all features
    std::size_t min_split = 2;
};

// Greedy CART growth minimizing weighted child Gini. Candidate thresholds
// are midpoints of consecutive sorted distinct values; the feature subset
// is drawn per node from the stream (bootstrap draws, when used, must be
// consumed from the same stream before any node draws). Ties keep the
// lowest feature index, then the lowest threshold.
DecisionTree train_decision_tree(const Matrix& X, const std::vector<int>& y,
                                 const std::vector<std::size_t>& rows,
                                 const TreeParams& params, Rng& stream);

struct RandomForest {
    std::vector<DecisionTree> trees;
    RfParams params;
    std::size_t n_features = 0;
};

// Bootstrap sample of size n per tree, drawn from the stream derived from
// (seed, "rf_tree", tree_index). Throws "degenerate training labels" when
// y holds a single class.
RandomForest train_random_forest(const Matrix& X, const std::vector<int>& y,
                                 const RfParams& params);

// Row-wise mean of the leaf proportion vectors, n' x 2.
Matrix forest_predict_proba(const RandomForest& forest, const Matrix& X);

// Argmax per row with ties resolved to class 0.
std::vector<int> proba_argmax(const Matrix& proba);

} // namespace copd
