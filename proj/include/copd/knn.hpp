#pragma once

#include "copd/model.hpp"

#include <cstdint>
#include <vector>

namespace copd {

struct KnnPrediction {
    std::vector<int> labels;
    Matrix proba; // vote shares, n x 2
};

// For each query row, the first max_k training indices ordered by
// (squared distance, index). Shared by knn_predict and select_k.
std::vector<std::vector<std::size_t>> neighbor_prefixes(const Matrix& train_X,
                                                        const Matrix& query_X,
                                                        std::size_t max_k);

// Uniform-vote kNN; k must be odd and at most n_train.
KnnPrediction knn_predict(const Matrix& train_X, const std::vector<int>& train_y,
                          const Matrix& query_X, std::size_t k);

struct SelectKResult {
    std::size_t best_k = 0;
    std::vector<std::size_t> candidates;
    std::vector<double> mean_accuracy; // aligned with candidates
};

// Stratified-CV accuracy over the candidates (default odd 1..29);
// ties go to the smallest k.
SelectKResult select_k(const Matrix& X, const std::vector<int>& y,
                       const std::vector<std::size_t>& candidates = {},
                       std::size_t cv_folds = 5, std::uint64_t seed = 42);

} // namespace copd
