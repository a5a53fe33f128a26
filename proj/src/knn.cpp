#include "copd/knn.hpp"

#include "copd/classifier_spec.hpp"
#include "copd/errors.hpp"
#include "copd/metrics.hpp"

#include <algorithm>
#include <cstdint>

namespace copd {

std::vector<std::vector<std::size_t>> neighbor_prefixes(const Matrix& train_X,
                                                        const Matrix& query_X,
                                                        std::size_t max_k) {
    if (train_X.cols != query_X.cols) throw DataError("feature count mismatch");
    std::size_t n_train = train_X.rows;
    std::size_t kk = std::min(max_k, n_train);
    std::vector<std::vector<std::size_t>> prefixes(query_X.rows);
    const std::int64_t n_query = static_cast<std::int64_t>(query_X.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t q = 0; q < n_query; ++q) {
        std::size_t qq = static_cast<std::size_t>(q);
        const double* a = query_X.data.data() + qq * query_X.cols;
        std::vector<double> dist(n_train);
        for (std::size_t j = 0; j < n_train; ++j) {
            const double* b = train_X.data.data() + j * train_X.cols;
            double acc = 0.0;
            for (std::size_t c = 0; c < train_X.cols; ++c) {
                double diff = a[c] - b[c];
                acc += diff * diff;
            }
            dist[j] = acc;
        }
        std::vector<std::size_t> order(n_train);
        for (std::size_t j = 0; j < n_train; ++j) order[j] = j;
        auto cmp = [&](std::size_t x, std::size_t y) {
            if (dist[x] != dist[y]) return dist[x] < dist[y];
            return x < y;
        };
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kk),
                          order.end(), cmp);
        order.resize(kk);
        prefixes[qq] = std::move(order);
    }
    return prefixes;
}

namespace {

void check_k(std::size_t k, std::size_t n_train) {
    if (k == 0 || k % 2 == 0) throw ConfigError("k must be odd");
    if (k > n_train) throw DataError("k exceeds training size");
}

} // namespace

KnnPrediction knn_predict(const Matrix& train_X, const std::vector<int>& train_y,
                          const Matrix& query_X, std::size_t k) {
    if (train_y.size() != train_X.rows) throw DataError("label count mismatch");
    check_k(k, train_X.rows);
    auto prefixes = neighbor_prefixes(train_X, query_X, k);
    KnnPrediction out;
    out.labels.resize(query_X.rows);
    out.proba = Matrix(query_X.rows, 2);
    for (std::size_t q = 0; q < query_X.rows; ++q) {
        std::size_t votes1 = 0;
        for (std::size_t j : prefixes[q]) votes1 += static_cast<std::size_t>(train_y[j]);
        double p1 = static_cast<double>(votes1) / static_cast<double>(k);
        out.proba.at(q, 0) = 1.0 - p1;
        out.proba.at(q, 1) = p1;
        out.labels[q] = p1 > 0.5 ? 1 : 0;
    }
    return out;
}

SelectKResult select_k(const Matrix& X, const std::vector<int>& y,
                       const std::vector<std::size_t>& candidates,
                       std::size_t cv_folds, std::uint64_t seed) {
    SelectKResult result;
    result.candidates = candidates.empty() ? default_k_candidates() : candidates;
    for (std::size_t k : result.candidates) {
        if (k == 0 || k % 2 == 0) throw ConfigError("k must be odd");
    }
    std::size_t max_k = *std::max_element(result.candidates.begin(),
                                          result.candidates.end());

    FoldAssignment folds = stratified_kfold(y, cv_folds, seed);
    result.mean_accuracy.assign(result.candidates.size(), 0.0);

    for (std::size_t fold = 0; fold < cv_folds; ++fold) {
        std::vector<std::size_t> train_rows;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < y.size(); ++i) {
            (folds.fold_of[i] == fold ? test_rows : train_rows).push_back(i);
        }
        if (max_k > train_rows.size()) throw DataError("k exceeds training size");

        Matrix train_X(train_rows.size(), X.cols);
        std::vector<int> train_y(train_rows.size());
        for (std::size_t i = 0; i < train_rows.size(); ++i) {
            for (std::size_t c = 0; c < X.cols; ++c) {
                train_X.at(i, c) = X.at(train_rows[i], c);
            }
            train_y[i] = y[train_rows[i]];
        }
        Matrix test_X(test_rows.size(), X.cols);
        for (std::size_t i = 0; i < test_rows.size(); ++i) {
            for (std::size_t c = 0; c < X.cols; ++c) {
                test_X.at(i, c) = X.at(test_rows[i], c);
            }
        }

        auto prefixes = neighbor_prefixes(train_X, test_X, max_k);
        for (std::size_t ci = 0; ci < result.candidates.size(); ++ci) {
            std::size_t k = result.candidates[ci];
            std::size_t correct = 0;
            for (std::size_t q = 0; q < test_rows.size(); ++q) {
                std::size_t votes1 = 0;
                for (std::size_t pos = 0; pos < k; ++pos) {
                    votes1 += static_cast<std::size_t>(train_y[prefixes[q][pos]]);
                }
                int pred = 2 * votes1 > k ? 1 : 0;
                if (pred == y[test_rows[q]]) ++correct;
            }
            result.mean_accuracy[ci] +=
                static_cast<double>(correct) / static_cast<double>(test_rows.size());
        }
    }

    double best = -1.0;
    for (std::size_t ci = 0; ci < result.candidates.size(); ++ci) {
        result.mean_accuracy[ci] /= static_cast<double>(cv_folds);
        std::size_t k = result.candidates[ci];
        if (result.mean_accuracy[ci] > best ||
            (result.mean_accuracy[ci] == best && k < result.best_k)) {
            best = result.mean_accuracy[ci];
            result.best_k = k;
        }
    }
    return result;
}

} // namespace copd
