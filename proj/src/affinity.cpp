#include "copd/affinity.hpp"

#include "copd/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace copd {

void AffinityConfig::validate() const {
    if (gamma && *gamma <= 0.0) throw ConfigError("gamma must be positive");
    if (k < 1) throw ConfigError("k must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
    if (tol <= 0.0) throw ConfigError("tol must be positive");
    if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
}

std::vector<double> AffinityMatrix::degrees() const {
    std::size_t size = n();
    std::vector<double> d(size, 0.0);
    if (kernel == AffinityKernel::rbf) {
        for (std::size_t i = 0; i < size; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < size; ++j) sum += dense.at(i, j);
            d[i] = sum;
        }
    } else {
        for (std::size_t i = 0; i < size; ++i) {
            double sum = 0.0;
            for (std::size_t nz = sparse.indptr[i]; nz < sparse.indptr[i + 1]; ++nz) {
                sum += sparse.values[nz];
            }
            d[i] = sum;
        }
    }
    return d;
}

void AffinityMatrix::multiply(const Matrix& F, Matrix& out) const {
    if (kernel == AffinityKernel::rbf) {
        kernels::dense_multiply(dense, F, out);
    } else {
        kernels::csr_multiply(sparse, F, out);
    }
}

double scale_gamma(const Matrix& X) {
    if (X.rows == 0 || X.cols == 0) return 1.0;
    double pooled = 0.0;
    for (std::size_t j = 0; j < X.cols; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < X.rows; ++i) sum += X.at(i, j);
        double mean = sum / static_cast<double>(X.rows);
        double sq = 0.0;
        for (std::size_t i = 0; i < X.rows; ++i) {
            double d = X.at(i, j) - mean;
            sq += d * d;
        }
        pooled += sq / static_cast<double>(X.rows);
    }
    pooled /= static_cast<double>(X.cols);
    if (pooled <= 0.0) return 1.0;
    return 1.0 / (static_cast<double>(X.cols) * pooled);
}

namespace {

Csr build_knn_graph(const Matrix& X, std::size_t k) {
    std::size_t n = X.rows;
    std::size_t kk = std::min(k, n - 1);

    // Directed k-nearest lists, ties broken by (distance, index).
    std::vector<std::vector<std::size_t>> nearest(n);
    const std::int64_t rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        std::size_t ii = static_cast<std::size_t>(i);
        const double* a = X.data.data() + ii * X.cols;
        std::vector<double> dist(n);
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            const double* b = X.data.data() + j * X.cols;
            for (std::size_t c = 0; c < X.cols; ++c) {
                double diff = a[c] - b[c];
                acc += diff * diff;
            }
            dist[j] = acc;
        }
        std::vector<std::size_t> order;
        order.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != ii) order.push_back(j);
        }
        auto cmp = [&](std::size_t a_, std::size_t b_) {
            if (dist[a_] != dist[b_]) return dist[a_] < dist[b_];
            return a_ < b_;
        };
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kk),
                          order.end(), cmp);
        order.resize(kk);
        nearest[ii] = std::move(order);
    }

    // Union symmetrization: W[i][j] = max over directions.
    std::vector<std::vector<std::size_t>> adjacency(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : nearest[i]) {
            adjacency[i].push_back(j);
            adjacency[j].push_back(i);
        }
    }
    Csr W;
    W.rows = n;
    W.cols = n;
    W.indptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& adj = adjacency[i];
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        W.indptr[i + 1] = W.indptr[i] + adj.size();
        for (std::size_t j : adj) {
            W.indices.push_back(j);
            W.values.push_back(1.0);
        }
    }
    return W;
}

} // namespace

AffinityMatrix build_affinity(const Matrix& X, const AffinityConfig& cfg) {
    cfg.validate();
    if (X.rows < 2) throw DataError("affinity needs at least 2 samples");
    AffinityMatrix out;
    out.kernel = cfg.kernel;
    if (cfg.kernel == AffinityKernel::rbf) {
        double gamma = cfg.gamma ? *cfg.gamma : scale_gamma(X);
        if (gamma <= 0.0) throw ConfigError("gamma must be positive");
        kernels::rbf_affinity(X, gamma, out.dense);
    } else {
        out.sparse = build_knn_graph(X, cfg.k);
    }
    return out;
}

} // namespace copd
