#pragma once

#include "copd/model.hpp"

#include <cstddef>
#include <vector>

namespace copd {

// Compressed sparse row storage for knn affinity graphs.
struct Csr {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> indptr;  // rows + 1
    std::vector<std::size_t> indices; // column ids, ascending per row
    std::vector<double> values;
};

// Hot loops shared by the affinity, propagation, and classifier modules.
// Each parallel kernel assigns whole output rows to threads and keeps a
// fixed inner accumulation order, so results are bitwise identical for
// any thread count. The serial namespace holds the reference twins used
// by the equivalence tests and the benchmark tool.
namespace kernels {

// out[i][j] = squared Euclidean distance between A row i and B row j.
void pairwise_sq_dists(const Matrix& A, const Matrix& B, Matrix& out);

// W[i][j] = exp(-gamma * ||xi - xj||^2), diagonal forced to 0.
void rbf_affinity(const Matrix& X, double gamma, Matrix& W);

// row[j] = exp(-gamma * ||X[i] - X[j]||^2) including row[i] = 1.
void rbf_kernel_row(const Matrix& X, std::size_t i, double gamma,
                    std::vector<double>& row);

// out = W * F (dense / sparse).
void dense_multiply(const Matrix& W, const Matrix& F, Matrix& out);
void csr_multiply(const Csr& W, const Matrix& F, Matrix& out);

namespace serial {
void pairwise_sq_dists(const Matrix& A, const Matrix& B, Matrix& out);
void rbf_affinity(const Matrix& X, double gamma, Matrix& W);
void rbf_kernel_row(const Matrix& X, std::size_t i, double gamma,
                    std::vector<double>& row);
void dense_multiply(const Matrix& W, const Matrix& F, Matrix& out);
void csr_multiply(const Csr& W, const Matrix& F, Matrix& out);
} // namespace serial

} // namespace kernels

} // namespace copd
