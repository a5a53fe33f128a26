#include "copd/kernels.hpp"

#include "copd/errors.hpp"

#include <cmath>
#include <cstdint>

namespace copd::kernels {

namespace {

inline double sq_dist_rows(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        double diff = a[k] - b[k];
        acc += diff * diff;
    }
    return acc;
}

void check_multiply_shapes(std::size_t w_cols, const Matrix& F) {
    if (w_cols != F.rows) throw NumericError("multiply shape mismatch");
}

} // namespace

namespace serial {

void pairwise_sq_dists(const Matrix& A, const Matrix& B, Matrix& out) {
    if (A.cols != B.cols) throw NumericError("dimension mismatch");
    out = Matrix(A.rows, B.rows);
    for (std::size_t i = 0; i < A.rows; ++i) {
        const double* a = A.data.data() + i * A.cols;
        for (std::size_t j = 0; j < B.rows; ++j) {
            out.at(i, j) = sq_dist_rows(a, B.data.data() + j * B.cols, A.cols);
        }
    }
}

void rbf_affinity(const Matrix& X, double gamma, Matrix& W) {
    W = Matrix(X.rows, X.rows);
    for (std::size_t i = 0; i < X.rows; ++i) {
        const double* a = X.data.data() + i * X.cols;
        for (std::size_t j = 0; j < X.rows; ++j) {
            if (j == i) continue;
            double d2 = sq_dist_rows(a, X.data.data() + j * X.cols, X.cols);
            W.at(i, j) = std::exp(-gamma * d2);
        }
    }
}

void rbf_kernel_row(const Matrix& X, std::size_t i, double gamma,
                    std::vector<double>& row) {
    row.resize(X.rows);
    const double* a = X.data.data() + i * X.cols;
    for (std::size_t j = 0; j < X.rows; ++j) {
        double d2 = sq_dist_rows(a, X.data.data() + j * X.cols, X.cols);
        row[j] = std::exp(-gamma * d2);
    }
}

void dense_multiply(const Matrix& W, const Matrix& F, Matrix& out) {
    check_multiply_shapes(W.cols, F);
    out = Matrix(W.rows, F.cols);
    for (std::size_t i = 0; i < W.rows; ++i) {
        for (std::size_t j = 0; j < W.cols; ++j) {
            double w = W.at(i, j);
            if (w == 0.0) continue;
            for (std::size_t c = 0; c < F.cols; ++c) {
                out.at(i, c) += w * F.at(j, c);
            }
        }
    }
}

void csr_multiply(const Csr& W, const Matrix& F, Matrix& out) {
    check_multiply_shapes(W.cols, F);
    out = Matrix(W.rows, F.cols);
    for (std::size_t i = 0; i < W.rows; ++i) {
        for (std::size_t nz = W.indptr[i]; nz < W.indptr[i + 1]; ++nz) {
            double w = W.values[nz];
            std::size_t j = W.indices[nz];
            for (std::size_t c = 0; c < F.cols; ++c) {
                out.at(i, c) += w * F.at(j, c);
            }
        }
    }
}

} // namespace serial

void pairwise_sq_dists(const Matrix& A, const Matrix& B, Matrix& out) {
    if (A.cols != B.cols) throw NumericError("dimension mismatch");
    out = Matrix(A.rows, B.rows);
    const std::int64_t n = static_cast<std::int64_t>(A.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const double* a = A.data.data() + static_cast<std::size_t>(i) * A.cols;
        for (std::size_t j = 0; j < B.rows; ++j) {
            out.at(static_cast<std::size_t>(i), j) =
                sq_dist_rows(a, B.data.data() + j * B.cols, A.cols);
        }
    }
}

void rbf_affinity(const Matrix& X, double gamma, Matrix& W) {
    W = Matrix(X.rows, X.rows);
    const std::int64_t n = static_cast<std::int64_t>(X.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        std::size_t ii = static_cast<std::size_t>(i);
        const double* a = X.data.data() + ii * X.cols;
        for (std::size_t j = 0; j < X.rows; ++j) {
            if (j == ii) continue;
            double d2 = sq_dist_rows(a, X.data.data() + j * X.cols, X.cols);
            W.at(ii, j) = std::exp(-gamma * d2);
        }
    }
}

void rbf_kernel_row(const Matrix& X, std::size_t i, double gamma,
                    std::vector<double>& row) {
    row.resize(X.rows);
    const double* a = X.data.data() + i * X.cols;
    const std::int64_t n = static_cast<std::int64_t>(X.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n; ++j) {
        std::size_t jj = static_cast<std::size_t>(j);
        double d2 = sq_dist_rows(a, X.data.data() + jj * X.cols, X.cols);
        row[jj] = std::exp(-gamma * d2);
    }
}

void dense_multiply(const Matrix& W, const Matrix& F, Matrix& out) {
    check_multiply_shapes(W.cols, F);
    out = Matrix(W.rows, F.cols);
    const std::int64_t n = static_cast<std::int64_t>(W.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        std::size_t ii = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j < W.cols; ++j) {
            double w = W.at(ii, j);
            if (w == 0.0) continue;
            for (std::size_t c = 0; c < F.cols; ++c) {
                out.at(ii, c) += w * F.at(j, c);
            }
        }
    }
}

void csr_multiply(const Csr& W, const Matrix& F, Matrix& out) {
    check_multiply_shapes(W.cols, F);
    out = Matrix(W.rows, F.cols);
    const std::int64_t n = static_cast<std::int64_t>(W.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        std::size_t ii = static_cast<std::size_t>(i);
        for (std::size_t nz = W.indptr[ii]; nz < W.indptr[ii + 1]; ++nz) {
            double w = W.values[nz];
            std::size_t j = W.indices[nz];
            for (std::size_t c = 0; c < F.cols; ++c) {
                out.at(ii, c) += w * F.at(j, c);
            }
        }
    }
}

} // namespace copd::kernels
