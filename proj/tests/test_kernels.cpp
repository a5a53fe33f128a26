#include "doctest.h"

#include "copd/errors.hpp"
#include "copd/kernels.hpp"
#include "copd/rng.hpp"

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace copd;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng = derive_stream(seed, "kernel_test");
    Matrix m(rows, cols);
    for (double& v : m.data) v = rng.uniform(-3.0, 3.0);
    return m;
}

Csr ring_csr(std::size_t n) {
    Csr w;
    w.rows = w.cols = n;
    w.indptr.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t left = (i + n - 1) % n;
        std::size_t right = (i + 1) % n;
        if (left > right) std::swap(left, right);
        w.indices.push_back(left);
        w.indices.push_back(right);
        w.values.push_back(1.0);
        w.values.push_back(0.5);
        w.indptr.push_back(w.indices.size());
    }
    return w;
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        if (a.data[i] != b.data[i]) return false;
    }
    return true;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("pairwise_sq_dists hand values") {
    Matrix A(2, 2);
    A.at(0, 0) = 0.0; A.at(0, 1) = 0.0;
    A.at(1, 0) = 3.0; A.at(1, 1) = 4.0;
    Matrix out;
    kernels::pairwise_sq_dists(A, A, out);
    CHECK(out.at(0, 0) == 0.0);
    CHECK(out.at(0, 1) == doctest::Approx(25.0));
    CHECK(out.at(1, 0) == doctest::Approx(25.0));
}

TEST_CASE("pairwise_sq_dists rectangular shapes") {
    Matrix A = random_matrix(5, 3, 1);
    Matrix B = random_matrix(7, 3, 2);
    Matrix out;
    kernels::pairwise_sq_dists(A, B, out);
    REQUIRE(out.rows == 5);
    REQUIRE(out.cols == 7);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 7; ++j) {
            double d = 0.0;
            for (std::size_t c = 0; c < 3; ++c) {
                double diff = A.at(i, c) - B.at(j, c);
                d += diff * diff;
            }
            CHECK(out.at(i, j) == doctest::Approx(d).epsilon(1e-12));
        }
    }
}

TEST_CASE("pairwise_sq_dists rejects mismatched widths") {
    Matrix A = random_matrix(2, 3, 1);
    Matrix B = random_matrix(2, 4, 2);
    Matrix out;
    CHECK_THROWS_AS(kernels::pairwise_sq_dists(A, B, out), NumericError);
}

TEST_CASE("rbf_affinity zero diagonal, symmetry, range") {
    Matrix X = random_matrix(20, 4, 3);
    Matrix W;
    kernels::rbf_affinity(X, 0.7, W);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(W.at(i, i) == 0.0);
        for (std::size_t j = 0; j < 20; ++j) {
            CHECK(W.at(i, j) == W.at(j, i));
            CHECK(W.at(i, j) >= 0.0);
            CHECK(W.at(i, j) <= 1.0);
        }
    }
}

TEST_CASE("rbf_kernel_row keeps the self entry at 1") {
    Matrix X = random_matrix(10, 4, 4);
    std::vector<double> row;
    kernels::rbf_kernel_row(X, 3, 0.5, row);
    REQUIRE(row.size() == 10);
    CHECK(row[3] == 1.0);
    for (std::size_t j = 0; j < 10; ++j) {
        double d = 0.0;
        for (std::size_t c = 0; c < 4; ++c) {
            double diff = X.at(3, c) - X.at(j, c);
            d += diff * diff;
        }
        CHECK(row[j] == doctest::Approx(std::exp(-0.5 * d)).epsilon(1e-12));
    }
}

TEST_CASE("dense_multiply hand values") {
    Matrix W(2, 2);
    W.at(0, 0) = 1.0; W.at(0, 1) = 2.0;
    W.at(1, 0) = 0.0; W.at(1, 1) = 3.0;
    Matrix F(2, 2);
    F.at(0, 0) = 1.0; F.at(0, 1) = 0.5;
    F.at(1, 0) = 2.0; F.at(1, 1) = 1.5;
    Matrix out;
    kernels::dense_multiply(W, F, out);
    CHECK(out.at(0, 0) == doctest::Approx(5.0));
    CHECK(out.at(0, 1) == doctest::Approx(3.5));
    CHECK(out.at(1, 0) == doctest::Approx(6.0));
    CHECK(out.at(1, 1) == doctest::Approx(4.5));
}

TEST_CASE("dense_multiply rejects mismatched shapes") {
    Matrix W = random_matrix(3, 4, 5);
    Matrix F = random_matrix(3, 2, 6);
    Matrix out;
    CHECK_THROWS_AS(kernels::dense_multiply(W, F, out), NumericError);
}

TEST_CASE("csr_multiply matches a dense equivalent") {
    Csr S = ring_csr(8);
    Matrix dense(8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t p = S.indptr[i]; p < S.indptr[i + 1]; ++p) {
            dense.at(i, S.indices[p]) = S.values[p];
        }
    }
    Matrix F = random_matrix(8, 2, 7);
    Matrix a, b;
    kernels::csr_multiply(S, F, a);
    kernels::dense_multiply(dense, F, b);
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        CHECK(a.data[i] == doctest::Approx(b.data[i]).epsilon(1e-12));
    }
}

TEST_CASE("parallel kernels are bitwise identical to the serial twins") {
    Matrix X = random_matrix(57, 10, 8);
    Matrix F = random_matrix(57, 2, 9);
    Csr S = ring_csr(57);

    Matrix ps, pp, ds, dp, ws, wp, cs, cp;
    std::vector<double> rs, rp;

    kernels::serial::pairwise_sq_dists(X, X, ps);
    kernels::pairwise_sq_dists(X, X, pp);
    CHECK(bitwise_equal(ps, pp));

    kernels::serial::rbf_affinity(X, 0.31, ws);
    kernels::rbf_affinity(X, 0.31, wp);
    CHECK(bitwise_equal(ws, wp));

    kernels::serial::dense_multiply(ws, F, ds);
    kernels::dense_multiply(ws, F, dp);
    CHECK(bitwise_equal(ds, dp));

    kernels::serial::csr_multiply(S, F, cs);
    kernels::csr_multiply(S, F, cp);
    CHECK(bitwise_equal(cs, cp));

    kernels::serial::rbf_kernel_row(X, 11, 0.31, rs);
    kernels::rbf_kernel_row(X, 11, 0.31, rp);
    CHECK(rs == rp);
}

#ifdef _OPENMP
TEST_CASE("results do not depend on the thread count") {
    Matrix X = random_matrix(41, 6, 10);
    int saved = omp_get_max_threads();
    std::vector<Matrix> results;
    for (int threads : {1, 2, 3, 8}) {
        omp_set_num_threads(threads);
        Matrix W;
        kernels::rbf_affinity(X, 0.42, W);
        results.push_back(std::move(W));
    }
    omp_set_num_threads(saved);
    for (std::size_t i = 1; i < results.size(); ++i) {
        CHECK(bitwise_equal(results[0], results[i]));
    }
}
#endif

} // TEST_SUITE
