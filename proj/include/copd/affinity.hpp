#pragma once

#include "copd/kernels.hpp"
#include "copd/model.hpp"

#include <optional>
#include <vector>

namespace copd {

enum class AffinityKernel { rbf, knn };

struct AffinityConfig {
    AffinityKernel kernel = AffinityKernel::rbf;
    std::optional<double> gamma; // rbf; unset -> 1 / (d * pooled variance)
    std::size_t k = 7;           // knn neighbor count
    double alpha = 0.2;          // spreading clamp factor
    double tol = 1e-3;
    std::size_t max_iter = 1000;

    void validate() const; // ConfigError on out-of-range fields
};

// Symmetric non-negative sample graph. The rbf kernel yields a dense
// matrix, knn a 0/1 CSR (union-symmetrized, so some rows exceed k).
struct AffinityMatrix {
    AffinityKernel kernel = AffinityKernel::rbf;
    Matrix dense;
    Csr sparse;

    std::size_t n() const {
        return kernel == AffinityKernel::rbf ? dense.rows : sparse.rows;
    }
    std::vector<double> degrees() const;
    void multiply(const Matrix& F, Matrix& out) const;
};

// gamma heuristic: 1 / (cols * mean per-column population variance);
// falls back to 1.0 when the pooled variance is zero.
double scale_gamma(const Matrix& X);

// Requires n >= 2 and a positive (or unset) gamma.
AffinityMatrix build_affinity(const Matrix& X, const AffinityConfig& cfg);

} // namespace copd
