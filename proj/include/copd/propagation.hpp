#pragma once

#include "copd/affinity.hpp"
#include "copd/model.hpp"

#include <vector>

namespace copd {

struct PropagationResult {
    std::vector<Severity> labels; // never unlabeled
    Matrix distributions;         // n x 2, rows sum to 1
    std::size_t iterations = 0;
    bool converged = false;
};

// Iterates F <- D^-1 W F with hard clamping of seeded rows. Unlabeled rows
// start at (0.5, 0.5); zero-degree rows keep the uniform prior. Argmax
// ties resolve to mild (class 0). Throws "class unseeded" when either
// class has no seed.
PropagationResult label_propagation(const Matrix& X,
                                    const std::vector<Severity>& partial_labels,
                                    const AffinityConfig& cfg);
PropagationResult label_propagation(const AffinityMatrix& W,
                                    const std::vector<Severity>& partial_labels,
                                    const AffinityConfig& cfg);

// Iterates F <- alpha S F + (1-alpha) Y with S = D^-1/2 W D^-1/2 and Y the
// one-hot seed matrix (zero rows for unlabeled). Output rows are
// normalized to sum 1; a zero row falls back to the uniform prior.
PropagationResult label_spreading(const Matrix& X,
                                  const std::vector<Severity>& partial_labels,
                                  const AffinityConfig& cfg);
PropagationResult label_spreading(const AffinityMatrix& W,
                                  const std::vector<Severity>& partial_labels,
                                  const AffinityConfig& cfg);

// Test oracle: dense solve of (I - alpha S) F* = Y via partial-pivot
// elimination. Returns the raw (unnormalized) solution; limited to n <= 200.
Matrix closed_form_spreading(const Matrix& W, const Matrix& Y, double alpha);

// One-hot rows for seeds, zero rows for unlabeled samples.
Matrix seed_matrix(const std::vector<Severity>& partial_labels);

} // namespace copd
