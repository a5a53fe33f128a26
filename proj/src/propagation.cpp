#include "copd/propagation.hpp"

#include "copd/errors.hpp"

#include <cmath>

namespace copd {

namespace {

void check_seeds(const std::vector<Severity>& partial_labels) {
    bool has_mild = false;
    bool has_severe = false;
    for (Severity s : partial_labels) {
        if (s == Severity::mild_to_moderate) has_mild = true;
        if (s == Severity::severe) has_severe = true;
    }
    if (!has_mild || !has_severe) throw DataError("class unseeded");
}

void finalize(PropagationResult& result) {
    std::size_t n = result.distributions.rows;
    result.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double p0 = result.distributions.at(i, 0);
        double p1 = result.distributions.at(i, 1);
        double sum = p0 + p1;
        if (sum <= 0.0) {
            p0 = 0.5;
            p1 = 0.5;
        } else {
            p0 /= sum;
            p1 /= sum;
        }
        result.distributions.at(i, 0) = p0;
        result.distributions.at(i, 1) = p1;
        result.labels[i] = p1 > p0 ? Severity::severe : Severity::mild_to_moderate;
    }
}

double max_abs_change(const Matrix& a, const Matrix& b) {
    double delta = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        delta = std::max(delta, std::abs(a.data[i] - b.data[i]));
    }
    return delta;
}

} // namespace

Matrix seed_matrix(const std::vector<Severity>& partial_labels) {
    Matrix Y(partial_labels.size(), 2);
    for (std::size_t i = 0; i < partial_labels.size(); ++i) {
        if (partial_labels[i] == Severity::mild_to_moderate) {
            Y.at(i, 0) = 1.0;
        } else if (partial_labels[i] == Severity::severe) {
            Y.at(i, 1) = 1.0;
        }
    }
    return Y;
}

PropagationResult label_propagation(const Matrix& X,
                                    const std::vector<Severity>& partial_labels,
                                    const AffinityConfig& cfg) {
    return label_propagation(build_affinity(X, cfg), partial_labels, cfg);
}

PropagationResult label_propagation(const AffinityMatrix& W,
                                    const std::vector<Severity>& partial_labels,
                                    const AffinityConfig& cfg) {
    if (partial_labels.size() != W.n()) throw DataError("label count mismatch");
    check_seeds(partial_labels);
    std::vector<double> degree = W.degrees();

    std::size_t n = W.n();
    Matrix F(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        switch (partial_labels[i]) {
        case Severity::mild_to_moderate: F.at(i, 0) = 1.0; break;
        case Severity::severe: F.at(i, 1) = 1.0; break;
        default:
            F.at(i, 0) = 0.5;
            F.at(i, 1) = 0.5;
        }
    }

    PropagationResult result;
    Matrix next;
    for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
        W.multiply(F, next);
        for (std::size_t i = 0; i < n; ++i) {
            if (partial_labels[i] == Severity::mild_to_moderate) {
                next.at(i, 0) = 1.0;
                next.at(i, 1) = 0.0;
            } else if (partial_labels[i] == Severity::severe) {
                next.at(i, 0) = 0.0;
                next.at(i, 1) = 1.0;
            } else if (degree[i] == 0.0) {
                next.at(i, 0) = 0.5;
                next.at(i, 1) = 0.5;
            } else {
                next.at(i, 0) /= degree[i];
                next.at(i, 1) /= degree[i];
            }
        }
        double delta = max_abs_change(next, F);
        std::swap(F, next);
        ++result.iterations;
        if (delta < cfg.tol) {
            result.converged = true;
            break;
        }
    }
    result.distributions = std::move(F);
    finalize(result);
    return result;
}

PropagationResult label_spreading(const Matrix& X,
                                  const std::vector<Severity>& partial_labels,
                                  const AffinityConfig& cfg) {
    return label_spreading(build_affinity(X, cfg), partial_labels, cfg);
}

PropagationResult label_spreading(const AffinityMatrix& W,
                                  const std::vector<Severity>& partial_labels,
                                  const AffinityConfig& cfg) {
    if (partial_labels.size() != W.n()) throw DataError("label count mismatch");
    check_seeds(partial_labels);
    std::vector<double> degree = W.degrees();

    std::size_t n = W.n();
    std::vector<double> inv_sqrt(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (degree[i] > 0.0) inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);
    }

    Matrix Y = seed_matrix(partial_labels);
    Matrix F = Y;
    Matrix scaled(n, 2);
    Matrix product;
    double alpha = cfg.alpha;

    PropagationResult result;
    for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
        // S F = D^-1/2 W D^-1/2 F, computed without materializing S.
        for (std::size_t i = 0; i < n; ++i) {
            scaled.at(i, 0) = inv_sqrt[i] * F.at(i, 0);
            scaled.at(i, 1) = inv_sqrt[i] * F.at(i, 1);
        }
        W.multiply(scaled, product);
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < 2; ++c) {
                double value = alpha * inv_sqrt[i] * product.at(i, c) +
                               (1.0 - alpha) * Y.at(i, c);
                delta = std::max(delta, std::abs(value - F.at(i, c)));
                F.at(i, c) = value;
            }
        }
        ++result.iterations;
        if (delta < cfg.tol) {
            result.converged = true;
            break;
        }
    }
    result.distributions = std::move(F);
    finalize(result);
    return result;
}

Matrix closed_form_spreading(const Matrix& W, const Matrix& Y, double alpha) {
    std::size_t n = W.rows;
    if (n > 200) throw DataError("closed-form oracle limited to n <= 200");
    if (W.cols != n || Y.rows != n) throw DataError("shape mismatch");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");

    std::vector<double> inv_sqrt(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < n; ++j) d += W.at(i, j);
        if (d > 0.0) inv_sqrt[i] = 1.0 / std::sqrt(d);
    }

    // A = I - alpha S
    Matrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = inv_sqrt[i] * W.at(i, j) * inv_sqrt[j];
            A.at(i, j) = (i == j ? 1.0 : 0.0) - alpha * s;
        }
    }

    // Gaussian elimination with partial pivoting on [A | Y].
    Matrix rhs = Y;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(A.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double mag = std::abs(A.at(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best < 1e-12) throw NumericError("singular system");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A.at(col, j), A.at(pivot, j));
            for (std::size_t c = 0; c < rhs.cols; ++c) {
                std::swap(rhs.at(col, c), rhs.at(pivot, c));
            }
        }
        double diag = A.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            double factor = A.at(r, col) / diag;
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) {
                A.at(r, j) -= factor * A.at(col, j);
            }
            for (std::size_t c = 0; c < rhs.cols; ++c) {
                rhs.at(r, c) -= factor * rhs.at(col, c);
            }
        }
    }
    Matrix solution(n, rhs.cols);
    for (std::size_t r = n; r-- > 0;) {
        for (std::size_t c = 0; c < rhs.cols; ++c) {
            double acc = rhs.at(r, c);
            for (std::size_t j = r + 1; j < n; ++j) {
                acc -= A.at(r, j) * solution.at(j, c);
            }
            solution.at(r, c) = acc / A.at(r, r);
        }
    }
    return solution;
}

} // namespace copd
