#include "copd/svm.hpp"

#include "copd/affinity.hpp"
#include "copd/errors.hpp"
#include "copd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <list>
#include <unordered_map>

namespace copd {

namespace {

// LRU cache of full kernel rows; capacity bounded by ~256 MB.
class KernelCache {
public:
    KernelCache(const Matrix& X, double gamma) : x_(X), gamma_(gamma) {
        std::size_t budget = (256u << 20) / (sizeof(double) * std::max<std::size_t>(X.rows, 1));
        capacity_ = std::max<std::size_t>(2, std::min(X.rows, budget));
    }

    const std::vector<double>& row(std::size_t i) {
        auto it = map_.find(i);
        if (it != map_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second.first);
            return it->second.second;
        }
        if (map_.size() >= capacity_) {
            std::size_t victim = lru_.back();
            lru_.pop_back();
            map_.erase(victim);
        }
        lru_.push_front(i);
        auto& entry = map_[i];
        entry.first = lru_.begin();
        kernels::rbf_kernel_row(x_, i, gamma_, entry.second);
        return entry.second;
    }

private:
    const Matrix& x_;
    double gamma_;
    std::size_t capacity_;
    std::list<std::size_t> lru_;
    std::unordered_map<std::size_t,
                       std::pair<std::list<std::size_t>::iterator, std::vector<double>>>
        map_;
};

double sigmoid_objective(const std::vector<double>& scores,
                         const std::vector<double>& targets, double a, double b) {
    double f = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        double fApB = scores[i] * a + b;
        if (fApB >= 0.0) {
            f += targets[i] * fApB + std::log1p(std::exp(-fApB));
        } else {
            f += (targets[i] - 1.0) * fApB + std::log1p(std::exp(fApB));
        }
    }
    return f;
}

} // namespace

SvmModel train_svm_smo(const Matrix& X, const std::vector<int>& y,
                       const SvmParams& params) {
    std::size_t n = X.rows;
    if (n == 0) throw DataError("empty dataset");
    if (y.size() != n) throw DataError("label count mismatch");
    if (params.c <= 0.0) throw ConfigError("c must be positive");

    std::vector<double> ypm(n);
    bool has0 = false;
    bool has1 = false;
    for (std::size_t i = 0; i < n; ++i) {
        ypm[i] = y[i] == 1 ? 1.0 : -1.0;
        (y[i] == 1 ? has1 : has0) = true;
    }
    if (!has0 || !has1) throw DataError("degenerate training labels");

    double gamma = params.gamma ? *params.gamma : scale_gamma(X);
    if (gamma <= 0.0) throw ConfigError("gamma must be positive");
    double C = params.c;

    KernelCache cache(X, gamma);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0); // gradient of 1/2 a'Qa - e'a at a = 0

    std::size_t max_iter = 10 * n;
    std::size_t iter = 0;
    bool converged = false;
    double final_m = 0.0;
    double final_M = 0.0;

    for (; iter < max_iter; ++iter) {
        // Maximal violating pair over the feasible index sets.
        std::size_t i_up = n;
        std::size_t j_low = n;
        double m = -std::numeric_limits<double>::infinity();
        double M = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            double v = -ypm[t] * grad[t];
            bool in_up = (ypm[t] > 0.0 && alpha[t] < C) || (ypm[t] < 0.0 && alpha[t] > 0.0);
            bool in_low = (ypm[t] > 0.0 && alpha[t] > 0.0) || (ypm[t] < 0.0 && alpha[t] < C);
            if (in_up && v > m) {
                m = v;
                i_up = t;
            }
            if (in_low && v < M) {
                M = v;
                j_low = t;
            }
        }
        final_m = m;
        final_M = M;
        if (i_up == n || j_low == n || m - M <= params.smo_tol) {
            converged = true;
            break;
        }

        std::size_t i = i_up;
        std::size_t j = j_low;
        const std::vector<double>& Ki = cache.row(i);
        double Kii = Ki[i];
        double Kij = Ki[j];
        const std::vector<double>& Kj = cache.row(j);
        double Kjj = Kj[j];

        double quad = Kii + Kjj - 2.0 * Kij;
        if (quad <= 0.0) quad = 1e-12;
        double step = (m - M) / quad;
        double cap_i = ypm[i] > 0.0 ? C - alpha[i] : alpha[i];
        double cap_j = ypm[j] > 0.0 ? alpha[j] : C - alpha[j];
        step = std::min({step, cap_i, cap_j});

        double old_i = alpha[i];
        double old_j = alpha[j];
        alpha[i] = std::clamp(old_i + ypm[i] * step, 0.0, C);
        alpha[j] = std::clamp(old_j - ypm[j] * step, 0.0, C);
        double delta_qi = (alpha[i] - old_i) * ypm[i];
        double delta_qj = (alpha[j] - old_j) * ypm[j];

        for (std::size_t s = 0; s < n; ++s) {
            grad[s] += ypm[s] * (delta_qi * Ki[s] + delta_qj * Kj[s]);
        }
    }

    // Bias from free support vectors, midpoint of the KKT gap otherwise.
    double b_sum = 0.0;
    std::size_t b_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0 && alpha[t] < C) {
            b_sum += -ypm[t] * grad[t];
            ++b_count;
        }
    }
    double b = b_count > 0 ? b_sum / static_cast<double>(b_count)
                           : (final_m + final_M) / 2.0;

    SvmModel model;
    model.b = b;
    model.gamma = gamma;
    model.c = C;
    model.n_features = X.cols;
    model.iterations = iter;
    model.converged = converged;

    std::vector<std::size_t> kept;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 1e-8) kept.push_back(t);
    }
    model.support_x = Matrix(kept.size(), X.cols);
    model.coef.resize(kept.size());
    for (std::size_t s = 0; s < kept.size(); ++s) {
        std::size_t t = kept[s];
        for (std::size_t c = 0; c < X.cols; ++c) {
            model.support_x.at(s, c) = X.at(t, c);
        }
        model.coef[s] = alpha[t] * ypm[t];
    }

    // Training decisions fall out of the maintained gradient:
    // sum_t alpha_t y_t K(x_t, x_s) = y_s * (grad_s + 1).
    std::vector<double> train_scores(n);
    for (std::size_t s = 0; s < n; ++s) {
        train_scores[s] = ypm[s] * (grad[s] + 1.0) + b;
    }
    model.platt = platt_calibrate(train_scores, y);
    return model;
}

std::vector<double> svm_decision(const SvmModel& model, const Matrix& X) {
    if (X.cols != model.n_features) throw DataError("feature count mismatch");
    std::vector<double> scores(X.rows);
    const std::int64_t n = static_cast<std::int64_t>(X.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t q = 0; q < n; ++q) {
        std::size_t qq = static_cast<std::size_t>(q);
        const double* x = X.data.data() + qq * X.cols;
        double acc = 0.0;
        for (std::size_t s = 0; s < model.support_x.rows; ++s) {
            const double* sv = model.support_x.data.data() + s * model.support_x.cols;
            double d2 = 0.0;
            for (std::size_t c = 0; c < X.cols; ++c) {
                double diff = x[c] - sv[c];
                d2 += diff * diff;
            }
            acc += model.coef[s] * std::exp(-model.gamma * d2);
        }
        scores[qq] = acc + model.b;
    }
    return scores;
}

Matrix svm_predict_proba(const SvmModel& model, const Matrix& X) {
    std::vector<double> scores = svm_decision(model, X);
    Matrix proba(X.rows, 2);
    for (std::size_t i = 0; i < X.rows; ++i) {
        double fApB = model.platt.a * scores[i] + model.platt.b;
        double p1 = fApB >= 0.0 ? std::exp(-fApB) / (1.0 + std::exp(-fApB))
                                : 1.0 / (1.0 + std::exp(fApB));
        proba.at(i, 0) = 1.0 - p1;
        proba.at(i, 1) = p1;
    }
    return proba;
}

PlattSigmoid platt_calibrate(const std::vector<double>& scores,
                             const std::vector<int>& y) {
    std::size_t n = scores.size();
    if (y.size() != n) throw DataError("label count mismatch");
    std::size_t prior1 = 0;
    for (int label : y) prior1 += static_cast<std::size_t>(label);
    std::size_t prior0 = n - prior1;
    if (prior0 == 0 || prior1 == 0) throw DataError("degenerate training labels");

    // Smoothed targets (Platt's correction) keep the fit finite even for
    // perfectly separated scores.
    double hi = (static_cast<double>(prior1) + 1.0) / (static_cast<double>(prior1) + 2.0);
    double lo = 1.0 / (static_cast<double>(prior0) + 2.0);
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = y[i] == 1 ? hi : lo;

    double a = 0.0;
    double b = std::log((static_cast<double>(prior0) + 1.0) /
                        (static_cast<double>(prior1) + 1.0));
    double f = sigmoid_objective(scores, target, a, b);
    const double sigma = 1e-12;

    for (int it = 0; it < 100; ++it) {
        double h11 = sigma;
        double h22 = sigma;
        double h21 = 0.0;
        double g1 = 0.0;
        double g2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fApB = scores[i] * a + b;
            double p, q;
            if (fApB >= 0.0) {
                p = std::exp(-fApB) / (1.0 + std::exp(-fApB));
                q = 1.0 / (1.0 + std::exp(-fApB));
            } else {
                p = 1.0 / (1.0 + std::exp(fApB));
                q = std::exp(fApB) / (1.0 + std::exp(fApB));
            }
            double d2 = p * q;
            h11 += scores[i] * scores[i] * d2;
            h22 += d2;
            h21 += scores[i] * d2;
            double d1 = target[i] - p;
            g1 += scores[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < 1e-5 && std::abs(g2) < 1e-5) break;

        double det = h11 * h22 - h21 * h21;
        double da = -(h22 * g1 - h21 * g2) / det;
        double db = -(-h21 * g1 + h11 * g2) / det;
        double gd = g1 * da + g2 * db;

        double stepsize = 1.0;
        while (stepsize >= 1e-10) {
            double new_a = a + stepsize * da;
            double new_b = b + stepsize * db;
            double new_f = sigmoid_objective(scores, target, new_a, new_b);
            if (new_f < f + 1e-4 * stepsize * gd) {
                a = new_a;
                b = new_b;
                f = new_f;
                break;
            }
            stepsize /= 2.0;
        }
        if (stepsize < 1e-10) break;
    }
    return PlattSigmoid{a, b};
}

double svm_dual_objective(const SvmModel& model) {
    std::size_t m = model.support_x.rows;
    double quad = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double* a = model.support_x.data.data() + i * model.support_x.cols;
        for (std::size_t j = 0; j < m; ++j) {
            const double* b = model.support_x.data.data() + j * model.support_x.cols;
            double d2 = 0.0;
            for (std::size_t c = 0; c < model.support_x.cols; ++c) {
                double diff = a[c] - b[c];
                d2 += diff * diff;
            }
            quad += model.coef[i] * model.coef[j] * std::exp(-model.gamma * d2);
        }
    }
    double linear = 0.0;
    for (double c : model.coef) linear += std::abs(c);
    return 0.5 * quad - linear;
}

} // namespace copd
