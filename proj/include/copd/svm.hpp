#pragma once

#include "copd/classifier_spec.hpp"
#include "copd/model.hpp"

#include <vector>

namespace copd {

struct PlattSigmoid {
    double a = 0.0; // P(y=1|s) = 1 / (1 + exp(a*s + b)); a < 0 when increasing
    double b = 0.0;
};

struct SvmModel {
    Matrix support_x;
    std::vector<double> coef; // alpha_i * y_i per support vector
    double b = 0.0;
    double gamma = 1.0;
    double c = 1.0;
    std::size_t n_features = 0;
    std::size_t iterations = 0;
    bool converged = false;
    PlattSigmoid platt;
};

// Soft-margin rbf SVM trained by maximal-violating-pair SMO with a
// maintained gradient; stops when the KKT gap m - M drops to smo_tol or
// after 10 * n selection rounds (then converged=false, model still usable).
// Platt calibration is fit on the training decision scores.
SvmModel train_svm_smo(const Matrix& X, const std::vector<int>& y,
                       const SvmParams& params);

std::vector<double> svm_decision(const SvmModel& model, const Matrix& X);

// Platt-calibrated (1-p1, p1) rows from decision scores.
Matrix svm_predict_proba(const SvmModel& model, const Matrix& X);

// Regularized maximum-likelihood sigmoid fit with smoothed targets,
// robust to perfectly separated scores.
PlattSigmoid platt_calibrate(const std::vector<double>& scores,
                             const std::vector<int>& y);

// 1/2 sum_ij coef_i coef_j K(sv_i, sv_j) - sum_i alpha_i over the kept
// support vectors (exact: dropped vectors have alpha ~ 0).
double svm_dual_objective(const SvmModel& model);

} // namespace copd
