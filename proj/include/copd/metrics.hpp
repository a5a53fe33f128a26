#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace copd {

struct FoldAssignment {
    std::vector<std::size_t> fold_of;
    std::size_t k = 0;
};

// Per class: seeded shuffle, then round-robin dealing starting at fold 0.
// Requires k >= 2 and every class to have at least k members.
FoldAssignment stratified_kfold(const std::vector<int>& labels, std::size_t k = 5,
                                std::uint64_t seed = 42);

struct Confusion {
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tp = 0;

    std::size_t total() const { return tn + fp + fn + tp; }
};

// Positive class is severe (1).
Confusion confusion_matrix(const std::vector<int>& y_true,
                           const std::vector<int>& y_pred);

struct BinaryMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<std::string> warnings; // zero-division metrics reported as 0
};

BinaryMetrics binary_metrics(const Confusion& cm);

// Mann-Whitney rank statistic; tied scores credited 0.5. Requires both
// classes present.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& y_true);

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

// Starts at (+inf, 0, 0), one point per distinct threshold descending,
// ends at (1, 1). Prediction rule: score >= threshold.
std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<int>& y_true);

// Trapezoidal area under a curve from roc_curve.
double roc_trapezoid(const std::vector<RocPoint>& points);

} // namespace copd
