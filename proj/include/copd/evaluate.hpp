#pragma once

#include "copd/classifier_spec.hpp"
#include "copd/metrics.hpp"
#include "copd/model.hpp"

#include <string>
#include <vector>

namespace copd {

struct MetricStat {
    double mean = 0.0;
    double std = 0.0; // population std across folds
    std::vector<double> per_fold;
};

struct MetricsReport {
    std::string classifier;
    std::size_t folds = 0;
    std::uint64_t seed = 0;
    std::string mode; // leakage_safe | paper_faithful
    std::vector<std::pair<std::string, MetricStat>> metrics;
    Confusion confusion; // summed over folds
    std::vector<std::string> warnings;
    std::vector<std::vector<RocPoint>> roc; // per fold
};

// Stratified k-fold evaluation. leakage_safe fits the imputer and scaler
// on each training split; paper_faithful fits them once on the full data.
// Hard labels: probability > 0.5 for forest/knn, decision score > 0 for
// svm; ROC always uses the continuous scores.
MetricsReport cross_validate(const FeatureMatrix& X, const std::vector<int>& y,
                             const ClassifierSpec& spec, std::size_t k = 5,
                             std::uint64_t seed = 42, bool paper_faithful = false);

std::string metrics_to_json(const MetricsReport& report);
void write_metrics_json(const std::string& path, const MetricsReport& report);

// CSV body with header threshold,fpr,tpr (threshold "inf" on the first row).
std::string roc_to_csv(const std::vector<RocPoint>& points);

// roc_<classifier>_fold<i>.csv per fold; returns the file names.
std::vector<std::string> write_roc_csvs(const std::string& dir,
                                        const MetricsReport& report);

} // namespace copd
