#pragma once

#include "copd/model.hpp"

#include <string>
#include <vector>

namespace copd {

struct ImputerModel {
    std::vector<double> column_means;
};

struct ScalerModel {
    std::vector<double> column_means;
    std::vector<double> column_stds;        // population std (1/n)
    std::vector<std::uint8_t> zero_variance; // flagged columns pass through
};

// Means over observed entries only; an all-missing column is an error
// naming the column.
ImputerModel fit_imputer(const FeatureMatrix& X);

// Replaces masked cells with the fitted means; output mask is all-false.
FeatureMatrix apply_imputer(const ImputerModel& model, const FeatureMatrix& X);

// Requires fully observed input. Zero-variance columns are flagged and
// transformed with std 1 (so they map to 0).
ScalerModel fit_scaler(const FeatureMatrix& X);
FeatureMatrix apply_scaler(const ScalerModel& model, const FeatureMatrix& X);

std::string imputer_to_json(const ImputerModel& model);
std::string scaler_to_json(const ScalerModel& model);

} // namespace copd
