#include "copd/preprocessing.hpp"

#include "copd/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <string>

namespace copd {

namespace {

void check_shape(const std::vector<double>& params, const FeatureMatrix& X,
                 const char* what) {
    if (params.size() != X.values.cols) {
        throw DataError(std::string(what) + " column count mismatch");
    }
}

} // namespace

ImputerModel fit_imputer(const FeatureMatrix& X) {
    if (X.rows() == 0) throw DataError("empty dataset");
    ImputerModel model;
    model.column_means.assign(X.values.cols, 0.0);
    for (std::size_t j = 0; j < X.values.cols; ++j) {
        double sum = 0.0;
        std::size_t observed = 0;
        for (std::size_t i = 0; i < X.rows(); ++i) {
            if (X.missing(i, j)) continue;
            sum += X.values.at(i, j);
            ++observed;
        }
        if (observed == 0) {
            throw DataError("all values missing in column " +
                            std::string(kFeatureColumns[j]));
        }
        model.column_means[j] = sum / static_cast<double>(observed);
    }
    return model;
}

FeatureMatrix apply_imputer(const ImputerModel& model, const FeatureMatrix& X) {
    check_shape(model.column_means, X, "imputer");
    FeatureMatrix out = X;
    for (std::size_t i = 0; i < X.rows(); ++i) {
        for (std::size_t j = 0; j < X.values.cols; ++j) {
            if (X.missing(i, j)) out.values.at(i, j) = model.column_means[j];
        }
    }
    out.mask.assign(out.mask.size(), 0);
    return out;
}

ScalerModel fit_scaler(const FeatureMatrix& X) {
    if (X.rows() == 0) throw DataError("empty dataset");
    if (X.any_missing()) throw DataError("scaler input has missing values");
    std::size_t n = X.rows();
    ScalerModel model;
    model.column_means.assign(X.values.cols, 0.0);
    model.column_stds.assign(X.values.cols, 0.0);
    model.zero_variance.assign(X.values.cols, 0);
    for (std::size_t j = 0; j < X.values.cols; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += X.values.at(i, j);
        double mean = sum / static_cast<double>(n);
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = X.values.at(i, j) - mean;
            sq += d * d;
        }
        double var = sq / static_cast<double>(n);
        model.column_means[j] = mean;
        model.column_stds[j] = std::sqrt(var);
        if (model.column_stds[j] == 0.0) model.zero_variance[j] = 1;
    }
    return model;
}

FeatureMatrix apply_scaler(const ScalerModel& model, const FeatureMatrix& X) {
    check_shape(model.column_means, X, "scaler");
    if (X.any_missing()) throw DataError("scaler input has missing values");
    FeatureMatrix out = X;
    for (std::size_t j = 0; j < X.values.cols; ++j) {
        double mean = model.column_means[j];
        double std_ = model.zero_variance[j] ? 1.0 : model.column_stds[j];
        for (std::size_t i = 0; i < X.rows(); ++i) {
            out.values.at(i, j) = (X.values.at(i, j) - mean) / std_;
        }
    }
    return out;
}

namespace {

nlohmann::ordered_json column_names_json() {
    auto names = nlohmann::ordered_json::array();
    for (auto name : kFeatureColumns) names.push_back(std::string(name));
    return names;
}

} // namespace

std::string imputer_to_json(const ImputerModel& model) {
    nlohmann::ordered_json j;
    j["columns"] = column_names_json();
    j["means"] = model.column_means;
    return j.dump(2);
}

std::string scaler_to_json(const ScalerModel& model) {
    nlohmann::ordered_json j;
    j["columns"] = column_names_json();
    j["means"] = model.column_means;
    j["stds"] = model.column_stds;
    j["zero_variance"] = model.zero_variance;
    return j.dump(2);
}

} // namespace copd
