#include "copd/evaluate.hpp"

#include "copd/csv.hpp"
#include "copd/errors.hpp"
#include "copd/forest.hpp"
#include "copd/knn.hpp"
#include "copd/preprocessing.hpp"
#include "copd/svm.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace copd {

namespace {

FeatureMatrix take_rows(const FeatureMatrix& X, const std::vector<std::size_t>& rows) {
    FeatureMatrix out;
    out.values = Matrix(rows.size(), X.values.cols);
    out.mask.assign(rows.size() * X.values.cols, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < X.values.cols; ++j) {
            out.values.at(i, j) = X.values.at(rows[i], j);
            out.mask[i * X.values.cols + j] = X.mask[rows[i] * X.values.cols + j];
        }
    }
    return out;
}

struct FoldScores {
    std::vector<int> predicted;
    std::vector<double> scores; // continuous, for ROC
};

FoldScores score_fold(const ClassifierSpec& spec, const Matrix& train_X,
                      const std::vector<int>& train_y, const Matrix& test_X) {
    FoldScores out;
    switch (spec.kind) {
    case ClassifierKind::random_forest: {
        RandomForest forest = train_random_forest(train_X, train_y, spec.rf);
        Matrix proba = forest_predict_proba(forest, test_X);
        out.predicted = proba_argmax(proba);
        out.scores.resize(proba.rows);
        for (std::size_t i = 0; i < proba.rows; ++i) out.scores[i] = proba.at(i, 1);
        break;
    }
    case ClassifierKind::knn: {
        if (spec.knn.k == 0) throw ConfigError("knn k not set (run select_k first)");
        KnnPrediction pred = knn_predict(train_X, train_y, test_X, spec.knn.k);
        out.predicted = pred.labels;
        out.scores.resize(pred.proba.rows);
        for (std::size_t i = 0; i < pred.proba.rows; ++i) {
            out.scores[i] = pred.proba.at(i, 1);
        }
        break;
    }
    case ClassifierKind::svm: {
        SvmModel model = train_svm_smo(train_X, train_y, spec.svm);
        out.scores = svm_decision(model, test_X);
        out.predicted.resize(out.scores.size());
        for (std::size_t i = 0; i < out.scores.size(); ++i) {
            out.predicted[i] = out.scores[i] > 0.0 ? 1 : 0;
        }
        break;
    }
    }
    return out;
}

MetricStat aggregate(const std::vector<double>& per_fold) {
    MetricStat stat;
    stat.per_fold = per_fold;
    double sum = 0.0;
    for (double v : per_fold) sum += v;
    stat.mean = sum / static_cast<double>(per_fold.size());
    double sq = 0.0;
    for (double v : per_fold) {
        double d = v - stat.mean;
        sq += d * d;
    }
    stat.std = std::sqrt(sq / static_cast<double>(per_fold.size()));
    return stat;
}

} // namespace

MetricsReport cross_validate(const FeatureMatrix& X, const std::vector<int>& y,
                             const ClassifierSpec& spec, std::size_t k,
                             std::uint64_t seed, bool paper_faithful) {
    if (X.rows() != y.size()) throw DataError("label count mismatch");
    FoldAssignment folds = stratified_kfold(y, k, seed);

    MetricsReport report;
    report.classifier = classifier_name(spec.kind);
    report.folds = k;
    report.seed = seed;
    report.mode = paper_faithful ? "paper_faithful" : "leakage_safe";

    FeatureMatrix global;
    if (paper_faithful) {
        ImputerModel imputer = fit_imputer(X);
        FeatureMatrix imputed = apply_imputer(imputer, X);
        ScalerModel scaler = fit_scaler(imputed);
        global = apply_scaler(scaler, imputed);
    }

    std::vector<double> acc, prec, rec, f1, auc;
    for (std::size_t fold = 0; fold < k; ++fold) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t i = 0; i < y.size(); ++i) {
            (folds.fold_of[i] == fold ? test_rows : train_rows).push_back(i);
        }
        std::vector<int> train_y(train_rows.size());
        for (std::size_t i = 0; i < train_rows.size(); ++i) train_y[i] = y[train_rows[i]];
        std::vector<int> test_y(test_rows.size());
        for (std::size_t i = 0; i < test_rows.size(); ++i) test_y[i] = y[test_rows[i]];

        Matrix train_X, test_X;
        if (paper_faithful) {
            train_X = take_rows(global, train_rows).values;
            test_X = take_rows(global, test_rows).values;
        } else {
            FeatureMatrix train_raw = take_rows(X, train_rows);
            FeatureMatrix test_raw = take_rows(X, test_rows);
            ImputerModel imputer = fit_imputer(train_raw);
            FeatureMatrix train_imputed = apply_imputer(imputer, train_raw);
            ScalerModel scaler = fit_scaler(train_imputed);
            train_X = apply_scaler(scaler, train_imputed).values;
            test_X = apply_scaler(scaler, apply_imputer(imputer, test_raw)).values;
        }

        FoldScores scored = score_fold(spec, train_X, train_y, test_X);
        Confusion cm = confusion_matrix(test_y, scored.predicted);
        BinaryMetrics m = binary_metrics(cm);
        for (const std::string& w : m.warnings) {
            report.warnings.push_back("fold " + std::to_string(fold) + ": " + w);
        }
        report.confusion.tn += cm.tn;
        report.confusion.fp += cm.fp;
        report.confusion.fn += cm.fn;
        report.confusion.tp += cm.tp;
        acc.push_back(m.accuracy);
        prec.push_back(m.precision);
        rec.push_back(m.recall);
        f1.push_back(m.f1);
        auc.push_back(roc_auc(scored.scores, test_y));
        report.roc.push_back(roc_curve(scored.scores, test_y));
    }

    report.metrics = {
        {"accuracy", aggregate(acc)}, {"precision", aggregate(prec)},
        {"recall", aggregate(rec)},   {"f1", aggregate(f1)},
        {"roc_auc", aggregate(auc)},
    };
    return report;
}

std::string metrics_to_json(const MetricsReport& report) {
    nlohmann::ordered_json j;
    j["classifier"] = report.classifier;
    j["folds"] = report.folds;
    j["seed"] = report.seed;
    j["mode"] = report.mode;
    auto metrics = nlohmann::ordered_json::object();
    for (const auto& [name, stat] : report.metrics) {
        metrics[name] = {
            {"mean", stat.mean}, {"std", stat.std}, {"per_fold", stat.per_fold}};
    }
    j["metrics"] = metrics;
    j["confusion"] = {{"tn", report.confusion.tn},
                      {"fp", report.confusion.fp},
                      {"fn", report.confusion.fn},
                      {"tp", report.confusion.tp}};
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

void write_metrics_json(const std::string& path, const MetricsReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << metrics_to_json(report);
    if (!out) throw DataError("write failed: " + path);
}

std::string roc_to_csv(const std::vector<RocPoint>& points) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(points.size());
    for (const RocPoint& p : points) {
        rows.push_back({std::isinf(p.threshold) ? "inf" : format_double(p.threshold),
                        format_double(p.fpr), format_double(p.tpr)});
    }
    return csv_to_string({"threshold", "fpr", "tpr"}, rows);
}

std::vector<std::string> write_roc_csvs(const std::string& dir,
                                        const MetricsReport& report) {
    std::vector<std::string> written;
    for (std::size_t fold = 0; fold < report.roc.size(); ++fold) {
        std::string name = "roc_" + report.classifier + "_fold" +
                           std::to_string(fold) + ".csv";
        std::ofstream out(dir + "/" + name, std::ios::binary);
        if (!out) throw DataError("cannot write " + dir + "/" + name);
        out << roc_to_csv(report.roc[fold]);
        if (!out) throw DataError("write failed: " + dir + "/" + name);
        written.push_back(name);
    }
    return written;
}

} // namespace copd
