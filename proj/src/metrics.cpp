#include "copd/metrics.hpp"

#include "copd/errors.hpp"
#include "copd/rng.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace copd {

FoldAssignment stratified_kfold(const std::vector<int>& labels, std::size_t k,
                                std::uint64_t seed) {
    if (k < 2) throw ConfigError("cv folds must be at least 2");
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[labels[i]].push_back(i);
    }
    for (const auto& [label, members] : by_class) {
        if (members.size() < k) {
            throw DataError("class " + std::to_string(label) + " smaller than k");
        }
    }
    FoldAssignment assignment;
    assignment.k = k;
    assignment.fold_of.assign(labels.size(), 0);
    Rng rng = derive_stream(seed, "stratified_kfold");
    for (auto& [label, members] : by_class) {
        rng.shuffle(members);
        for (std::size_t pos = 0; pos < members.size(); ++pos) {
            assignment.fold_of[members[pos]] = pos % k;
        }
    }
    return assignment;
}

Confusion confusion_matrix(const std::vector<int>& y_true,
                           const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size()) throw DataError("length mismatch");
    Confusion cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 1) {
            y_pred[i] == 1 ? ++cm.tp : ++cm.fn;
        } else {
            y_pred[i] == 1 ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

BinaryMetrics binary_metrics(const Confusion& cm) {
    BinaryMetrics m;
    std::size_t total = cm.total();
    if (total == 0) throw DataError("empty confusion matrix");
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
    if (cm.tp + cm.fp == 0) {
        m.warnings.push_back("precision undefined (no predicted positives), reported 0");
    } else {
        m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    }
    if (cm.tp + cm.fn == 0) {
        m.warnings.push_back("recall undefined (no actual positives), reported 0");
    } else {
        m.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    }
    if (m.precision + m.recall == 0.0) {
        m.warnings.push_back("f1 undefined (zero precision and recall), reported 0");
    } else {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    return m;
}

namespace {

void check_both_classes(const std::vector<int>& y_true) {
    bool has0 = false;
    bool has1 = false;
    for (int y : y_true) (y == 1 ? has1 : has0) = true;
    if (!has0 || !has1) throw DataError("single-class y_true");
}

} // namespace

double roc_auc(const std::vector<double>& scores, const std::vector<int>& y_true) {
    if (scores.size() != y_true.size()) throw DataError("length mismatch");
    check_both_classes(y_true);
    std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Midranks: tied scores share the average of their 1-based ranks.
    double pos_rank_sum = 0.0;
    std::size_t n_pos = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) {
            if (y_true[order[t]] == 1) {
                pos_rank_sum += midrank;
                ++n_pos;
            }
        }
        i = j;
    }
    std::size_t n_neg = n - n_pos;
    double u = pos_rank_sum -
               static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<int>& y_true) {
    if (scores.size() != y_true.size()) throw DataError("length mismatch");
    check_both_classes(y_true);
    std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::size_t n_pos = 0;
    for (int y : y_true) n_pos += static_cast<std::size_t>(y);
    std::size_t n_neg = n - n_pos;

    std::vector<RocPoint> points;
    points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < n) {
        double threshold = scores[order[i]];
        while (i < n && scores[order[i]] == threshold) {
            if (y_true[order[i]] == 1) {
                ++tp;
            } else {
                ++fp;
            }
            ++i;
        }
        points.push_back({threshold,
                          static_cast<double>(fp) / static_cast<double>(n_neg),
                          static_cast<double>(tp) / static_cast<double>(n_pos)});
    }
    return points;
}

double roc_trapezoid(const std::vector<RocPoint>& points) {
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        double dx = points[i].fpr - points[i - 1].fpr;
        area += dx * (points[i].tpr + points[i - 1].tpr) / 2.0;
    }
    return area;
}

} // namespace copd
