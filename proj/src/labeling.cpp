#include "copd/labeling.hpp"

#include "copd/csv.hpp"
#include "copd/errors.hpp"

namespace copd {

Severity classify_severity(const PatientSample& sample, const NormalRanges& ranges) {
    if (!sample.ph || !sample.po2 || !sample.pco2 || !sample.be || !sample.tco2) {
        return Severity::unlabeled;
    }
    bool ph_in = ranges.ph.contains(*sample.ph);
    bool po2_in = ranges.po2.contains(*sample.po2);
    bool pco2_in = ranges.pco2.contains(*sample.pco2);
    bool be_in = ranges.be.contains(*sample.be);
    bool tco2_in = ranges.tco2.contains(*sample.tco2);

    if (ph_in && po2_in && pco2_in && be_in && tco2_in) {
        return Severity::mild_to_moderate;
    }
    if (ph_in && (pco2_in || tco2_in || be_in)) {
        return Severity::mild_to_moderate;
    }
    if (!ph_in && !po2_in && !pco2_in && !be_in && !tco2_in) {
        return Severity::severe;
    }
    if (!ph_in && (!pco2_in || !tco2_in || !be_in)) {
        return Severity::severe;
    }
    return Severity::unlabeled;
}

LabeledDataset label_dataset(const std::vector<PatientSample>& samples,
                             const NormalRanges& ranges) {
    ranges.validate();
    LabeledDataset out;
    out.labels.reserve(samples.size());
    for (const auto& s : samples) {
        Severity label = classify_severity(s, ranges);
        out.labels.push_back(label);
        switch (label) {
        case Severity::mild_to_moderate: ++out.summary.n_mild; break;
        case Severity::severe: ++out.summary.n_severe; break;
        default: ++out.summary.n_unlabeled;
        }
    }
    return out;
}

void write_labels_csv(const std::string& path, const std::vector<Severity>& labels) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        rows.push_back({std::to_string(i), severity_code(labels[i])});
    }
    write_csv(path, {"row_index", "label"}, rows);
}

std::vector<Severity> read_labels_csv(const std::string& path) {
    CsvTable table = read_csv(path);
    std::size_t idx_col = table.column("row_index");
    std::size_t label_col = table.column("label");
    std::vector<Severity> labels(table.rows.size(), Severity::unlabeled);
    for (const auto& row : table.rows) {
        auto idx = parse_int_cell(row[idx_col], path);
        if (idx < 0 || static_cast<std::size_t>(idx) >= labels.size()) {
            throw DataError("row_index out of range in " + path);
        }
        labels[static_cast<std::size_t>(idx)] = parse_severity(row[label_col]);
    }
    return labels;
}

} // namespace copd
