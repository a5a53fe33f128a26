#pragma once

#include "copd/model.hpp"

#include <string>
#include <vector>

namespace copd {

struct LabelSummary {
    std::size_t n_mild = 0;
    std::size_t n_severe = 0;
    std::size_t n_unlabeled = 0;

    std::size_t total() const { return n_mild + n_severe + n_unlabeled; }
};

// Rule cascade over the five blood-gas parameters {ph, po2, pco2, be, tco2}:
//   1. all five inside their intervals                      -> mild (0)
//   2. ph inside and any of {pco2, tco2, be} inside         -> mild (0)
//   3. all five outside                                     -> severe (1)
//   4. ph outside and any of {pco2, tco2, be} outside       -> severe (1)
//   5. otherwise                                            -> unlabeled
// PO2 participates only in the all-five rules. Any missing decisive
// parameter makes the sample unlabeled; the rule runs on raw values.
Severity classify_severity(const PatientSample& sample, const NormalRanges& ranges);

struct LabeledDataset {
    std::vector<Severity> labels;
    LabelSummary summary;
};

LabeledDataset label_dataset(const std::vector<PatientSample>& samples,
                             const NormalRanges& ranges);

// labels.csv: header `row_index,label`, label in {0, 1, unlabeled}.
void write_labels_csv(const std::string& path, const std::vector<Severity>& labels);
std::vector<Severity> read_labels_csv(const std::string& path);

} // namespace copd
