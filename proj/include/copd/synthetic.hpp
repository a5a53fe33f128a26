#pragma once

#include "copd/model.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace copd {

struct SyntheticSpec {
    std::size_t n_total = 12131;
    // (mild, severe, unlabeled) proportions. The reference cohort reports
    // 0.2706 / 0.4404 / 0.2875, which sums to 0.9985; the defaults are that
    // trio rescaled so the partition is exact.
    std::array<double, 3> target_mix = {0.2706 / 0.9985, 0.4404 / 0.9985,
                                        0.2875 / 0.9985};
    double missing_rate = 0.05;
    std::uint64_t seed = 42;

    void validate() const; // mix sums to 1 +- 1e-9, n_total >= 1
};

// Deterministic cohort whose blood-gas values are drawn so the rule
// labeler assigns each sample its intended category (checked per sample;
// more than 100 redraws raises "infeasible mix"). Missing values are
// injected on hr/rr/spo2 for labeled categories and on all eight
// measurements for unlabeled ones.
std::vector<PatientSample> generate_synthetic_cohort(
    const SyntheticSpec& spec, const NormalRanges& ranges = NormalRanges{});

} // namespace copd
