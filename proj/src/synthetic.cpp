#include "copd/synthetic.hpp"

#include "copd/errors.hpp"
#include "copd/labeling.hpp"
#include "copd/rng.hpp"

#include <algorithm>
#include <cmath>

namespace copd {

void SyntheticSpec::validate() const {
    if (n_total < 1) throw ConfigError("n_total must be at least 1");
    double sum = target_mix[0] + target_mix[1] + target_mix[2];
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("target_mix must sum to 1");
    for (double p : target_mix) {
        if (p < 0.0) throw ConfigError("target_mix entries must be non-negative");
    }
    if (missing_rate < 0.0 || missing_rate >= 1.0) {
        throw ConfigError("missing_rate must be in [0,1)");
    }
}

namespace {

// Physiologic caps bounding the outside-of-normal draws.
struct Caps {
    Interval ph{6.8, 7.8};
    Interval po2{20.0, 150.0};
    Interval pco2{15.0, 100.0};
    Interval be{-15.0, 15.0};
    Interval tco2{5.0, 50.0};
};

double draw_inside(Rng& rng, const Interval& normal) {
    return rng.uniform(normal.lo, normal.hi);
}

double draw_outside(Rng& rng, const Interval& normal, const Interval& cap) {
    double low_width = std::max(0.0, normal.lo - cap.lo);
    double high_width = std::max(0.0, cap.hi - normal.hi);
    if (low_width <= 0.0 && high_width <= 0.0) {
        // No room outside the normal range: fall back to an inside draw and
        // let the per-sample oracle check decide whether the category is
        // still reachable (otherwise the redraw loop raises "infeasible mix").
        return draw_inside(rng, normal);
    }
    bool go_low = rng.uniform(0.0, low_width + high_width) < low_width;
    if (go_low) {
        double v = rng.uniform(cap.lo, normal.lo);
        if (v >= normal.lo) v = std::nextafter(normal.lo, cap.lo);
        return v;
    }
    double v = rng.uniform(normal.hi, cap.hi);
    if (v <= normal.hi) v = std::nextafter(normal.hi, cap.hi);
    return v;
}

double draw_gas(Rng& rng, bool inside, const Interval& normal, const Interval& cap) {
    return inside ? draw_inside(rng, normal) : draw_outside(rng, normal, cap);
}

double clipped_normal(Rng& rng, double mean, double std, double lo, double hi) {
    return std::clamp(mean + std * rng.normal(), lo, hi);
}

PatientSample draw_sample(Rng& rng, Severity category, const NormalRanges& ranges,
                          const Caps& caps) {
    PatientSample s;
    s.age = rng.uniform(45.0, 90.0);
    s.gender = rng.bernoulli(0.5) ? Gender::male : Gender::female;

    bool ph_in, po2_in, pco2_in, be_in, tco2_in;
    const double p_in = 0.7;
    if (category == Severity::mild_to_moderate) {
        // ph inside plus at least one of {pco2, be, tco2} inside.
        ph_in = true;
        po2_in = rng.bernoulli(p_in);
        pco2_in = rng.bernoulli(p_in);
        be_in = rng.bernoulli(p_in);
        tco2_in = rng.bernoulli(p_in);
        if (!pco2_in && !be_in && !tco2_in) pco2_in = true;
    } else if (category == Severity::severe) {
        // ph outside plus at least one of {pco2, be, tco2} outside.
        ph_in = false;
        po2_in = rng.bernoulli(1.0 - p_in);
        pco2_in = rng.bernoulli(1.0 - p_in);
        be_in = rng.bernoulli(1.0 - p_in);
        tco2_in = rng.bernoulli(1.0 - p_in);
        if (pco2_in && be_in && tco2_in) pco2_in = false;
    } else {
        // Neither cascade branch fires: either ph inside with every
        // companion outside, or ph outside with every companion inside.
        bool ph_branch = rng.bernoulli(0.5);
        ph_in = ph_branch;
        pco2_in = !ph_branch;
        be_in = !ph_branch;
        tco2_in = !ph_branch;
        po2_in = rng.bernoulli(0.5);
    }

    s.ph = draw_gas(rng, ph_in, ranges.ph, caps.ph);
    s.po2 = draw_gas(rng, po2_in, ranges.po2, caps.po2);
    s.pco2 = draw_gas(rng, pco2_in, ranges.pco2, caps.pco2);
    s.be = draw_gas(rng, be_in, ranges.be, caps.be);
    s.tco2 = draw_gas(rng, tco2_in, ranges.tco2, caps.tco2);

    // Category-conditioned vitals give the classifiers signal beyond the
    // decisive gases.
    switch (category) {
    case Severity::mild_to_moderate:
        s.hr = clipped_normal(rng, 88.0, 12.0, 40.0, 180.0);
        s.rr = clipped_normal(rng, 19.0, 4.0, 8.0, 50.0);
        s.spo2 = clipped_normal(rng, 95.0, 2.5, 50.0, 100.0);
        break;
    case Severity::severe:
        s.hr = clipped_normal(rng, 104.0, 15.0, 40.0, 180.0);
        s.rr = clipped_normal(rng, 26.0, 5.0, 8.0, 50.0);
        s.spo2 = clipped_normal(rng, 88.0, 4.0, 50.0, 100.0);
        break;
    default:
        s.hr = clipped_normal(rng, 95.0, 14.0, 40.0, 180.0);
        s.rr = clipped_normal(rng, 22.0, 5.0, 8.0, 50.0);
        s.spo2 = clipped_normal(rng, 92.0, 3.5, 50.0, 100.0);
    }
    return s;
}

void inject_missing(Rng& rng, PatientSample& s, Severity category,
                    double missing_rate) {
    if (missing_rate <= 0.0) return;
    auto drop = [&](std::optional<double>& field) {
        if (rng.bernoulli(missing_rate)) field.reset();
    };
    if (category == Severity::unlabeled) {
        drop(s.po2);
        drop(s.pco2);
        drop(s.ph);
        drop(s.be);
        drop(s.tco2);
    }
    drop(s.hr);
    drop(s.rr);
    drop(s.spo2);
}

std::array<std::size_t, 3> allocate_counts(const SyntheticSpec& spec) {
    // Largest-remainder rounding of n_total * target_mix.
    std::array<std::size_t, 3> counts{};
    std::array<double, 3> remainders{};
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        double raw = static_cast<double>(spec.n_total) * spec.target_mix[c];
        counts[c] = static_cast<std::size_t>(std::floor(raw + 1e-9));
        remainders[c] = raw - static_cast<double>(counts[c]);
        assigned += counts[c];
    }
    std::array<std::size_t, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainders[a] != remainders[b]) return remainders[a] > remainders[b];
        return a < b;
    });
    for (std::size_t i = 0; assigned < spec.n_total; ++i) {
        ++counts[order[i % 3]];
        ++assigned;
    }
    return counts;
}

} // namespace

std::vector<PatientSample> generate_synthetic_cohort(const SyntheticSpec& spec,
                                                     const NormalRanges& ranges) {
    spec.validate();
    ranges.validate();
    Caps caps;

    std::array<std::size_t, 3> counts = allocate_counts(spec);
    std::vector<Severity> categories;
    categories.reserve(spec.n_total);
    static const std::array<Severity, 3> kOrder = {
        Severity::mild_to_moderate, Severity::severe, Severity::unlabeled};
    for (std::size_t c = 0; c < 3; ++c) {
        categories.insert(categories.end(), counts[c], kOrder[c]);
    }
    Rng mix_rng = derive_stream(spec.seed, "synth_mix");
    mix_rng.shuffle(categories);

    Timestamp base = Timestamp::from_civil(2150, 1, 1, 0, 0);
    std::vector<PatientSample> samples;
    samples.reserve(spec.n_total);
    for (std::size_t i = 0; i < spec.n_total; ++i) {
        Rng rng = derive_stream(spec.seed, "synth_sample", i);
        Severity category = categories[i];
        PatientSample sample;
        bool ok = false;
        for (int attempt = 0; attempt <= 100; ++attempt) {
            sample = draw_sample(rng, category, ranges, caps);
            inject_missing(rng, sample, category, spec.missing_rate);
            if (classify_severity(sample, ranges) == category) {
                ok = true;
                break;
            }
        }
        if (!ok) throw DataError("infeasible mix");
        sample.icustay_id = 100000 + static_cast<long long>(i);
        sample.hadm_id = 200000 + static_cast<long long>(i);
        sample.charttime = Timestamp{base.minutes + static_cast<long long>(i)};
        samples.push_back(sample);
    }
    return samples;
}

} // namespace copd
