#pragma once

#include "copd/model.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace copd {

struct DiagnosisRow {
    long long subject_id = 0;
    long long hadm_id = 0;
    long long seq_num = 0;
    std::string icd9_code;
};

struct DItemRow {
    long long itemid = 0;
    std::string label;
};

struct ChartEventRow {
    long long subject_id = 0;
    long long hadm_id = 0;
    long long icustay_id = 0;
    long long itemid = 0;
    Timestamp charttime;
    std::optional<double> valuenum;
};

struct DemographicRow {
    long long hadm_id = 0;
    double age = 0.0;
    Gender gender = Gender::female;
};

struct RawTables {
    std::vector<DiagnosisRow> diagnoses;
    std::vector<DItemRow> d_items;
    std::vector<ChartEventRow> chartevents;
    std::vector<DemographicRow> demographics;
};

// Reads diagnoses.csv, d_items.csv, chartevents.csv, demographics.csv.
RawTables load_raw_tables(const std::string& dir);

inline const std::vector<std::string> kDefaultIcdPrefixes = {"490", "491", "492",
                                                             "496"};

// Measurement field -> chart item label, in feature order. Labels follow
// the common metavision naming and are overridable via config.
std::vector<std::pair<std::string, std::string>> default_item_labels();

// hadm_ids whose icd9_code starts with any prefix.
std::set<long long> select_copd_admissions(const std::vector<DiagnosisRow>& diagnoses,
                                           const std::vector<std::string>& prefixes);

// Case-insensitive exact label match; every wanted label must resolve
// uniquely.
std::map<std::string, long long> resolve_item_ids(
    const std::vector<DItemRow>& d_items, const std::vector<std::string>& wanted);

struct PivotStats {
    std::size_t groups = 0;
    std::size_t dropped_empty_groups = 0;
    std::size_t skipped_bad_values = 0;  // missing or non-finite valuenum
    std::size_t duplicate_overwrites = 0; // same itemid twice in one group
};

// Groups chartevents by exact (hadm_id, charttime), places measurements by
// itemid (last occurrence in file order wins), attaches demographics, and
// returns samples sorted by (hadm_id, charttime). item_map keys are the
// eight measurement field names (po2, pco2, ph, be, tco2, hr, rr, spo2).
std::vector<PatientSample> pivot_chartevents(
    const std::vector<ChartEventRow>& chartevents, const std::set<long long>& admissions,
    const std::map<std::string, long long>& item_map,
    const std::vector<DemographicRow>& demographics, PivotStats& stats);

// samples.csv round trip; empty cell = missing, gender as F/M.
void write_samples_csv(const std::string& path,
                       const std::vector<PatientSample>& samples);
std::vector<PatientSample> read_samples_csv(const std::string& path);

} // namespace copd
