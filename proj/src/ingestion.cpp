#include "copd/ingestion.hpp"

#include "copd/csv.hpp"
#include "copd/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

namespace copd {

namespace {

std::string lowercase(const std::string& text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

RawTables load_raw_tables(const std::string& dir) {
    RawTables tables;

    CsvTable diagnoses = read_csv(dir + "/diagnoses.csv");
    {
        std::size_t subject = diagnoses.column("subject_id");
        std::size_t hadm = diagnoses.column("hadm_id");
        std::size_t seq = diagnoses.column("seq_num");
        std::size_t icd = diagnoses.column("icd9_code");
        for (const auto& row : diagnoses.rows) {
            tables.diagnoses.push_back({parse_int_cell(row[subject], "diagnoses.csv"),
                                        parse_int_cell(row[hadm], "diagnoses.csv"),
                                        parse_int_cell(row[seq], "diagnoses.csv"),
                                        row[icd]});
        }
    }

    CsvTable d_items = read_csv(dir + "/d_items.csv");
    {
        std::size_t itemid = d_items.column("itemid");
        std::size_t label = d_items.column("label");
        for (const auto& row : d_items.rows) {
            tables.d_items.push_back(
                {parse_int_cell(row[itemid], "d_items.csv"), row[label]});
        }
    }

    CsvTable chartevents = read_csv(dir + "/chartevents.csv");
    {
        std::size_t subject = chartevents.column("subject_id");
        std::size_t hadm = chartevents.column("hadm_id");
        std::size_t icustay = chartevents.column("icustay_id");
        std::size_t itemid = chartevents.column("itemid");
        std::size_t charttime = chartevents.column("charttime");
        std::size_t valuenum = chartevents.column("valuenum");
        for (const auto& row : chartevents.rows) {
            tables.chartevents.push_back(
                {parse_int_cell(row[subject], "chartevents.csv"),
                 parse_int_cell(row[hadm], "chartevents.csv"),
                 parse_int_cell(row[icustay], "chartevents.csv"),
                 parse_int_cell(row[itemid], "chartevents.csv"),
                 Timestamp::parse(row[charttime]),
                 parse_double_cell(row[valuenum], "chartevents.csv")});
        }
    }

    CsvTable demographics = read_csv(dir + "/demographics.csv");
    {
        std::size_t hadm = demographics.column("hadm_id");
        std::size_t age = demographics.column("age");
        std::size_t gender = demographics.column("gender");
        for (const auto& row : demographics.rows) {
            auto age_value = parse_double_cell(row[age], "demographics.csv");
            if (!age_value) throw DataError("missing age in demographics.csv");
            tables.demographics.push_back({parse_int_cell(row[hadm], "demographics.csv"),
                                           *age_value, parse_gender(row[gender])});
        }
    }
    return tables;
}

std::vector<std::pair<std::string, std::string>> default_item_labels() {
    return {
        {"po2", "Arterial O2 pressure"},
        {"pco2", "Arterial CO2 Pressure"},
        {"ph", "PH (Arterial)"},
        {"be", "Arterial Base Excess"},
        {"tco2", "Calculated Total CO2"},
        {"hr", "Heart Rate"},
        {"rr", "Respiratory Rate"},
        {"spo2", "O2 saturation pulseoxymetry"},
    };
}

std::set<long long> select_copd_admissions(const std::vector<DiagnosisRow>& diagnoses,
                                           const std::vector<std::string>& prefixes) {
    if (prefixes.empty()) throw ConfigError("no diagnosis codes configured");
    std::set<long long> admissions;
    for (const auto& row : diagnoses) {
        for (const auto& prefix : prefixes) {
            if (row.icd9_code.rfind(prefix, 0) == 0) {
                admissions.insert(row.hadm_id);
                break;
            }
        }
    }
    return admissions;
}

std::map<std::string, long long> resolve_item_ids(
    const std::vector<DItemRow>& d_items, const std::vector<std::string>& wanted) {
    if (wanted.empty()) throw ConfigError("no item labels configured");
    std::map<std::string, long long> resolved;
    for (const auto& label : wanted) {
        std::string needle = lowercase(label);
        bool found = false;
        long long itemid = 0;
        for (const auto& row : d_items) {
            if (lowercase(row.label) != needle) continue;
            if (found) throw DataError("ambiguous itemid for label: " + label);
            found = true;
            itemid = row.itemid;
        }
        if (!found) throw DataError("unresolved item label: " + label);
        resolved[label] = itemid;
    }
    return resolved;
}

std::vector<PatientSample> pivot_chartevents(
    const std::vector<ChartEventRow>& chartevents, const std::set<long long>& admissions,
    const std::map<std::string, long long>& item_map,
    const std::vector<DemographicRow>& demographics, PivotStats& stats) {
    static const std::vector<std::string> kFields = {"po2", "pco2", "ph",  "be",
                                                     "tco2", "hr",   "rr", "spo2"};
    for (const auto& field : kFields) {
        if (item_map.find(field) == item_map.end()) {
            throw ConfigError("item_map missing field: " + field);
        }
    }
    std::map<long long, std::size_t> field_of_item;
    for (std::size_t f = 0; f < kFields.size(); ++f) {
        field_of_item[item_map.at(kFields[f])] = f;
    }
    std::map<long long, const DemographicRow*> demo_of;
    for (const auto& row : demographics) {
        demo_of.emplace(row.hadm_id, &row);
    }

    struct Group {
        long long icustay_id = 0;
        std::array<std::optional<double>, 8> fields;
    };
    std::map<std::pair<long long, long long>, Group> groups;

    stats = PivotStats{};
    for (const auto& event : chartevents) {
        if (admissions.find(event.hadm_id) == admissions.end()) continue;
        auto field_it = field_of_item.find(event.itemid);
        if (field_it == field_of_item.end()) continue;
        if (!event.valuenum || !std::isfinite(*event.valuenum)) {
            ++stats.skipped_bad_values;
            continue;
        }
        Group& group = groups[{event.hadm_id, event.charttime.minutes}];
        group.icustay_id = event.icustay_id;
        if (group.fields[field_it->second]) ++stats.duplicate_overwrites;
        group.fields[field_it->second] = *event.valuenum;
    }

    std::vector<PatientSample> samples;
    samples.reserve(groups.size());
    for (const auto& [key, group] : groups) {
        ++stats.groups;
        bool any = std::any_of(group.fields.begin(), group.fields.end(),
                               [](const auto& f) { return f.has_value(); });
        if (!any) {
            ++stats.dropped_empty_groups;
            continue;
        }
        auto demo_it = demo_of.find(key.first);
        if (demo_it == demo_of.end()) {
            throw DataError("demographics missing for hadm_id " +
                            std::to_string(key.first));
        }
        PatientSample sample;
        sample.icustay_id = group.icustay_id;
        sample.hadm_id = key.first;
        sample.charttime = Timestamp{key.second};
        sample.age = demo_it->second->age;
        sample.gender = demo_it->second->gender;
        sample.po2 = group.fields[0];
        sample.pco2 = group.fields[1];
        sample.ph = group.fields[2];
        sample.be = group.fields[3];
        sample.tco2 = group.fields[4];
        sample.hr = group.fields[5];
        sample.rr = group.fields[6];
        sample.spo2 = group.fields[7];
        validate_sample(sample, samples.size());
        samples.push_back(sample);
    }
    return samples;
}

void write_samples_csv(const std::string& path,
                       const std::vector<PatientSample>& samples) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(samples.size());
    auto cell = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto& s : samples) {
        rows.push_back({std::to_string(s.icustay_id), std::to_string(s.hadm_id),
                        s.charttime.to_string(), format_double(s.age),
                        gender_code(s.gender), cell(s.po2), cell(s.pco2), cell(s.ph),
                        cell(s.be), cell(s.tco2), cell(s.hr), cell(s.rr),
                        cell(s.spo2)});
    }
    write_csv(path,
              {"icustay_id", "hadm_id", "charttime", "age", "gender", "po2", "pco2",
               "ph", "be", "tco2", "hr", "rr", "spo2"},
              rows);
}

std::vector<PatientSample> read_samples_csv(const std::string& path) {
    CsvTable table = read_csv(path);
    std::size_t icustay = table.column("icustay_id");
    std::size_t hadm = table.column("hadm_id");
    std::size_t charttime = table.column("charttime");
    std::size_t age = table.column("age");
    std::size_t gender = table.column("gender");
    std::size_t po2 = table.column("po2");
    std::size_t pco2 = table.column("pco2");
    std::size_t ph = table.column("ph");
    std::size_t be = table.column("be");
    std::size_t tco2 = table.column("tco2");
    std::size_t hr = table.column("hr");
    std::size_t rr = table.column("rr");
    std::size_t spo2 = table.column("spo2");

    std::vector<PatientSample> samples;
    samples.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        PatientSample s;
        s.icustay_id = parse_int_cell(row[icustay], path);
        s.hadm_id = parse_int_cell(row[hadm], path);
        s.charttime = Timestamp::parse(row[charttime]);
        auto age_value = parse_double_cell(row[age], path);
        if (!age_value) throw DataError("missing age in " + path);
        s.age = *age_value;
        s.gender = parse_gender(row[gender]);
        s.po2 = parse_double_cell(row[po2], path);
        s.pco2 = parse_double_cell(row[pco2], path);
        s.ph = parse_double_cell(row[ph], path);
        s.be = parse_double_cell(row[be], path);
        s.tco2 = parse_double_cell(row[tco2], path);
        s.hr = parse_double_cell(row[hr], path);
        s.rr = parse_double_cell(row[rr], path);
        s.spo2 = parse_double_cell(row[spo2], path);
        validate_sample(s, samples.size());
        samples.push_back(s);
    }
    return samples;
}

} // namespace copd
