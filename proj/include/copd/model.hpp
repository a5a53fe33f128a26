#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace copd {

// Minute-precision civil timestamp. Stored as minutes since 1970-01-01T00:00
// so charttime grouping and arithmetic are plain integer operations.
struct Timestamp {
    long long minutes = 0;

    // Accepts "YYYY-MM-DD HH:MM", "YYYY-MM-DDTHH:MM", optional ":SS" (dropped).
    static Timestamp parse(const std::string& text);
    static Timestamp from_civil(int year, int month, int day, int hour, int minute);
    std::string to_string() const; // canonical YYYY-MM-DDTHH:MM

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

enum class Gender { female, male };

Gender parse_gender(const std::string& text);
std::string gender_code(Gender g); // "F" / "M"
double encode_gender(Gender g);    // female -> 0.0, male -> 1.0
Gender decode_gender(double v);

enum class Severity : int {
    mild_to_moderate = 0,
    severe = 1,
    unlabeled = -1,
};

std::string severity_code(Severity s); // "0" / "1" / "unlabeled"
Severity parse_severity(const std::string& text);

struct PatientSample {
    long long icustay_id = 0;
    long long hadm_id = 0;
    Timestamp charttime;
    double age = 0.0;
    Gender gender = Gender::female;
    std::optional<double> po2;
    std::optional<double> pco2;
    std::optional<double> ph;
    std::optional<double> be;
    std::optional<double> tco2;
    std::optional<double> hr;
    std::optional<double> rr;
    std::optional<double> spo2;
};

// Throws DataError if age/spo2/pressure/rate invariants are violated.
void validate_sample(const PatientSample& s, std::size_t row);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return lo <= v && v <= hi; }
};

struct NormalRanges {
    Interval ph{7.35, 7.45};
    Interval po2{54.0, 67.6};
    Interval pco2{35.0, 45.0};
    Interval be{-3.0, 3.0};
    Interval tco2{23.0, 29.0};

    void validate() const; // ConfigError on any inverted interval
};

// Dense row-major matrix used throughout the numeric code.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline constexpr std::size_t kFeatureCount = 10;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureColumns = {
    "age", "gender", "po2", "pco2", "ph", "be", "tco2", "hr", "rr", "spo2",
};

// n x 10 feature matrix plus a missingness mask. Masked value slots hold 0
// and must never be read by consumers.
struct FeatureMatrix {
    Matrix values;
    std::vector<std::uint8_t> mask; // 1 = missing

    std::size_t rows() const { return values.rows; }
    bool missing(std::size_t i, std::size_t j) const {
        return mask[i * kFeatureCount + j] != 0;
    }
    bool any_missing() const;
};

// Fixed column order [age, gender, po2, pco2, ph, be, tco2, hr, rr, spo2].
// Throws DataError("empty dataset") on empty input.
FeatureMatrix encode_features(const std::vector<PatientSample>& samples);

} // namespace copd
