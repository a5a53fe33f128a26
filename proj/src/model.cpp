#include "copd/model.hpp"

#include "copd/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace copd {

namespace {

// Civil-date conversions (proleptic Gregorian), Howard Hinnant's algorithms.
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    long long era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
    z += 719468;
    long long era = (z >= 0 ? z : z - 146096) / 146097;
    unsigned doe = static_cast<unsigned>(z - era * 146097);
    unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    long long yy = static_cast<long long>(yoe) + era * 400;
    unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

int parse_fixed_int(const std::string& text, std::size_t pos, std::size_t len) {
    if (pos + len > text.size()) throw DataError("bad timestamp: " + text);
    int value = 0;
    auto res = std::from_chars(text.data() + pos, text.data() + pos + len, value);
    if (res.ec != std::errc{} || res.ptr != text.data() + pos + len) {
        throw DataError("bad timestamp: " + text);
    }
    return value;
}

} // namespace

Timestamp Timestamp::from_civil(int year, int month, int day, int hour, int minute) {
    return Timestamp{days_from_civil(year, month, day) * 1440 + hour * 60 + minute};
}

Timestamp Timestamp::parse(const std::string& text) {
    // YYYY-MM-DD{T or space}HH:MM with optional :SS tail.
    if (text.size() < 16 || text[4] != '-' || text[7] != '-' ||
        (text[10] != 'T' && text[10] != ' ') || text[13] != ':') {
        throw DataError("bad timestamp: " + text);
    }
    if (text.size() != 16 && !(text.size() == 19 && text[16] == ':')) {
        throw DataError("bad timestamp: " + text);
    }
    int year = parse_fixed_int(text, 0, 4);
    int month = parse_fixed_int(text, 5, 2);
    int day = parse_fixed_int(text, 8, 2);
    int hour = parse_fixed_int(text, 11, 2);
    int minute = parse_fixed_int(text, 14, 2);
    if (text.size() == 19) parse_fixed_int(text, 17, 2);
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59) {
        throw DataError("bad timestamp: " + text);
    }
    return from_civil(year, month, day, hour, minute);
}

std::string Timestamp::to_string() const {
    long long days = minutes / 1440;
    long long rem = minutes % 1440;
    if (rem < 0) {
        rem += 1440;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld", y, m, d,
                  rem / 60, rem % 60);
    return buf;
}

Gender parse_gender(const std::string& text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "f" || lower == "female") return Gender::female;
    if (lower == "m" || lower == "male") return Gender::male;
    throw DataError("bad gender value: " + text);
}

std::string gender_code(Gender g) { return g == Gender::male ? "M" : "F"; }

double encode_gender(Gender g) { return g == Gender::male ? 1.0 : 0.0; }

Gender decode_gender(double v) { return v == 1.0 ? Gender::male : Gender::female; }

std::string severity_code(Severity s) {
    switch (s) {
    case Severity::mild_to_moderate: return "0";
    case Severity::severe: return "1";
    default: return "unlabeled";
    }
}

Severity parse_severity(const std::string& text) {
    if (text == "0") return Severity::mild_to_moderate;
    if (text == "1") return Severity::severe;
    if (text == "unlabeled") return Severity::unlabeled;
    throw DataError("bad severity value: " + text);
}

void validate_sample(const PatientSample& s, std::size_t row) {
    auto fail = [&](const std::string& what) {
        throw DataError("sample " + std::to_string(row) + ": " + what);
    };
    if (s.age < 0.0) fail("negative age");
    if (s.spo2 && (*s.spo2 < 0.0 || *s.spo2 > 100.0)) fail("spo2 outside [0,100]");
    if (s.po2 && *s.po2 <= 0.0) fail("non-positive po2");
    if (s.pco2 && *s.pco2 <= 0.0) fail("non-positive pco2");
    if (s.hr && *s.hr <= 0.0) fail("non-positive hr");
    if (s.rr && *s.rr <= 0.0) fail("non-positive rr");
}

void NormalRanges::validate() const {
    auto check = [](const Interval& iv, const char* name) {
        if (iv.lo > iv.hi) {
            throw ConfigError(std::string("inverted interval for ") + name);
        }
    };
    check(ph, "ph");
    check(po2, "po2");
    check(pco2, "pco2");
    check(be, "be");
    check(tco2, "tco2");
}

bool FeatureMatrix::any_missing() const {
    return std::any_of(mask.begin(), mask.end(), [](std::uint8_t m) { return m != 0; });
}

FeatureMatrix encode_features(const std::vector<PatientSample>& samples) {
    if (samples.empty()) throw DataError("empty dataset");
    FeatureMatrix fm;
    fm.values = Matrix(samples.size(), kFeatureCount);
    fm.mask.assign(samples.size() * kFeatureCount, 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        auto put = [&](std::size_t j, const std::optional<double>& v) {
            if (v) {
                fm.values.at(i, j) = *v;
            } else {
                fm.mask[i * kFeatureCount + j] = 1;
            }
        };
        fm.values.at(i, 0) = s.age;
        fm.values.at(i, 1) = encode_gender(s.gender);
        put(2, s.po2);
        put(3, s.pco2);
        put(4, s.ph);
        put(5, s.be);
        put(6, s.tco2);
        put(7, s.hr);
        put(8, s.rr);
        put(9, s.spo2);
    }
    return fm;
}

} // namespace copd
