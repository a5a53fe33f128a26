#pragma once

#include <optional>
#include <string>
#include <vector>

namespace copd {

// Minimal RFC-4180 CSV: quoted fields, "" escapes, CR/LF tolerant.
// An empty cell means "missing" throughout the pipeline.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column; throws DataError naming the column.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows);

// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double v);

// Empty cell -> nullopt; malformed numeric cell -> DataError.
std::optional<double> parse_double_cell(const std::string& cell,
                                        const std::string& context);
long long parse_int_cell(const std::string& cell, const std::string& context);

} // namespace copd
