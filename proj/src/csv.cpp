#include "copd/csv.hpp"

#include "copd/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace copd {

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw DataError("missing column: " + name);
}

namespace {

std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (field.empty() && !field_started) {
                in_quotes = true;
                field_started = true;
            } else {
                field.push_back(c);
            }
            break;
        case ',':
            end_field();
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
            break;
        case '\n':
            end_record();
            break;
        default:
            field.push_back(c);
            field_started = true;
        }
    }
    if (in_quotes) throw DataError("unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

} // namespace

CsvTable parse_csv(const std::string& text) {
    auto records = parse_records(text);
    if (records.empty()) throw DataError("empty csv");
    CsvTable table;
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw DataError("csv row " + std::to_string(r) + " has " +
                            std::to_string(records[r].size()) + " fields, expected " +
                            std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

namespace {

void append_field(std::string& out, const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) {
        out += field;
        return;
    }
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
}

void append_record(std::string& out, const std::vector<std::string>& record) {
    for (std::size_t i = 0; i < record.size(); ++i) {
        if (i) out.push_back(',');
        append_field(out, record[i]);
    }
    out.push_back('\n');
}

} // namespace

std::string csv_to_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    append_record(out, header);
    for (const auto& row : rows) append_record(out, row);
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << csv_to_string(header, rows);
    if (!out) throw DataError("write failed: " + path);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double_cell(const std::string& cell,
                                        const std::string& context) {
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    auto* first = cell.data();
    auto* last = cell.data() + cell.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw DataError("bad numeric value '" + cell + "' in " + context);
    }
    return value;
}

long long parse_int_cell(const std::string& cell, const std::string& context) {
    if (cell.empty()) throw DataError("missing integer in " + context);
    long long value = 0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
        throw DataError("bad integer value '" + cell + "' in " + context);
    }
    return value;
}

} // namespace copd
