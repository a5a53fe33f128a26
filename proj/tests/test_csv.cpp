#include "doctest.h"

#include "copd/csv.hpp"
#include "copd/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <string>

using namespace copd;

TEST_SUITE("csv") {

TEST_CASE("parse_csv splits header and rows") {
    CsvTable t = parse_csv("a,b,c\n1,2,3\n4,5,6\n");
    CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
    CHECK(t.rows[1] == std::vector<std::string>{"4", "5", "6"});
}

TEST_CASE("quoted fields, escaped quotes, embedded separators") {
    CsvTable t = parse_csv("name,note\n\"Doe, J\",\"said \"\"hi\"\"\"\n");
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "Doe, J");
    CHECK(t.rows[0][1] == "said \"hi\"");
}

TEST_CASE("quoted field spanning a newline") {
    CsvTable t = parse_csv("a,b\n\"line1\nline2\",x\n");
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "line1\nline2");
}

TEST_CASE("CRLF endings and missing trailing newline") {
    CsvTable t = parse_csv("a,b\r\n1,2\r\n3,4");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1] == std::vector<std::string>{"3", "4"});
}

TEST_CASE("empty cells survive") {
    CsvTable t = parse_csv("a,b,c\n1,,3\n,,\n");
    CHECK(t.rows[0][1] == "");
    CHECK(t.rows[1] == std::vector<std::string>{"", "", ""});
}

TEST_CASE("ragged rows rejected") {
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), DataError);
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), DataError);
}

TEST_CASE("column lookup") {
    CsvTable t = parse_csv("x,y\n1,2\n");
    CHECK(t.column("y") == 1);
    CHECK_THROWS_WITH_AS(t.column("z"), doctest::Contains("z"), DataError);
}

TEST_CASE("csv_to_string quotes only when needed") {
    std::string s = csv_to_string({"a", "b"}, {{"plain", "with,comma"},
                                               {"with\"quote", "with\nnewline"}});
    CHECK(s == "a,b\nplain,\"with,comma\"\n\"with\"\"quote\",\"with\nnewline\"\n");
}

TEST_CASE("string round trip") {
    std::vector<std::string> header = {"h1", "h 2"};
    std::vector<std::vector<std::string>> rows = {
        {"", "x,y"}, {"\"q\"", "multi\nline"}, {"0.5", "-3"}};
    CsvTable t = parse_csv(csv_to_string(header, rows));
    CHECK(t.header == header);
    CHECK(t.rows == rows);
}

TEST_CASE("file round trip") {
    std::string path =
        (std::filesystem::temp_directory_path() / "copd_csv_test.csv").string();
    write_csv(path, {"a", "b"}, {{"1", "two words"}});
    CsvTable t = read_csv(path);
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    CHECK(t.rows[0][1] == "two words");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_csv(path), DataError);
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-3.0) == "-3");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    double v = 7.3512345678901234;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("parse_double_cell") {
    CHECK(parse_double_cell("", "ctx") == std::nullopt);
    CHECK(parse_double_cell("2.5", "ctx").value() == 2.5);
    CHECK(parse_double_cell("-1e-3", "ctx").value() == -0.001);
    CHECK_THROWS_WITH_AS(parse_double_cell("abc", "po2 row 3"),
                         doctest::Contains("po2 row 3"), DataError);
    CHECK_THROWS_AS(parse_double_cell("1.5x", "ctx"), DataError);
}

TEST_CASE("parse_int_cell") {
    CHECK(parse_int_cell("42", "ctx") == 42);
    CHECK(parse_int_cell("-7", "ctx") == -7);
    CHECK_THROWS_AS(parse_int_cell("", "ctx"), DataError);
    CHECK_THROWS_AS(parse_int_cell("1.5", "ctx"), DataError);
}

} // TEST_SUITE
