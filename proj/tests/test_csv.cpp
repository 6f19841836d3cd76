#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "mzsim/csv.hpp"
#include "mzsim/error.hpp"

using namespace mzsim;

TEST_CASE("fmt_double is deterministic and parseable") {
    CHECK(fmt_double(0.0) == "0");
    CHECK(fmt_double(0.05) == "0.05");
    CHECK(fmt_double(-3.0) == "-3");
    CHECK(fmt_double(2.5) == fmt_double(2.5));

    for (double v : {13.43, 0.837, 1.0 / 3.0, 6.44e-13, 2.993e5, -0.964}) {
        double back = parse_double_field(fmt_double(v), "round trip");
        CHECK(back == doctest::Approx(v).epsilon(1e-11));
    }
}

TEST_CASE("line splitting") {
    std::vector<std::string> fields = split_csv_line("a,b,c");
    REQUIRE(fields.size() == 3);
    CHECK(fields[0] == "a");
    CHECK(fields[2] == "c");

    fields = split_csv_line("x,");
    REQUIRE(fields.size() == 2);
    CHECK(fields[1].empty());

    fields = split_csv_line("");
    REQUIRE(fields.size() == 1);
    CHECK(fields[0].empty());
}

TEST_CASE("strict numeric fields") {
    CHECK(parse_double_field("1.5e3", "test") == 1500.0);
    CHECK(parse_double_field("-0.25", "test") == -0.25);
    CHECK(parse_double_field("2.5 ", "test") == 2.5);
    CHECK_THROWS_AS(parse_double_field("abc", "test"), CsvFormatError);
    CHECK_THROWS_AS(parse_double_field("1.5x", "test"), CsvFormatError);
    CHECK_THROWS_AS(parse_double_field("", "test"), CsvFormatError);
}

TEST_CASE("line reader strips carriage returns") {
    std::istringstream in("first\r\nsecond\nlast");
    std::string line;
    REQUIRE(read_csv_line(in, line));
    CHECK(line == "first");
    REQUIRE(read_csv_line(in, line));
    CHECK(line == "second");
    REQUIRE(read_csv_line(in, line));
    CHECK(line == "last");
    CHECK_FALSE(read_csv_line(in, line));
}
