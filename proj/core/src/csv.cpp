#include "mzsim/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>

#include "mzsim/error.hpp"

namespace mzsim {

std::string fmt_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_double_field(const std::string &field, const std::string &context) {
    const char *begin = field.c_str();
    char *end = nullptr;
    double value = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0')) {
        throw CsvFormatError("bad numeric field '" + field + "' in " + context);
    }
    return value;
}

bool read_csv_line(std::istream &in, std::string &line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace mzsim
