#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mzsim {

// Shortest round-trippable formatting we use everywhere CSV is written, so
// that identical runs produce byte-identical files.
std::string fmt_double(double value);

std::vector<std::string> split_csv_line(const std::string &line);

// Strict double parse of a whole field; throws CsvFormatError otherwise.
double parse_double_field(const std::string &field, const std::string &context);

// Reads one line, tolerating trailing \r from CRLF files.  Returns false on
// end of stream.
bool read_csv_line(std::istream &in, std::string &line);

}  // namespace mzsim
