#include "mzsim/fringe_scan.hpp"

#include <fstream>
#include <sstream>

#include "mzsim/csv.hpp"

namespace mzsim {

void ResistorSpec::validate() const {
    if (!(r_heater > 0.0) || !(r_leads >= 0.0)) {
        throw NonPositiveResistanceError("resistances must be positive");
    }
}

double voltage_to_power(double dv, const ResistorSpec &spec,
                        DissipationConvention convention) {
    spec.validate();
    if (!(dv >= 0.0)) {
        throw InvalidParameterError("voltage must be non-negative");
    }
    double r_eff = convention == DissipationConvention::heater_only
                       ? spec.r_heater
                       : spec.total();
    return dv * dv / r_eff;
}

void FringeScan::validate() const {
    if (control.empty()) throw TooFewSamplesError("empty scan");
    if (counts_out.empty()) {
        throw DimensionMismatchError("scan has no output channels");
    }
    for (const auto &channel : counts_out) {
        if (channel.size() != control.size()) {
            throw DimensionMismatchError(
                "output channel length does not match control axis");
        }
    }
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < control.size(); ++i) {
        if (!(control[i] > control[i - 1])) increasing = false;
        if (!(control[i] < control[i - 1])) decreasing = false;
    }
    if (control.size() > 1 && !increasing && !decreasing) {
        throw InvalidParameterError("control axis must be strictly monotonic");
    }
}

std::vector<double> FringeScan::power_axis(
    const ResistorSpec &spec, DissipationConvention convention) const {
    if (unit == ControlUnit::watts) return control;
    std::vector<double> powers;
    powers.reserve(control.size());
    for (double v : control) powers.push_back(voltage_to_power(v, spec, convention));
    return powers;
}

namespace {

ControlUnit parse_unit(const std::string &tag) {
    if (tag == "V" || tag == "v") return ControlUnit::volts;
    if (tag == "W" || tag == "w") return ControlUnit::watts;
    throw CsvFormatError("unknown control unit '" + tag + "'");
}

}  // namespace

FringeScan read_fringe_scan_csv(std::istream &in) {
    std::string line;
    if (!read_csv_line(in, line)) throw CsvFormatError("empty scan file");
    auto header = split_csv_line(line);
    bool with_acc = header.size() == 6;
    if (!(header.size() == 4 || with_acc) || header[0] != "control" ||
        header[1] != "unit" || header[2] != "out1" || header[3] != "out2" ||
        (with_acc && (header[4] != "acc1" || header[5] != "acc2"))) {
        throw CsvFormatError(
            "expected header control,unit,out1,out2[,acc1,acc2]");
    }

    FringeScan scan;
    scan.counts_out.resize(2);
    bool unit_set = false;
    std::size_t row = 1;
    while (read_csv_line(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw CsvFormatError("row " + std::to_string(row) +
                                 " has wrong field count");
        }
        std::string context = "row " + std::to_string(row);
        scan.control.push_back(parse_double_field(fields[0], context));
        ControlUnit unit = parse_unit(fields[1]);
        if (unit_set && unit != scan.unit) {
            throw CsvFormatError("mixed control units in one scan");
        }
        scan.unit = unit;
        unit_set = true;
        for (int ch = 0; ch < 2; ++ch) {
            double raw = parse_double_field(fields[2 + ch], context);
            double acc = with_acc ? parse_double_field(fields[4 + ch], context) : 0.0;
            scan.counts_out[ch].push_back(CountRecord(raw, acc));
        }
    }
    scan.validate();
    return scan;
}

FringeScan load_fringe_scan(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scan file " + path);
    return read_fringe_scan_csv(in);
}

void write_fringe_scan_csv(std::ostream &out, const FringeScan &scan) {
    scan.validate();
    if (scan.counts_out.size() != 2) {
        throw DimensionMismatchError("CSV layout expects two output channels");
    }
    bool with_acc = false;
    for (const auto &channel : scan.counts_out) {
        for (const auto &record : channel) {
            if (record.accidental != 0.0) with_acc = true;
        }
    }
    out << "control,unit,out1,out2";
    if (with_acc) out << ",acc1,acc2";
    out << "\n";
    const char *tag = scan.unit == ControlUnit::volts ? "V" : "W";
    for (std::size_t i = 0; i < scan.size(); ++i) {
        out << fmt_double(scan.control[i]) << ',' << tag << ','
            << fmt_double(scan.counts_out[0][i].raw) << ','
            << fmt_double(scan.counts_out[1][i].raw);
        if (with_acc) {
            out << ',' << fmt_double(scan.counts_out[0][i].accidental) << ','
                << fmt_double(scan.counts_out[1][i].accidental);
        }
        out << "\n";
    }
}

void save_fringe_scan(const std::string &path, const FringeScan &scan) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write scan file " + path);
    write_fringe_scan_csv(out, scan);
}

}  // namespace mzsim
