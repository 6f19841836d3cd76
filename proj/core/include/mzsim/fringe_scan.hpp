#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mzsim/counts.hpp"
#include "mzsim/error.hpp"

namespace mzsim {

// Resistance of the on-chip heater and of the contact leads in series with it.
struct ResistorSpec {
    double r_heater = 67.0;  // ohm
    double r_leads = 13.0;   // ohm

    void validate() const;
    double total() const { return r_heater + r_leads; }
};

// Which resistance divides dV^2 when converting a supply voltage to a
// dissipated power.  The supply meter sees the whole series circuit, so
// total_circuit is the default; heater_only drops the lead contribution.
enum class DissipationConvention { total_circuit, heater_only };

double voltage_to_power(
    double dv, const ResistorSpec &spec = {},
    DissipationConvention convention = DissipationConvention::total_circuit);

enum class ControlUnit { volts, watts };

// A single-heater sweep: one control value per step, one CountRecord per
// output port per step.
struct FringeScan {
    std::vector<double> control;
    ControlUnit unit = ControlUnit::watts;
    std::vector<std::vector<CountRecord>> counts_out;
    std::string label;

    void validate() const;
    std::size_t size() const { return control.size(); }

    // Control axis in watts, converting from volts if needed.
    std::vector<double> power_axis(
        const ResistorSpec &spec = {},
        DissipationConvention convention =
            DissipationConvention::total_circuit) const;
};

// CSV layout: header `control,unit,out1,out2[,acc1,acc2]`, one row per step.
// The unit column repeats the same "V" or "W" tag on every row.
FringeScan read_fringe_scan_csv(std::istream &in);
FringeScan load_fringe_scan(const std::string &path);
void write_fringe_scan_csv(std::ostream &out, const FringeScan &scan);
void save_fringe_scan(const std::string &path, const FringeScan &scan);

}  // namespace mzsim
