#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mzsim/fringe_scan.hpp"
#include "mzsim/thermal.hpp"

namespace mzsim::cli {

// Everything the commands need to know about one device: substrate, heater
// geometry and resistances (one entry per heater, same indexing), coupler
// splitting ratios, and an optional calibrated cross-talk model.  When the
// calibration is absent the model is predicted from the geometry.
struct DeviceConfig {
    MaterialParams material;
    std::vector<ShifterGeometry> geometry;
    std::vector<ResistorSpec> resistors;
    std::optional<CrosstalkModel> crosstalk;
    double eta1 = 0.5;
    double eta2 = 0.5;

    int heater_count() const { return static_cast<int>(geometry.size()); }
    const ShifterGeometry &heater_geometry(int index) const;
    const ResistorSpec &heater_resistors(int index) const;

    // Calibrated model if present, otherwise predict_alpha per heater with
    // phi0 = 0.
    CrosstalkModel effective_crosstalk() const;

    void validate() const;

    // Two-heater demonstrator used when no config file is given.
    static DeviceConfig defaults();
};

// Plain-text config: `[section]` headers, `key = value` lines, `#` comments.
// Sections: [material], [couplers], [heater <i>] (contiguous from 0), and an
// optional [crosstalk] with phi0 and alpha<i> keys.  Values are SI base
// units; lengths additionally accept nm/um/mm/cm suffixes (um may be written
// with a micro sign).
DeviceConfig load_device_config(const std::string &path);

// Bare quantity parser shared with a few CLI flags: number plus optional
// length suffix.  `field` names the offender in error messages.
double parse_quantity(const std::string &text, const std::string &field);

}  // namespace mzsim::cli
