#include "device_config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>

#include "mzsim/error.hpp"

namespace mzsim::cli {

namespace {

std::string trim(const std::string &s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

double parse_quantity(const std::string &text, const std::string &field) {
    std::string t = trim(text);
    if (t.empty()) {
        throw ConfigError("empty value for " + field);
    }
    char *end = nullptr;
    double value = std::strtod(t.c_str(), &end);
    if (end == t.c_str()) {
        throw ConfigError("cannot parse value for " + field + ": '" + t + "'");
    }
    std::string suffix = trim(std::string(end));
    if (suffix.empty() || suffix == "m") return value;
    if (suffix == "nm") return value * 1e-9;
    if (suffix == "um" || suffix == "\xc2\xb5m") return value * 1e-6;
    if (suffix == "mm") return value * 1e-3;
    if (suffix == "cm") return value * 1e-2;
    throw ConfigError("unknown unit suffix '" + suffix + "' for " + field);
}

const ShifterGeometry &DeviceConfig::heater_geometry(int index) const {
    if (index < 0 || index >= heater_count()) {
        throw ConfigError("heater index " + std::to_string(index) +
                          " out of range (device has " +
                          std::to_string(heater_count()) + " heaters)");
    }
    return geometry[static_cast<size_t>(index)];
}

const ResistorSpec &DeviceConfig::heater_resistors(int index) const {
    heater_geometry(index);  // same range check
    return resistors[static_cast<size_t>(index)];
}

CrosstalkModel DeviceConfig::effective_crosstalk() const {
    if (crosstalk) return *crosstalk;
    CrosstalkModel model;
    for (const auto &geom : geometry) {
        model.alphas.push_back(predict_alpha(geom, material));
    }
    return model;
}

void DeviceConfig::validate() const {
    material.validate();
    if (geometry.empty()) {
        throw ConfigError("config defines no heaters");
    }
    if (geometry.size() != resistors.size()) {
        throw ConfigError("heater geometry and resistor sections disagree");
    }
    for (const auto &geom : geometry) geom.validate();
    for (const auto &spec : resistors) spec.validate();
    if (eta1 <= 0 || eta1 >= 1 || eta2 <= 0 || eta2 >= 1) {
        throw ConfigError("couplers: eta1 and eta2 must lie in (0, 1)");
    }
    if (crosstalk && crosstalk->alphas.size() != geometry.size()) {
        throw ConfigError("crosstalk lists " +
                          std::to_string(crosstalk->alphas.size()) +
                          " alphas for " + std::to_string(geometry.size()) +
                          " heaters");
    }
}

DeviceConfig DeviceConfig::defaults() {
    DeviceConfig cfg;
    ShifterGeometry near;
    near.rho1 = 175e-6;
    near.rho2 = 35e-6;
    ShifterGeometry far;
    far.rho1 = 90e-6;
    far.rho2 = 250e-6;
    cfg.geometry = {near, far};
    cfg.resistors = {ResistorSpec{}, ResistorSpec{}};
    return cfg;
}

DeviceConfig load_device_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }

    // section name -> key -> raw value
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(path + ":" + std::to_string(line_no) +
                                  ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos || section.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value' inside a section");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        }
        sections[section][key] = value;
    }

    DeviceConfig cfg;
    cfg.geometry.clear();
    cfg.resistors.clear();

    auto take = [&](std::map<std::string, std::string> &sec,
                    const std::string &sec_name, const std::string &key,
                    double &target) {
        auto it = sec.find(key);
        if (it == sec.end()) return;
        target = parse_quantity(it->second, "[" + sec_name + "] " + key);
        sec.erase(it);
    };
    auto finish = [&](const std::map<std::string, std::string> &sec,
                      const std::string &sec_name) {
        if (!sec.empty()) {
            throw ConfigError("unknown key '" + sec.begin()->first + "' in [" +
                              sec_name + "]");
        }
    };

    if (auto it = sections.find("material"); it != sections.end()) {
        take(it->second, "material", "kappa", cfg.material.kappa);
        take(it->second, "material", "n_T", cfg.material.n_T);
        take(it->second, "material", "wavelength", cfg.material.wavelength);
        finish(it->second, "material");
        sections.erase(it);
    }
    if (auto it = sections.find("couplers"); it != sections.end()) {
        take(it->second, "couplers", "eta1", cfg.eta1);
        take(it->second, "couplers", "eta2", cfg.eta2);
        finish(it->second, "couplers");
        sections.erase(it);
    }

    for (int index = 0;; ++index) {
        auto it = sections.find("heater " + std::to_string(index));
        if (it == sections.end()) break;
        const std::string name = it->first;
        ShifterGeometry geom;
        ResistorSpec spec;
        take(it->second, name, "rho1", geom.rho1);
        take(it->second, name, "rho2", geom.rho2);
        take(it->second, name, "arm_length", geom.arm_length);
        take(it->second, name, "wire_length", geom.wire_length);
        take(it->second, name, "r_heater", spec.r_heater);
        take(it->second, name, "r_leads", spec.r_leads);
        finish(it->second, name);
        sections.erase(it);
        cfg.geometry.push_back(geom);
        cfg.resistors.push_back(spec);
    }

    if (auto it = sections.find("crosstalk"); it != sections.end()) {
        CrosstalkModel model;
        take(it->second, "crosstalk", "phi0", model.phi0);
        model.alphas.assign(cfg.geometry.size(), 0.0);
        for (size_t i = 0; i < model.alphas.size(); ++i) {
            take(it->second, "crosstalk", "alpha" + std::to_string(i),
                 model.alphas[i]);
        }
        finish(it->second, "crosstalk");
        sections.erase(it);
        cfg.crosstalk = model;
    }

    if (!sections.empty()) {
        throw ConfigError("unknown section [" + sections.begin()->first + "] in " +
                          path + " (heater sections must be contiguous from 0)");
    }
    cfg.validate();
    return cfg;
}

}  // namespace mzsim::cli
