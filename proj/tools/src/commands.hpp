#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "device_config.hpp"
#include "mzsim/unitary.hpp"

namespace mzsim::cli {

// Shared state for one invocation.  The device config is loaded lazily so
// that leaf callbacks see the final --config value wherever it appeared on
// the command line.
struct Context {
    std::string config_path;
    std::string outdir = ".";
    std::uint64_t seed = 0;

    const DeviceConfig &device();

  private:
    bool loaded_ = false;
    DeviceConfig device_;
};

void register_simulate(CLI::App &app, Context &ctx);
void register_fit(CLI::App &app, Context &ctx);
void register_thermal(CLI::App &app, Context &ctx);
void register_tomo(CLI::App &app, Context &ctx);

// Joins outdir and name, creating the directory first.
std::string out_path(const Context &ctx, const std::string &name);

std::vector<double> linspace(double from, double to, int points);

// Unitary CSV: header `row,col,re,im`, written at full precision so that a
// load reproduces the matrix bit for bit.
void write_unitary_csv(const std::string &path, const Unitary &u);
Unitary read_unitary_csv(const std::string &path);

}  // namespace mzsim::cli
