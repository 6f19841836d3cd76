#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mzsim/error.hpp"
#include "mzsim/thermal.hpp"

namespace mzsim {

enum class EdgeCondition {
    FixedTemperature,  // pinned to grid.base_temperature
    ZeroFlux,
};

// Cross-section of the chip: x across the surface, y downward from the
// surface (y = 0) to the base (y = depth).  Heaters sit on the top edge.
struct HeatGrid {
    double width = 6e-3;   // m
    double depth = 1e-3;   // m
    int nx = 201;
    int ny = 101;
    EdgeCondition left = EdgeCondition::ZeroFlux;
    EdgeCondition right = EdgeCondition::ZeroFlux;
    EdgeCondition top = EdgeCondition::ZeroFlux;  // surface outside the heater strips
    EdgeCondition bottom = EdgeCondition::FixedTemperature;
    double base_temperature = 293.15;  // K

    double dx() const { return width / (nx - 1); }
    double dy() const { return depth / (ny - 1); }
    void validate() const;
};

struct HeaterDrive {
    enum class Mode {
        FixedTemperature,  // strip held at `value` kelvin
        FixedPower,        // strip dissipates `value` watts along `wire_length`
    };
    Mode mode = Mode::FixedTemperature;
    double x_min = 0.0;  // m
    double x_max = 0.0;  // m
    double value = 0.0;
    double wire_length = 20e-3;  // m, converts watts to the 2D per-length source

    void validate(const HeatGrid &grid) const;
};

struct SolveOptions {
    // 0 = sparse direct factorization.  > 0 = conjugate gradient capped at
    // that many iterations (NonConvergenceError if the cap is hit).
    int max_iterations = 0;
    double tolerance = 1e-10;
};

struct TemperatureField {
    int nx = 0;
    int ny = 0;
    double width = 0.0;
    double depth = 0.0;
    std::vector<double> values;  // row-major, index = iy * nx + ix

    double x(int ix) const { return width * ix / (nx - 1); }
    double y(int iy) const { return depth * iy / (ny - 1); }
    double at(int ix, int iy) const { return values[static_cast<size_t>(iy) * nx + ix]; }
    double &at(int ix, int iy) { return values[static_cast<size_t>(iy) * nx + ix]; }
    // Bilinear interpolation; clamps to the grid rectangle.
    double sample(double x_m, double y_m) const;
};

// Steady-state solve of the 5-point Laplace stencil with the given boundary
// conditions and heater drives.  The discrete relative residual of the
// returned field is checked against 1e-8.
TemperatureField solve_heat_fd(const HeatGrid &grid,
                               const std::vector<HeaterDrive> &drives,
                               const MaterialParams &mat = {},
                               const SolveOptions &options = {});

// Heat absorbed per unit wire length (W/m) by the fixed-temperature sink
// boundaries (heater strips excluded).  At steady state this equals the
// injected power.
double dissipated_power_per_length(const TemperatureField &field,
                                   const HeatGrid &grid,
                                   const std::vector<HeaterDrive> &drives,
                                   const MaterialParams &mat = {});

// Log-model field on the same grid: T = c1 - c2 ln(rho), rho measured from
// the midpoint of the heater strip on the surface.
TemperatureField log_model_field(const HeatGrid &grid, double heater_x, double c1, double c2);

struct FdLogRegion {
    double half_width = 0.75e-3;       // m, about the heater centre
    double depth = 0.5e-3;             // m, below the surface
    double exclusion_radius = 0.25e-3;  // m; the line-source idealisation
                                        // diverges inside the physical strip
};

struct FdLogComparison {
    TemperatureField fd;
    TemperatureField log;
    double power_per_length = 0.0;  // W/m extracted from the FD solution
    double c1 = 0.0;
    double c2 = 0.0;
    int region_nodes = 0;
    double max_rel_diff = 0.0;   // over the comparison region
    double mean_rel_diff = 0.0;
    // Relative difference |dT_log - dT_fd| / dT_fd at one node (temperatures
    // as rise above base).  NaN outside the domain.
    double rel_diff_at(int ix, int iy, const HeatGrid &grid) const;
};

// Solves the FD problem for one fixed-temperature heater strip, then builds
// the power-matched log model: c2 = P'/(pi kappa) with P' taken from the FD
// dissipated power, c1 least-squares fitted over the comparison region.
FdLogComparison compare_fd_log(const HeatGrid &grid,
                               const HeaterDrive &heater,
                               const MaterialParams &mat,
                               const FdLogRegion &region = {},
                               const SolveOptions &options = {});

}  // namespace mzsim
