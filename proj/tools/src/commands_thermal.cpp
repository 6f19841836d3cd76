#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "commands.hpp"
#include "mzsim/csv.hpp"
#include "mzsim/heat_solver.hpp"
#include "mzsim/thermal.hpp"

namespace mzsim::cli {

namespace {

struct GridArgs {
    double width = 6e-3;
    double depth = 1e-3;
    int nx = 201;
    int ny = 101;
    double base_temp = 293.15;
    double heater_x = -1.0;  // negative = centre
    double strip_width = 3e-4;
    double drive_temp = 30.0;  // K above base
    double drive_power = 0.0;  // W; > 0 switches the drive mode
    double wire_length = 20e-3;
};

HeatGrid make_grid(const GridArgs &a) {
    HeatGrid grid;
    grid.width = a.width;
    grid.depth = a.depth;
    grid.nx = a.nx;
    grid.ny = a.ny;
    grid.base_temperature = a.base_temp;
    grid.validate();
    return grid;
}

HeaterDrive make_drive(const GridArgs &a, const HeatGrid &grid) {
    HeaterDrive drive;
    double centre = a.heater_x < 0 ? grid.width / 2 : a.heater_x;
    drive.x_min = centre - a.strip_width / 2;
    drive.x_max = centre + a.strip_width / 2;
    drive.wire_length = a.wire_length;
    if (a.drive_power > 0) {
        drive.mode = HeaterDrive::Mode::FixedPower;
        drive.value = a.drive_power;
    } else {
        drive.mode = HeaterDrive::Mode::FixedTemperature;
        drive.value = grid.base_temperature + a.drive_temp;
    }
    drive.validate(grid);
    return drive;
}

void add_grid_options(CLI::App *c, GridArgs &a) {
    c->add_option("--width", a.width, "Domain width, m");
    c->add_option("--depth", a.depth, "Domain depth, m");
    c->add_option("--nx", a.nx, "Nodes across")->check(CLI::Range(3, 4001));
    c->add_option("--ny", a.ny, "Nodes down")->check(CLI::Range(3, 4001));
    c->add_option("--base-temp", a.base_temp, "Base temperature, K");
    c->add_option("--heater-x", a.heater_x, "Strip centre, m (default: domain centre)");
    c->add_option("--strip-width", a.strip_width, "Strip width, m");
    c->add_option("--drive-temp", a.drive_temp, "Strip excess temperature, K");
    c->add_option("--drive-power", a.drive_power,
                  "Strip power, W (overrides --drive-temp when positive)");
    c->add_option("--wire-length", a.wire_length, "Wire length for W/m conversion, m");
}

struct SolveArgs {
    GridArgs grid;
    std::string out = "field.csv";
};

void run_thermal_solve(Context &ctx, const SolveArgs &a) {
    HeatGrid grid = make_grid(a.grid);
    HeaterDrive drive = make_drive(a.grid, grid);
    const MaterialParams &mat = ctx.device().material;
    TemperatureField field = solve_heat_fd(grid, {drive}, mat);
    double p_len = dissipated_power_per_length(field, grid, {drive}, mat);

    double peak = 0.0;
    for (double v : field.values) peak = std::max(peak, v - grid.base_temperature);

    std::string path = out_path(ctx, a.out);
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path);
    }
    out << "x_m,y_m,temperature_k\n";
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            out << fmt_double(field.x(ix)) << "," << fmt_double(field.y(iy)) << ","
                << fmt_double(field.at(ix, iy)) << "\n";
        }
    }

    std::printf("thermal solve\n");
    std::printf("  grid         %d x %d over %.10g x %.10g m\n", grid.nx, grid.ny,
                grid.width, grid.depth);
    std::printf("  peak rise    %.6f K\n", peak);
    std::printf("  power        %.6g W/m, %.6g W over the wire\n", p_len,
                p_len * drive.wire_length);
    std::printf("  wrote        %s\n", path.c_str());
}

struct CompareArgs {
    GridArgs grid;
    double region_half_width = 0.75e-3;
    double region_depth = 0.5e-3;
    double exclusion = 0.25e-3;
    std::string out = "fd_log.csv";
};

void run_thermal_compare(Context &ctx, const CompareArgs &a) {
    HeatGrid grid = make_grid(a.grid);
    HeaterDrive drive = make_drive(a.grid, grid);
    const MaterialParams &mat = ctx.device().material;
    FdLogRegion region;
    region.half_width = a.region_half_width;
    region.depth = a.region_depth;
    region.exclusion_radius = a.exclusion;
    FdLogComparison cmp = compare_fd_log(grid, drive, mat, region);

    std::string path = out_path(ctx, a.out);
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path);
    }
    out << "x_m,y_m,fd_rise_k,log_rise_k,rel_diff\n";
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            double rel = cmp.rel_diff_at(ix, iy, grid);
            if (std::isnan(rel)) continue;
            out << fmt_double(cmp.fd.x(ix)) << "," << fmt_double(cmp.fd.y(iy))
                << ","
                << fmt_double(cmp.fd.at(ix, iy) - grid.base_temperature) << ","
                << fmt_double(cmp.log.at(ix, iy) - grid.base_temperature) << ","
                << fmt_double(rel) << "\n";
        }
    }

    std::printf("thermal compare\n");
    std::printf("  grid         %d x %d over %.10g x %.10g m\n", grid.nx, grid.ny,
                grid.width, grid.depth);
    std::printf("  region       %.10g x %.10g m, exclusion %.10g m, %d nodes\n",
                2 * a.region_half_width, a.region_depth, a.exclusion,
                cmp.region_nodes);
    std::printf("  log model    T = c1 - c2 ln(rho), c1 %.6f K, c2 %.6f K\n",
                cmp.c1, cmp.c2);
    std::printf("  power        %.6g W/m\n", cmp.power_per_length);
    std::printf("  rel diff     max %.6f, mean %.6f\n", cmp.max_rel_diff,
                cmp.mean_rel_diff);
    std::printf("  wrote        %s\n", path.c_str());
}

struct AlphaArgs {
    int heater = 0;
    std::string out;
};

void run_thermal_alpha(Context &ctx, const AlphaArgs &a) {
    const DeviceConfig &dev = ctx.device();
    const ShifterGeometry &geom = dev.heater_geometry(a.heater);
    const MaterialParams &mat = dev.material;

    double slope = 2 * mat.n_T / (mat.wavelength * mat.kappa) * geom.arm_length /
                   geom.wire_length;
    double ln_ratio = std::log(geom.rho1 / geom.rho2);
    double alpha = predict_alpha(geom, mat);

    std::printf("thermal alpha: heater %d\n", a.heater);
    std::printf("  slope        %.6f rad/W per unit ln(rho1/rho2)\n", slope);
    std::printf("  ln ratio     %.6f (rho1 %.6g m, rho2 %.6g m)\n", ln_ratio,
                geom.rho1, geom.rho2);
    std::printf("  alpha        %.6f rad/W predicted\n", alpha);
    if (dev.crosstalk) {
        double measured = dev.crosstalk->alphas[static_cast<size_t>(a.heater)];
        std::printf("  measured     %.6f rad/W, deviation %.1f%%\n", measured,
                    100 * std::abs(alpha - measured) / std::abs(measured));
    }

    if (!a.out.empty()) {
        std::string path = out_path(ctx, a.out);
        std::ofstream out(path);
        if (!out) {
            throw ValidationError("cannot open for writing: " + path);
        }
        out << "quantity,value\n";
        out << "slope_per_ln," << fmt_double(slope) << "\n";
        out << "ln_ratio," << fmt_double(ln_ratio) << "\n";
        out << "alpha_predicted," << fmt_double(alpha) << "\n";
        std::printf("  wrote        %s\n", path.c_str());
    }
}

}  // namespace

void register_thermal(CLI::App &app, Context &ctx) {
    CLI::App *thermal = app.add_subcommand("thermal", "Steady-state heater modelling");
    thermal->require_subcommand(1);

    {
        auto a = std::make_shared<SolveArgs>();
        CLI::App *c = thermal->add_subcommand("solve", "Finite-difference temperature field");
        add_grid_options(c, a->grid);
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a] { run_thermal_solve(ctx, *a); });
    }
    {
        auto a = std::make_shared<CompareArgs>();
        CLI::App *c = thermal->add_subcommand(
            "compare", "Finite-difference field against the log model");
        a->grid.depth = 1.5e-3;  // the log model assumes a deep half space
        a->grid.nx = 241;
        a->grid.ny = 121;
        add_grid_options(c, a->grid);
        c->add_option("--region-half-width", a->region_half_width,
                      "Comparison half width about the strip, m");
        c->add_option("--region-depth", a->region_depth, "Comparison depth, m");
        c->add_option("--exclusion", a->exclusion,
                      "Radius skipped around the strip, m");
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a] { run_thermal_compare(ctx, *a); });
    }
    {
        auto a = std::make_shared<AlphaArgs>();
        CLI::App *c = thermal->add_subcommand(
            "alpha", "Predicted phase-per-watt from the geometry");
        c->add_option("--heater", a->heater, "Heater index");
        c->add_option("--out", a->out, "Optional output CSV name");
        c->callback([&ctx, a] { run_thermal_alpha(ctx, *a); });
    }
}

}  // namespace mzsim::cli
