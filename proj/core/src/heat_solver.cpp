#include "mzsim/heat_solver.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mzsim {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct NodeClassification {
    // NaN where the node is an unknown; the pinned temperature otherwise.
    std::vector<double> dirichlet;
    // W per unit wire length injected at flux-driven surface nodes.
    std::vector<double> load;
    // Top-surface nodes held by a heater strip (not by the generic edge).
    std::vector<bool> heater_node;
};

// Width of the control-volume cell around column/row index i.
double cell_width(int i, int n, double h) {
    return (i == 0 || i == n - 1) ? h / 2 : h;
}

NodeClassification classify(const HeatGrid &grid, const std::vector<HeaterDrive> &drives) {
    const int nx = grid.nx, ny = grid.ny;
    const double dx = grid.dx();
    NodeClassification cls;
    cls.dirichlet.assign(static_cast<size_t>(nx) * ny, kUnset);
    cls.load.assign(static_cast<size_t>(nx) * ny, 0.0);
    cls.heater_node.assign(static_cast<size_t>(nx) * ny, false);

    auto pin = [&](int ix, int iy, double value) { cls.dirichlet[static_cast<size_t>(iy) * nx + ix] = value; };

    if (grid.bottom == EdgeCondition::FixedTemperature) {
        for (int ix = 0; ix < nx; ix++) {
            pin(ix, ny - 1, grid.base_temperature);
        }
    }
    if (grid.left == EdgeCondition::FixedTemperature) {
        for (int iy = 0; iy < ny; iy++) {
            pin(0, iy, grid.base_temperature);
        }
    }
    if (grid.right == EdgeCondition::FixedTemperature) {
        for (int iy = 0; iy < ny; iy++) {
            pin(nx - 1, iy, grid.base_temperature);
        }
    }
    if (grid.top == EdgeCondition::FixedTemperature) {
        for (int ix = 0; ix < nx; ix++) {
            pin(ix, 0, grid.base_temperature);
        }
    }

    // Heater strips override the generic top-edge condition.
    for (const HeaterDrive &d : drives) {
        d.validate(grid);
        if (d.mode == HeaterDrive::Mode::FixedTemperature) {
            for (int ix = 0; ix < nx; ix++) {
                double x = ix * dx;
                if (x >= d.x_min - 1e-12 && x <= d.x_max + 1e-12) {
                    size_t k = static_cast<size_t>(0) * nx + ix;
                    if (cls.heater_node[k] && cls.dirichlet[k] != d.value) {
                        throw InvalidParameterError(
                            "solve_heat_fd: overlapping fixed-temperature strips disagree");
                    }
                    cls.dirichlet[k] = d.value;
                    cls.heater_node[k] = true;
                }
            }
        } else {
            double strip = d.x_max - d.x_min;
            double flux = d.value / d.wire_length / strip;  // W/m^2
            for (int ix = 0; ix < nx; ix++) {
                double x = ix * dx;
                double lo = std::max(d.x_min, x - cell_width(ix, nx, dx) / 2);
                double hi = std::min(d.x_max, x + cell_width(ix, nx, dx) / 2);
                if (hi > lo) {
                    cls.load[ix] += flux * (hi - lo);
                }
            }
        }
    }
    return cls;
}

}  // namespace

void HeatGrid::validate() const {
    if (!(width > 0) || !(depth > 0)) {
        throw InvalidParameterError("HeatGrid: extent must be positive");
    }
    if (nx < 16 || ny < 16) {
        throw InvalidParameterError("HeatGrid: need at least 16 nodes per axis");
    }
}

void HeaterDrive::validate(const HeatGrid &grid) const {
    if (!(x_max > x_min)) {
        throw InvalidParameterError("HeaterDrive: empty strip");
    }
    if (x_min < -1e-12 || x_max > grid.width + 1e-12) {
        throw InvalidParameterError("HeaterDrive: strip outside the grid");
    }
    if (mode == Mode::FixedPower) {
        if (value < 0) {
            throw InvalidParameterError("HeaterDrive: negative power");
        }
        if (!(wire_length > 0)) {
            throw InvalidParameterError("HeaterDrive: wire length must be positive");
        }
    }
}

double TemperatureField::sample(double x_m, double y_m) const {
    double fx = std::clamp(x_m / width, 0.0, 1.0) * (nx - 1);
    double fy = std::clamp(y_m / depth, 0.0, 1.0) * (ny - 1);
    int ix = std::min(static_cast<int>(fx), nx - 2);
    int iy = std::min(static_cast<int>(fy), ny - 2);
    double tx = fx - ix, ty = fy - iy;
    return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) +
           (1 - tx) * ty * at(ix, iy + 1) + tx * ty * at(ix + 1, iy + 1);
}

TemperatureField solve_heat_fd(const HeatGrid &grid,
                               const std::vector<HeaterDrive> &drives,
                               const MaterialParams &mat,
                               const SolveOptions &options) {
    grid.validate();
    mat.validate();
    const int nx = grid.nx, ny = grid.ny;
    const double dx = grid.dx(), dy = grid.dy();
    const double kappa = mat.kappa;

    NodeClassification cls = classify(grid, drives);

    std::vector<int> unknown_index(static_cast<size_t>(nx) * ny, -1);
    int n_unknown = 0;
    bool any_dirichlet = false;
    for (size_t k = 0; k < cls.dirichlet.size(); k++) {
        if (std::isnan(cls.dirichlet[k])) {
            unknown_index[k] = n_unknown++;
        } else {
            any_dirichlet = true;
        }
    }
    if (!any_dirichlet) {
        throw InvalidParameterError("solve_heat_fd: no fixed-temperature boundary anywhere; "
                                    "the steady state is undefined");
    }

    TemperatureField field;
    field.nx = nx;
    field.ny = ny;
    field.width = grid.width;
    field.depth = grid.depth;
    field.values.assign(static_cast<size_t>(nx) * ny, grid.base_temperature);
    for (size_t k = 0; k < cls.dirichlet.size(); k++) {
        if (!std::isnan(cls.dirichlet[k])) {
            field.values[k] = cls.dirichlet[k];
        }
    }
    if (n_unknown == 0) {
        return field;
    }

    // Control-volume flux balance: symmetric positive definite after negation.
    Eigen::SparseMatrix<double> A(n_unknown, n_unknown);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n_unknown);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(n_unknown) * 5);

    const int step_x[4] = {1, -1, 0, 0};
    const int step_y[4] = {0, 0, 1, -1};
    for (int iy = 0; iy < ny; iy++) {
        for (int ix = 0; ix < nx; ix++) {
            size_t k = static_cast<size_t>(iy) * nx + ix;
            int row = unknown_index[k];
            if (row < 0) {
                continue;
            }
            double diag = 0.0;
            for (int dir = 0; dir < 4; dir++) {
                int jx = ix + step_x[dir];
                int jy = iy + step_y[dir];
                if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) {
                    continue;  // zero-flux face (flux drives arrive via load)
                }
                double face = (step_x[dir] != 0) ? cell_width(iy, ny, dy) : cell_width(ix, nx, dx);
                double dist = (step_x[dir] != 0) ? dx : dy;
                double g = kappa * face / dist;
                diag += g;
                size_t kn = static_cast<size_t>(jy) * nx + jx;
                int col = unknown_index[kn];
                if (col >= 0) {
                    triplets.emplace_back(row, col, -g);
                } else {
                    b(row) += g * cls.dirichlet[kn];
                }
            }
            triplets.emplace_back(row, row, diag);
            b(row) += cls.load[k];
        }
    }
    A.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::VectorXd x;
    if (options.max_iterations > 0) {
        Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
        cg.setMaxIterations(options.max_iterations);
        cg.setTolerance(options.tolerance);
        cg.compute(A);
        x = cg.solve(b);
        if (cg.info() != Eigen::Success) {
            std::ostringstream ss;
            ss << "solve_heat_fd: conjugate gradient stopped at relative error " << cg.error()
               << " after " << cg.iterations() << " iterations";
            throw NonConvergenceError(ss.str(), static_cast<int>(cg.iterations()), cg.error());
        }
    } else {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
        if (ldlt.info() != Eigen::Success) {
            throw NumericError("solve_heat_fd: factorization failed");
        }
        x = ldlt.solve(b);
    }

    double scale = std::max(b.cwiseAbs().maxCoeff(), kappa * x.cwiseAbs().maxCoeff());
    double residual = (b - A * x).cwiseAbs().maxCoeff();
    if (scale > 0 && !(residual / scale < 1e-8)) {
        throw NonConvergenceError("solve_heat_fd: residual check failed", 0, residual / scale);
    }

    for (size_t k = 0; k < unknown_index.size(); k++) {
        if (unknown_index[k] >= 0) {
            field.values[k] = x(unknown_index[k]);
        }
    }
    return field;
}

double dissipated_power_per_length(const TemperatureField &field,
                                   const HeatGrid &grid,
                                   const std::vector<HeaterDrive> &drives,
                                   const MaterialParams &mat) {
    const int nx = grid.nx, ny = grid.ny;
    const double dx = grid.dx(), dy = grid.dy();
    NodeClassification cls = classify(grid, drives);

    // Discrete flux absorbed by heat-sink nodes, using the assembly
    // conductances so the bookkeeping matches the solve exactly.
    const int step_x[4] = {1, -1, 0, 0};
    const int step_y[4] = {0, 0, 1, -1};
    double total = 0.0;
    for (int iy = 0; iy < ny; iy++) {
        for (int ix = 0; ix < nx; ix++) {
            size_t k = static_cast<size_t>(iy) * nx + ix;
            if (std::isnan(cls.dirichlet[k]) || cls.heater_node[k]) {
                continue;
            }
            for (int dir = 0; dir < 4; dir++) {
                int jx = ix + step_x[dir];
                int jy = iy + step_y[dir];
                if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) {
                    continue;
                }
                size_t kn = static_cast<size_t>(jy) * nx + jx;
                if (!std::isnan(cls.dirichlet[kn])) {
                    continue;  // no discrete flux between two pinned nodes
                }
                double face = (step_x[dir] != 0) ? cell_width(iy, ny, dy) : cell_width(ix, nx, dx);
                double dist = (step_x[dir] != 0) ? dx : dy;
                total += mat.kappa * face / dist * (field.at(jx, jy) - field.at(ix, iy));
            }
        }
    }
    return total;
}

TemperatureField log_model_field(const HeatGrid &grid, double heater_x, double c1, double c2) {
    TemperatureField field;
    field.nx = grid.nx;
    field.ny = grid.ny;
    field.width = grid.width;
    field.depth = grid.depth;
    field.values.resize(static_cast<size_t>(grid.nx) * grid.ny);
    double rho_floor = std::min(grid.dx(), grid.dy()) / 2;
    for (int iy = 0; iy < grid.ny; iy++) {
        for (int ix = 0; ix < grid.nx; ix++) {
            double rho = std::hypot(ix * grid.dx() - heater_x, iy * grid.dy());
            field.at(ix, iy) = c1 - c2 * std::log(std::max(rho, rho_floor));
        }
    }
    return field;
}

double FdLogComparison::rel_diff_at(int ix, int iy, const HeatGrid &grid) const {
    double rise_fd = fd.at(ix, iy) - grid.base_temperature;
    double rise_log = log.at(ix, iy) - grid.base_temperature;
    if (rise_fd == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::abs(rise_log - rise_fd) / std::abs(rise_fd);
}

FdLogComparison compare_fd_log(const HeatGrid &grid,
                               const HeaterDrive &heater,
                               const MaterialParams &mat,
                               const FdLogRegion &region,
                               const SolveOptions &options) {
    FdLogComparison cmp;
    cmp.fd = solve_heat_fd(grid, {heater}, mat, options);
    if (heater.mode == HeaterDrive::Mode::FixedPower) {
        cmp.power_per_length = heater.value / heater.wire_length;
    } else {
        cmp.power_per_length = dissipated_power_per_length(cmp.fd, grid, {heater}, mat);
    }
    cmp.c2 = cmp.power_per_length / (M_PI * mat.kappa);

    double heater_x = (heater.x_min + heater.x_max) / 2;
    auto in_region = [&](int ix, int iy) {
        double x = ix * grid.dx(), y = iy * grid.dy();
        if (std::abs(x - heater_x) > region.half_width || y > region.depth) {
            return false;
        }
        return std::hypot(x - heater_x, y) >= region.exclusion_radius;
    };

    // c1 from least squares of (c1 - c2 ln rho) against the FD field over the
    // region, i.e. the mean offset.
    double sum = 0.0;
    int n = 0;
    for (int iy = 0; iy < grid.ny; iy++) {
        for (int ix = 0; ix < grid.nx; ix++) {
            if (!in_region(ix, iy)) {
                continue;
            }
            double rho = std::hypot(ix * grid.dx() - heater_x, iy * grid.dy());
            sum += cmp.fd.at(ix, iy) + cmp.c2 * std::log(rho);
            n++;
        }
    }
    if (n == 0) {
        throw InvalidParameterError("compare_fd_log: comparison region contains no grid nodes");
    }
    cmp.c1 = sum / n;
    cmp.region_nodes = n;
    cmp.log = log_model_field(grid, heater_x, cmp.c1, cmp.c2);

    double acc = 0.0;
    for (int iy = 0; iy < grid.ny; iy++) {
        for (int ix = 0; ix < grid.nx; ix++) {
            if (!in_region(ix, iy)) {
                continue;
            }
            double r = cmp.rel_diff_at(ix, iy, grid);
            cmp.max_rel_diff = std::max(cmp.max_rel_diff, r);
            acc += r;
        }
    }
    cmp.mean_rel_diff = acc / n;
    return cmp;
}

}  // namespace mzsim
