#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "commands.hpp"
#include "mzsim/csv.hpp"
#include "mzsim/fringe_fit.hpp"
#include "mzsim/plane_fit.hpp"
#include "mzsim/stability.hpp"

namespace mzsim::cli {

namespace {

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path);
    }
    return out;
}

// Two-column numeric CSV with an exact expected header.
void load_columns(const std::string &path, const std::string &col1,
                  const std::string &col2, std::vector<double> &v1,
                  std::vector<double> &v2) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open input file: " + path);
    }
    std::string line;
    if (!read_csv_line(in, line) ||
        split_csv_line(line) != std::vector<std::string>{col1, col2}) {
        throw CsvFormatError(path + ": expected header " + col1 + "," + col2);
    }
    while (read_csv_line(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw CsvFormatError(path + ": expected 2 fields, got " +
                                 std::to_string(fields.size()));
        }
        v1.push_back(parse_double_field(fields[0], col1));
        v2.push_back(parse_double_field(fields[1], col2));
    }
}

struct FitFringeArgs {
    std::string input;
    int heater = 0;
    bool heater_only = false;
    bool no_poisson_weights = false;
    bool no_subtract_accidentals = false;
    std::string out = "fringe_fit.csv";
};

void run_fit_fringe(Context &ctx, const FitFringeArgs &a) {
    FringeScan scan = load_fringe_scan(a.input);
    FringeFitOptions options;
    options.resistors = ctx.device().heater_resistors(a.heater);
    options.convention = a.heater_only ? DissipationConvention::heater_only
                                       : DissipationConvention::total_circuit;
    options.poisson_weights = !a.no_poisson_weights;
    options.subtract_accidentals = !a.no_subtract_accidentals;
    FitResult fit = fit_fringe(scan, options);

    auto sigma = [&](int i) { return std::sqrt(fit.covariance(i, i)); };
    std::printf("fit fringe: %s (%zu points)\n", a.input.c_str(), scan.size());
    std::printf("  alpha        %.6f +/- %.6f rad/W\n", fit.alpha, sigma(0));
    std::printf("  phi0         %.6f +/- %.6f rad\n", fit.phi0, sigma(1));
    std::printf("  visibility   %.6f +/- %.6f\n", fit.visibility, sigma(2));
    std::printf("  i_tot        %.6f +/- %.6f counts\n", fit.i_tot, sigma(3));
    std::printf("  residual     %.6g rms, %d iterations\n", fit.residual_rms,
                fit.iterations);

    std::string path = out_path(ctx, a.out);
    auto out = open_out(path);
    out << "parameter,value,sigma\n";
    out << "alpha," << fmt_double(fit.alpha) << "," << fmt_double(sigma(0)) << "\n";
    out << "phi0," << fmt_double(fit.phi0) << "," << fmt_double(sigma(1)) << "\n";
    out << "visibility," << fmt_double(fit.visibility) << ","
        << fmt_double(sigma(2)) << "\n";
    out << "i_tot," << fmt_double(fit.i_tot) << "," << fmt_double(sigma(3)) << "\n";
    out << "residual_rms," << fmt_double(fit.residual_rms) << ",0\n";
    std::printf("  wrote        %s\n", path.c_str());
}

struct FitPlaneArgs {
    std::string input;
    std::string out = "plane_fit.csv";
};

void run_fit_plane(Context &ctx, const FitPlaneArgs &a) {
    std::ifstream in(a.input);
    if (!in) {
        throw ValidationError("cannot open input file: " + a.input);
    }
    std::string line;
    if (!read_csv_line(in, line) ||
        split_csv_line(line) != std::vector<std::string>{"p1", "p2", "phi"}) {
        throw CsvFormatError(a.input + ": expected header p1,p2,phi");
    }
    std::vector<PlaneSample> samples;
    while (read_csv_line(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw CsvFormatError(a.input + ": expected 3 fields, got " +
                                 std::to_string(fields.size()));
        }
        samples.push_back({parse_double_field(fields[0], "p1"),
                           parse_double_field(fields[1], "p2"),
                           parse_double_field(fields[2], "phi")});
    }

    PlaneFitResult fit = fit_crosstalk_plane(samples);
    std::printf("fit plane: %s (%zu points)\n", a.input.c_str(), samples.size());
    std::printf("  phi0         %.6f +/- %.6f rad\n", fit.model.phi0,
                fit.sigma_phi0);
    for (size_t i = 0; i < fit.model.alphas.size(); ++i) {
        std::printf("  alpha%zu       %.6f +/- %.6f rad/W\n", i + 1,
                    fit.model.alphas[i], fit.sigma_alpha[i]);
    }
    std::printf("  residual     %.6g rad stderr\n", fit.residual_stderr);

    std::string path = out_path(ctx, a.out);
    auto out = open_out(path);
    out << "parameter,value,sigma\n";
    out << "phi0," << fmt_double(fit.model.phi0) << ","
        << fmt_double(fit.sigma_phi0) << "\n";
    for (size_t i = 0; i < fit.model.alphas.size(); ++i) {
        out << "alpha" << (i + 1) << "," << fmt_double(fit.model.alphas[i]) << ","
            << fmt_double(fit.sigma_alpha[i]) << "\n";
    }
    out << "residual_stderr," << fmt_double(fit.residual_stderr) << ",0\n";
    std::printf("  wrote        %s\n", path.c_str());
}

struct FitStabilityArgs {
    std::string input;
    std::string out = "stability.csv";
};

void run_fit_stability(Context &ctx, const FitStabilityArgs &a) {
    std::vector<double> time_s, phi;
    load_columns(a.input, "time_s", "phi", time_s, phi);
    StabilityMetrics metrics = stability_metric(time_s, phi);

    std::printf("fit stability: %s (%zu points)\n", a.input.c_str(), time_s.size());
    std::printf("  peak-to-peak %.6g rad (detrended)\n", metrics.peak_to_peak);
    std::printf("  drift        %.6g rad/h\n", metrics.drift_slope);

    std::string path = out_path(ctx, a.out);
    auto out = open_out(path);
    out << "metric,value\n";
    out << "peak_to_peak," << fmt_double(metrics.peak_to_peak) << "\n";
    out << "drift_slope," << fmt_double(metrics.drift_slope) << "\n";
    std::printf("  wrote        %s\n", path.c_str());
}

}  // namespace

void register_fit(CLI::App &app, Context &ctx) {
    CLI::App *fit = app.add_subcommand("fit", "Inverse problems on measured scans");
    fit->require_subcommand(1);

    {
        auto a = std::make_shared<FitFringeArgs>();
        CLI::App *c = fit->add_subcommand("fringe", "Fringe parameters from one scan");
        c->add_option("input", a->input, "Scan CSV")->required();
        c->add_option("--heater", a->heater, "Heater index for the volts conversion");
        c->add_flag("--heater-only", a->heater_only,
                    "Divide V^2 by the heater resistance, not the full circuit");
        c->add_flag("--no-poisson-weights", a->no_poisson_weights,
                    "Unweighted fit for non-Poissonian data");
        c->add_flag("--no-subtract-accidentals", a->no_subtract_accidentals,
                    "Keep the accidental floor in the counts");
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a] { run_fit_fringe(ctx, *a); });
    }
    {
        auto a = std::make_shared<FitPlaneArgs>();
        CLI::App *c = fit->add_subcommand("plane", "Cross-talk plane from (p1, p2, phi)");
        c->add_option("input", a->input, "Samples CSV with header p1,p2,phi")->required();
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a] { run_fit_plane(ctx, *a); });
    }
    {
        auto a = std::make_shared<FitStabilityArgs>();
        CLI::App *c = fit->add_subcommand("stability", "Drift and jitter of a phase series");
        c->add_option("input", a->input, "Series CSV with header time_s,phi")->required();
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a] { run_fit_stability(ctx, *a); });
    }
}

}  // namespace mzsim::cli
