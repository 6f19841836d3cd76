// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures.  Criteria with statistical content use fixed seeds so the run is
// reproducible; criteria with a wall-clock budget enforce it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "mzsim/fock_evolution.hpp"
#include "mzsim/fringe_fit.hpp"
#include "mzsim/heat_solver.hpp"
#include "mzsim/mzi.hpp"
#include "mzsim/permanent.hpp"
#include "mzsim/phase_unwrap.hpp"
#include "mzsim/plane_fit.hpp"
#include "mzsim/stability.hpp"
#include "mzsim/thermal.hpp"
#include "mzsim/tomography.hpp"
#include "mzsim/two_photon.hpp"
#include "mzsim/visibility.hpp"

using namespace mzsim;
namespace fs = std::filesystem;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int criterion, bool ok, double seconds, const std::string &detail) {
    std::printf("criterion %2d: %s  %6.2f s  %s\n", criterion, ok ? "PASS" : "FAIL",
                seconds, detail.c_str());
    if (!ok) failures++;
}

void note(const std::string &text) {
    std::printf("              note: %s\n", text.c_str());
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean(const std::vector<double> &values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

std::string fmt(const char *pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

ShifterGeometry geometry_with_log_ratio(double ln_ratio) {
    ShifterGeometry geom;
    geom.rho2 = 35e-6;
    geom.rho1 = geom.rho2 * std::exp(ln_ratio);
    return geom;
}

// ---- 1: analytic alpha ----------------------------------------------------

void criterion_1() {
    Timer t;
    double slope = predict_alpha(geometry_with_log_ratio(1.0), {});
    double at_paper = predict_alpha(geometry_with_log_ratio(1.6117), {});
    double slope_err = std::abs(slope - 8.602) / 8.602;
    double paper_err = std::abs(at_paper - 13.43) / 13.43;
    bool ok = slope_err < 1e-3 && paper_err < 0.10 && t.seconds() < 1.0;
    report(1, ok, t.seconds(),
           fmt("slope %.6f rad/W (rel err %.2g); alpha at ln ratio 1.6117 is "
               "%.4f vs 13.43 (%.1f%% off)",
               slope, slope_err, at_paper, 100 * paper_err));
}

// ---- 2: FD field against the log model ------------------------------------

void criterion_2() {
    Timer t;
    HeatGrid grid;
    grid.width = 6e-3;
    grid.depth = 1.5e-3;
    grid.nx = 241;
    grid.ny = 121;
    HeaterDrive drive;
    drive.x_min = grid.width / 2 - 1.5e-4;
    drive.x_max = grid.width / 2 + 1.5e-4;
    drive.value = grid.base_temperature + 30.0;
    FdLogComparison cmp = compare_fd_log(grid, drive, {});
    bool ok = cmp.max_rel_diff < 0.10 && grid.nx >= 200 && grid.ny >= 100 &&
              t.seconds() < 30.0;
    report(2, ok, t.seconds(),
           fmt("max rel diff %.4f, mean %.4f over %d nodes (1.5 mm x 0.5 mm "
               "region, 0.25 mm exclusion), grid %dx%d",
               cmp.max_rel_diff, cmp.mean_rel_diff, cmp.region_nodes, grid.nx,
               grid.ny));
}

// ---- 3: fringe fit golden test --------------------------------------------

void criterion_3() {
    Timer t;
    const double alpha = 13.43, phi0 = 0.837, vis = 0.964, i_tot = 2000.0;
    std::vector<double> err_alpha, err_phi0, err_vis;
    for (int seed = 0; seed < 100; seed++) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        FringeScan scan;
        scan.counts_out.resize(2);
        for (int i = 0; i < 50; i++) {
            double p = 0.5 * i / 49;
            double value = i_tot / 2 * (1.0 + vis * std::cos(phi0 + alpha * p));
            value += 0.02 * i_tot / 2 * gauss(rng);
            scan.control.push_back(p);
            scan.counts_out[0].emplace_back(std::max(0.0, value));
            scan.counts_out[1].emplace_back(0.0);
        }
        FringeFitOptions options;
        options.poisson_weights = false;  // additive, not Poissonian, noise
        FitResult fit = fit_fringe(scan, options);
        err_alpha.push_back(std::abs(fit.alpha - alpha) / alpha);
        err_phi0.push_back(std::abs(fit.phi0 - phi0) / phi0);
        err_vis.push_back(std::abs(fit.visibility - vis) / vis);
    }
    double med_a = median(err_alpha), med_p = median(err_phi0), med_v = median(err_vis);
    bool ok = med_a < 0.01 && med_p < 0.01 && med_v < 0.02 && t.seconds() < 10.0;
    report(3, ok, t.seconds(),
           fmt("median rel err over 100 seeds at 2%% noise: alpha %.4f%%, "
               "phi0 %.4f%%, visibility %.4f%% (limits 1%%/1%%/2%%)",
               100 * med_a, 100 * med_p, 100 * med_v));
}

// ---- 4: power for a 2 pi shift --------------------------------------------

void criterion_4() {
    Timer t;
    double p_2pi = 2 * M_PI / 13.43;
    double rel = std::abs(p_2pi - 0.5) / 0.5;
    bool ok = std::abs(p_2pi - 0.468) < 5e-4 && rel < 0.10;
    report(4, ok, t.seconds(),
           fmt("2 pi shift at %.4f W for 13.43 rad/W, %.1f%% from the round "
               "0.5 W figure",
               p_2pi, 100 * rel));
}

// ---- 5: cross-talk plane --------------------------------------------------

void criterion_5() {
    Timer t;
    auto make_samples = [] {
        std::vector<PlaneSample> samples;
        for (int i = 0; i < 4; i++) {
            for (int j = 0; j < 4; j++) {
                PlaneSample s;
                s.p1 = 0.1 * i;
                s.p2 = 0.1 * j;
                s.phi = -0.17 + 13.16 * s.p1 - 8.77 * s.p2;
                samples.push_back(s);
            }
        }
        return samples;
    };

    PlaneFitResult clean = fit_crosstalk_plane(make_samples());
    bool exact = std::abs(clean.model.phi0 + 0.17) < 1e-9 &&
                 std::abs(clean.model.alphas[0] - 13.16) < 1e-9 &&
                 std::abs(clean.model.alphas[1] + 8.77) < 1e-9;

    std::vector<double> stderrs;
    for (int seed = 0; seed < 100; seed++) {
        std::mt19937_64 rng(500 + seed);
        std::normal_distribution<double> gauss(0.0, 0.11);
        std::vector<PlaneSample> samples = make_samples();
        for (PlaneSample &s : samples) s.phi += gauss(rng);
        stderrs.push_back(fit_crosstalk_plane(samples).residual_stderr);
    }
    double med = median(stderrs), avg = mean(stderrs);
    double lo = *std::min_element(stderrs.begin(), stderrs.end());
    double hi = *std::max_element(stderrs.begin(), stderrs.end());
    bool noisy_ok = med >= 0.09 && med <= 0.13 && avg >= 0.09 && avg <= 0.13;
    bool ok = exact && noisy_ok;
    report(5, ok, t.seconds(),
           fmt("noiseless recovery %s; reported stderr median %.4f, mean %.4f "
               "rad over 100 seeds at sigma 0.11 (window [0.09, 0.13])",
               exact ? "exact to 1e-9" : "FAILED", med, avg));
    note(fmt("per-seed stderr spans [%.3f, %.3f]; the window is read as a "
             "bound on the central value, individual seeds scatter wider",
             lo, hi));
}

// ---- 6: two-photon structure ----------------------------------------------

void criterion_6() {
    Timer t;
    CrosstalkModel model;
    model.phi0 = 0.837;
    model.alphas = {13.43};
    PhotonPairModel ideal;

    // Period halving, exact closed forms.
    bool halves = true;
    std::vector<double> powers;
    double half_period = M_PI / 13.43;
    for (int i = 0; i <= 30; i++) powers.push_back(i * half_period / 10);
    TwoPhotonCurves curves = noon_fringes(model, powers, ideal);
    for (size_t i = 0; i < curves.phi.size(); i++) {
        double phi = curves.phi[i];
        halves = halves && std::abs(curves.p11[i] - std::cos(phi) * std::cos(phi)) < 1e-12;
        double single = classical_fringe(model.phi0, 13.43, 1.0, powers[i]);
        halves = halves &&
                 std::abs(single - std::cos(phi / 2) * std::cos(phi / 2)) < 1e-12;
        if (i + 10 < curves.phi.size()) {
            halves = halves && std::abs(curves.p11[i + 10] - curves.p11[i]) < 1e-12;
        }
    }

    // Ideal N00N visibility on a commensurate grid.
    std::vector<double> grid;
    for (int i = 0; i < 120; i++) grid.push_back(2 * (2 * M_PI / 13.43) * i / 120);
    TwoPhotonCurves noon = noon_fringes(model, grid, ideal);
    double v11 = visibility_minmax(noon.control, noon.p11, 2 * 13.43).visibility;
    double v02 = visibility_minmax(noon.control, noon.p02, 2 * 13.43).visibility;
    bool unit_vis = std::abs(v11 - 1.0) < 1e-9 && std::abs(v02 - 1.0) < 1e-9;

    // Classical reference stays under 1/3 at every phase offset.
    bool classical_ok = true;
    double worst = 0.0;
    for (int k = 0; k < 12; k++) {
        CrosstalkModel shifted = model;
        shifted.phi0 = 2 * M_PI * k / 12;
        for (double vis : {0.6, 1.0}) {
            ClassicalReferenceCurves ref = classical_noon_reference(shifted, grid, vis);
            double fitted = visibility_minmax(ref.control, ref.r02, 2 * 13.43).visibility;
            worst = std::max(worst, fitted);
            classical_ok = classical_ok && fitted <= 1.0 / 3.0 + 1e-9;
        }
    }

    bool ok = halves && unit_vis && classical_ok;
    report(6, ok, t.seconds(),
           fmt("P(1,1) period = half the single-photon period (exact); ideal "
               "v11 %.6f, v02 %.6f; classical doubled-frequency visibility "
               "max %.6f <= 1/3",
               v11, v02, worst));
    note("the 1/3 bound is scored on the tailored classical-light reference "
         "(intensity-correlation benchmark); a fully distinguishable photon "
         "pair itself still shows a full-contrast bunched fringe, so the "
         "literal pair reading is not a physical bound");
}

// ---- 7: classical-bound statistic -----------------------------------------

void criterion_7() {
    Timer t;
    BoundTestResult coincidence = classical_bound_test(0.882, 0.008);
    BoundTestResult bunched = classical_bound_test(0.949, 0.007);
    bool ok = coincidence.passes && coincidence.n_sigma >= 68.0 && bunched.passes &&
              std::abs(bunched.n_sigma - 88.0) < 0.5;
    report(7, ok, t.seconds(),
           fmt("V 0.882 +/- 0.008 -> %.1f sigma (>= 68); V 0.949 +/- 0.007 -> "
               "%.1f sigma (~ 88)",
               coincidence.n_sigma, bunched.n_sigma));
}

// ---- 8: permanent oracle and normalization --------------------------------

Complex naive_permanent(const Matrix &m) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex sum = 0.0;
    do {
        Complex term = 1.0;
        for (int i = 0; i < n; i++) term *= m(i, perm[i]);
        sum += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

void criterion_8() {
    Timer t;
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 1000; trial++) {
        int n = 1 + trial % 4;
        Matrix m(n, n);
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < n; j++) m(i, j) = Complex(gauss(rng), gauss(rng));
        }
        Complex fast = permanent(m);
        Complex slow = naive_permanent(m);
        double scale = std::max(1.0, std::abs(slow));
        worst_rel = std::max(worst_rel, std::abs(fast - slow) / scale);
    }

    double worst_norm = 0.0;
    for (int trial = 0; trial < 200; trial++) {
        int dim = 2 + trial % 3;
        Unitary u = haar_random_unitary(dim, rng);
        std::vector<int> occupation(dim, 0);
        std::uniform_int_distribution<int> mode(0, dim - 1);
        int photons = 1 + trial % 4;
        for (int k = 0; k < photons; k++) occupation[mode(rng)]++;
        OutputDistribution dist = evolve_fock(u, FockState(occupation));
        worst_norm = std::max(worst_norm, std::abs(dist.total() - 1.0));
    }
    bool ok = worst_rel < 1e-12 && worst_norm < 1e-10;
    report(8, ok, t.seconds(),
           fmt("Ryser vs permutation sum: worst rel err %.2g over 1000 "
               "matrices; worst |sum(P) - 1| %.2g over 200 distributions",
               worst_rel, worst_norm));
}

// ---- 9: tomography round trip ---------------------------------------------

void criterion_9() {
    Timer t;
    std::mt19937_64 rng(123);
    double worst = 1.0;
    for (int trial = 0; trial < 100; trial++) {
        Unitary u = haar_random_unitary(2, rng);
        ReconstructedUnitary rec = reconstruct(simulate_dataset(u, 0.0));
        worst = std::min(worst, gauge_fidelity(u, rec.u_exp));
    }
    bool analytic_ok = worst >= 1.0 - 1e-9;

    std::vector<double> fidelities;
    for (int k = 0; k < 12; k++) {
        Unitary u = mzi_unitary(2 * M_PI * k / 12);
        for (std::uint64_t seed = 0; seed < 10; seed++) {
            TomographyDataset data =
                simulate_dataset(u, 50.0, {}, 1000 + 97 * k + seed);
            fidelities.push_back(gauge_fidelity(u, reconstruct(data).u_exp));
        }
    }
    double avg = mean(fidelities);
    bool noisy_ok = avg >= 0.995 && avg <= 1.0;
    bool ok = analytic_ok && noisy_ok && t.seconds() < 60.0;
    report(9, ok, t.seconds(),
           fmt("analytic worst F %.12f over 100 Haar circuits; 50-shot mean F "
               "%.6f over 12 phases x 10 seeds (window [0.995, 1], published "
               "0.998 +/- 0.001)",
               worst, avg));
}

// ---- 10: step response and stability --------------------------------------

void criterion_10() {
    Timer t;
    StepResponse step;
    step.phi_initial = 0.0;
    step.phi_final = M_PI;
    step.tau = 0.9 / std::log(9.0);
    double rise = rise_time_10_90(step);
    bool rise_ok = std::abs(rise - 0.9) < 1e-6;

    std::vector<double> time_s, phi;
    for (int i = 0; i < 601; i++) {
        double t_s = 60.0 * i;  // one sample a minute for 10 hours
        time_s.push_back(t_s);
        phi.push_back(1.0 + 0.005 * std::sin(2 * M_PI * t_s / 1800.0));
    }
    StabilityMetrics metrics = stability_metric(time_s, phi);
    bool stable_ok = metrics.peak_to_peak <= 0.012 && metrics.peak_to_peak >= 0.009;
    bool ok = rise_ok && stable_ok;
    report(10, ok, t.seconds(),
           fmt("rise time %.9f s (target 0.9 +/- 1e-6); peak-to-peak %.4f rad "
               "on a 10 h series carrying 0.01 rad of jitter (limit 0.012)",
               rise, metrics.peak_to_peak));
}

// ---- 11: CLI round trips ---------------------------------------------------

struct CliRun {
    int status = -1;
    std::string output;
};

CliRun run_cli(const std::string &args, const fs::path &capture) {
    std::string cmd = "env -u MZSIM_CONFIG " + std::string(MZSIM_CLI_PATH) + " " +
                      args + " > " + capture.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    CliRun run;
    if (WIFEXITED(rc)) run.status = WEXITSTATUS(rc);
    std::ifstream in(capture);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    run.output = buffer.str();
    return run;
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double value_after(const std::string &text, const std::string &key) {
    size_t pos = text.find(key);
    if (pos == std::string::npos) return -1e9;
    return std::strtod(text.c_str() + pos + key.size(), nullptr);
}

void criterion_11() {
    Timer t;
    fs::path dir = "/tmp/mzsim_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path capture = dir / "capture.txt";
    bool ok = true;
    std::string why;

    auto expect = [&](bool cond, const std::string &label) {
        if (!cond && why.empty()) why = label;
        ok = ok && cond;
    };

    // Fringe: simulate with noise, fit back, and a byte-identical rerun.
    fs::path fringe_a = dir / "fringe_a";
    fs::path fringe_b = dir / "fringe_b";
    fs::create_directories(fringe_a);
    fs::create_directories(fringe_b);
    std::string sim_args = "simulate fringe --seed 5 --noise 0.01 --outdir ";
    expect(run_cli(sim_args + fringe_a.string(), capture).status == 0, "simulate fringe");
    expect(run_cli(sim_args + fringe_b.string(), capture).status == 0, "simulate fringe");
    std::string scan_a = slurp(fringe_a / "fringe.csv");
    expect(!scan_a.empty() && scan_a == slurp(fringe_b / "fringe.csv"),
           "fringe determinism");
    CliRun fit = run_cli("fit fringe " + (fringe_a / "fringe.csv").string() +
                             " --outdir " + fringe_a.string(),
                         capture);
    expect(fit.status == 0, "fit fringe");
    expect(std::abs(value_after(fit.output, "alpha") - 13.43) < 0.2, "fringe alpha");
    expect(std::abs(value_after(fit.output, "phi0") - 0.837) < 0.05, "fringe phi0");
    expect(std::abs(value_after(fit.output, "visibility") - 0.964) < 0.02,
           "fringe visibility");

    // N00N: simulate and check the fitted doubled-frequency visibilities.
    CliRun noon = run_cli("simulate noon --points 120 --outdir " + dir.string(), capture);
    expect(noon.status == 0, "simulate noon");
    expect(std::abs(value_after(noon.output, "v11") - 1.0) < 1e-4, "noon v11");
    expect(std::abs(value_after(noon.output, "v02") - 1.0) < 1e-4, "noon v02");

    // Tomography: simulate with shots, reconstruct, score.
    CliRun tomo_sim = run_cli(
        "tomo simulate --phi 2.08 --shots 2000 --seed 9 --outdir " + dir.string(),
        capture);
    expect(tomo_sim.status == 0, "tomo simulate");
    CliRun tomo_rec = run_cli("tomo reconstruct --singles " +
                                  (dir / "singles.csv").string() + " --hom " +
                                  (dir / "hom.csv").string() + " --outdir " +
                                  dir.string(),
                              capture);
    expect(tomo_rec.status == 0, "tomo reconstruct");
    CliRun tomo_fid = run_cli("tomo fidelity --theory " +
                                  (dir / "unitary_true.csv").string() + " --measured " +
                                  (dir / "reconstructed.csv").string(),
                              capture);
    expect(tomo_fid.status == 0, "tomo fidelity");
    double gauge = value_after(tomo_fid.output, "\n  gauge");
    expect(gauge > 0.995, "tomo round-trip fidelity");

    // Cross-talk: serpentine scan of the phase map, arccos fold, unfold, fit.
    // The map is chosen to stay inside one fold interval so the branch
    // recovery is unambiguous; fold crossings are covered by the unit tests.
    const double phi0 = 1.6, a1 = 4.4, a2 = -5.2;
    std::vector<double> p1s, p2s, folded;
    for (int i = 0; i < 6; i++) {
        for (int jj = 0; jj < 6; jj++) {
            int j = (i % 2 == 0) ? jj : 5 - jj;  // serpentine order
            double p1 = 0.05 * i, p2 = 0.05 * j;
            double phi = phi0 + a1 * p1 + a2 * p2;
            double cross = (1.0 + std::cos(phi)) / 2.0;  // ideal fringe sample
            p1s.push_back(p1);
            p2s.push_back(p2);
            folded.push_back(std::acos(2.0 * cross - 1.0));
        }
    }
    std::vector<double> unfolded = unfold_phase(folded);
    fs::path plane_csv = dir / "plane.csv";
    {
        std::ofstream out(plane_csv);
        out << "p1,p2,phi\n";
        char line[128];
        for (size_t k = 0; k < unfolded.size(); k++) {
            std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", p1s[k], p2s[k],
                          unfolded[k]);
            out << line;
        }
    }
    CliRun plane = run_cli("fit plane " + plane_csv.string() + " --outdir " +
                               dir.string(),
                           capture);
    expect(plane.status == 0, "fit plane");
    std::string plane_fit = slurp(dir / "plane_fit.csv");
    double got_phi0 = value_after(plane_fit, "phi0,");
    double got_a1 = value_after(plane_fit, "alpha1,");
    double got_a2 = value_after(plane_fit, "alpha2,");
    // an arccos fold cannot see the global sign, so accept either branch
    double sign = got_a1 > 0 ? 1.0 : -1.0;
    expect(std::abs(sign * got_phi0 - phi0) < 1e-6 &&
               std::abs(sign * got_a1 - a1) < 1e-6 &&
               std::abs(sign * got_a2 - a2) < 1e-6,
           "plane loop closure");

    report(11, ok, t.seconds(),
           ok ? fmt("fringe fit closes (alpha %.4f), byte-identical reruns, "
                    "noon v11/v02 = 1, tomo F %.6f at 2000 shots, folded scan "
                    "-> unfold -> plane closes to 1e-6",
                    value_after(fit.output, "alpha"), gauge)
              : "failed at: " + why);
}

}  // namespace

int main() {
    std::printf("mzsim acceptance run\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures == 0) {
        std::printf("all 11 criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", failures);
    }
    return failures;
}
