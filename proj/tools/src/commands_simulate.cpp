#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>

#include "commands.hpp"
#include "mzsim/csv.hpp"
#include "mzsim/mzi.hpp"
#include "mzsim/thermal.hpp"
#include "mzsim/two_photon.hpp"
#include "mzsim/visibility.hpp"

namespace mzsim::cli {

namespace {

struct FringeArgs {
    double alpha = 13.43;
    double phi0 = 0.837;
    double vis = 0.964;
    double i_tot = 2000;
    double from = 0.0;
    double to = 0.5;
    int points = 50;
    double noise = 0.0;
    double accidental = 0.0;
    std::string unit = "W";
    int heater = 0;
    std::string label = "simulated fringe";
    std::string out = "fringe.csv";
};

void run_simulate_fringe(Context &ctx, const FringeArgs &a, bool alpha_given,
                         bool phi0_given) {
    double alpha = a.alpha, phi0 = a.phi0;
    const DeviceConfig &dev = ctx.device();
    if (dev.crosstalk) {
        // Calibrated device: the config supplies the response unless flags
        // override it.
        if (!alpha_given) alpha = dev.crosstalk->alphas[static_cast<size_t>(a.heater)];
        if (!phi0_given) phi0 = dev.crosstalk->phi0;
    }
    const ResistorSpec &resistors = dev.heater_resistors(a.heater);

    FringeScan scan;
    scan.control = linspace(a.from, a.to, a.points);
    scan.unit = a.unit == "V" ? ControlUnit::volts : ControlUnit::watts;
    scan.label = a.label;
    scan.counts_out.resize(2);

    std::mt19937_64 rng(ctx.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double sigma = a.noise * a.i_tot / 2;
    for (double control : scan.control) {
        double power = scan.unit == ControlUnit::volts
                           ? voltage_to_power(control, resistors)
                           : control;
        double phi = phi0 + alpha * power;
        for (int ch = 0; ch < 2; ++ch) {
            double sign = ch == 0 ? 1.0 : -1.0;
            double counts =
                a.i_tot / 2 * (1 + sign * a.vis * std::cos(phi)) + a.accidental;
            if (sigma > 0) counts += sigma * gauss(rng);
            scan.counts_out[static_cast<size_t>(ch)].emplace_back(
                std::max(0.0, counts), a.accidental);
        }
    }

    std::string path = out_path(ctx, a.out);
    save_fringe_scan(path, scan);
    std::printf("simulate fringe\n");
    std::printf("  alpha        %.10g rad/W\n", alpha);
    std::printf("  phi0         %.10g rad\n", phi0);
    std::printf("  visibility   %.10g\n", a.vis);
    std::printf("  i_tot        %.10g counts\n", a.i_tot);
    std::printf("  points       %d over [%.10g, %.10g] %s\n", a.points, a.from,
                a.to, a.unit.c_str());
    std::printf("  noise        %.10g relative, accidental floor %.10g\n",
                a.noise, a.accidental);
    std::printf("  wrote        %s\n", path.c_str());
}

struct NoonArgs {
    double from = 0.0;
    double to = 0.5;
    int points = 60;
    double overlap = 1.0;
    double accidental = 0.0;
    double alpha = 13.43;
    double phi0 = 0.0;
    double pairs = 1000;
    double eta1 = 0.5;
    double eta2 = 0.5;
    int heater = 0;
    std::string out = "noon.csv";
};

void run_simulate_noon(Context &ctx, const NoonArgs &a, bool alpha_given,
                       bool eta_given) {
    double alpha = a.alpha, eta1 = a.eta1, eta2 = a.eta2;
    const DeviceConfig &dev = ctx.device();
    if (dev.crosstalk && !alpha_given) {
        alpha = dev.crosstalk->alphas[static_cast<size_t>(a.heater)];
    }
    if (!eta_given) {
        eta1 = dev.eta1;
        eta2 = dev.eta2;
    }

    CrosstalkModel model;
    model.phi0 = a.phi0;
    model.alphas = {alpha};
    PhotonPairModel pair;
    pair.overlap = a.overlap;
    pair.accidental_rate = a.accidental;
    pair.validate();

    TwoPhotonCurves curves =
        noon_fringes(model, linspace(a.from, a.to, a.points), pair, eta1, eta2);

    // Coincidences on out1, bunched events (both orders) on out2; the
    // doubled-frequency fringes land in the standard scan layout so the
    // fringe fitter can consume them directly.
    FringeScan scan;
    scan.control = curves.control;
    scan.unit = ControlUnit::watts;
    scan.label = "simulated two-photon fringes";
    scan.counts_out.resize(2);
    for (size_t i = 0; i < curves.control.size(); ++i) {
        scan.counts_out[0].emplace_back(a.pairs * curves.p11[i],
                                        a.pairs * a.accidental);
        scan.counts_out[1].emplace_back(a.pairs * (curves.p02[i] + curves.p20[i]),
                                        2 * a.pairs * a.accidental);
    }
    std::string path = out_path(ctx, a.out);
    save_fringe_scan(path, scan);

    auto v11 = visibility_minmax(curves.control, scan.counts_out[0], 2 * alpha);
    auto v02 = visibility_minmax(curves.control, scan.counts_out[1], 2 * alpha);

    std::printf("simulate noon\n");
    std::printf("  alpha        %.10g rad/W (fringes at 2 alpha)\n", alpha);
    std::printf("  phi0         %.10g rad\n", a.phi0);
    std::printf("  overlap      %.10g, accidental %.10g per pair\n", a.overlap,
                a.accidental);
    std::printf("  couplers     eta1 %.10g, eta2 %.10g\n", eta1, eta2);
    std::printf("  v11          %.6f (accidental-corrected fit)\n",
                v11.visibility);
    std::printf("  v02          %.6f (accidental-corrected fit)\n",
                v02.visibility);
    std::printf("  wrote        %s\n", path.c_str());
}

struct HomArgs {
    double delay_from = -3e-12;
    double delay_to = 3e-12;
    int points = 61;
    double overlap = 1.0;
    double sigma_t = 6.44e-13;
    double accidental = 0.0;
    double eta = 0.5;
    std::string out = "hom.csv";
};

void run_simulate_hom(Context &ctx, const HomArgs &a) {
    PhotonPairModel pair;
    pair.overlap = a.overlap;
    pair.sigma_t = a.sigma_t;
    pair.accidental_rate = a.accidental;
    pair.validate();
    Unitary splitter = beam_splitter(a.eta);

    std::string path = out_path(ctx, a.out);
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path);
    }
    out << "delay_s,coincidence\n";
    for (double delay : linspace(a.delay_from, a.delay_to, a.points)) {
        double p = hom_coincidence(splitter, pair.at_delay(delay)) + a.accidental;
        out << fmt_double(delay) << "," << fmt_double(p) << "\n";
    }

    std::printf("simulate hom\n");
    std::printf("  overlap      %.10g, sigma_t %.10g s\n", a.overlap, a.sigma_t);
    std::printf("  eta          %.10g\n", a.eta);
    std::printf("  visibility   %.6f (zero-delay dip)\n",
                hom_visibility(splitter, pair));
    std::printf("  wrote        %s\n", path.c_str());
}

struct StepArgs {
    double phi_initial = 0.0;
    double phi_final = M_PI;
    double tau = 0.41;
    double duration = 3.0;
    int points = 301;
    std::string out = "step.csv";
};

void run_simulate_step(Context &ctx, const StepArgs &a) {
    StepResponse step;
    step.phi_initial = a.phi_initial;
    step.phi_final = a.phi_final;
    step.tau = a.tau;
    step.validate();

    std::string path = out_path(ctx, a.out);
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path);
    }
    out << "time_s,phi\n";
    for (double t : linspace(0.0, a.duration, a.points)) {
        out << fmt_double(t) << "," << fmt_double(step_phase(step, t)) << "\n";
    }

    std::printf("simulate step\n");
    std::printf("  phi          %.10g -> %.10g rad\n", a.phi_initial, a.phi_final);
    std::printf("  tau          %.10g s\n", a.tau);
    std::printf("  rise 10-90   %.10g s\n", rise_time_10_90(step));
    std::printf("  wrote        %s\n", path.c_str());
}

}  // namespace

void register_simulate(CLI::App &app, Context &ctx) {
    CLI::App *sim = app.add_subcommand("simulate", "Forward-model synthetic datasets");
    sim->require_subcommand(1);

    {
        auto a = std::make_shared<FringeArgs>();
        CLI::App *c = sim->add_subcommand("fringe", "Single-photon fringe scan");
        auto *alpha_opt = c->add_option("--alpha", a->alpha, "Phase per watt, rad/W");
        auto *phi0_opt = c->add_option("--phi0", a->phi0, "Phase offset, rad");
        c->add_option("--vis", a->vis, "Fringe visibility")->check(CLI::Range(0.0, 1.0));
        c->add_option("--i-tot", a->i_tot, "Counts per step summed over outputs");
        c->add_option("--from", a->from, "Scan start (W or V)");
        c->add_option("--to", a->to, "Scan end (W or V)");
        c->add_option("--points", a->points, "Scan steps")->check(CLI::Range(2, 100000));
        c->add_option("--noise", a->noise, "Gaussian noise, relative to i_tot/2");
        c->add_option("--accidental", a->accidental, "Flat accidental counts per step");
        c->add_option("--unit", a->unit, "Control axis unit")
            ->check(CLI::IsMember({"W", "V"}));
        c->add_option("--heater", a->heater, "Heater index for the volts conversion");
        c->add_option("--label", a->label, "Scan label");
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a, alpha_opt, phi0_opt] {
            run_simulate_fringe(ctx, *a, alpha_opt->count() > 0,
                                phi0_opt->count() > 0);
        });
    }
    {
        auto a = std::make_shared<NoonArgs>();
        CLI::App *c = sim->add_subcommand("noon", "Two-photon doubled-frequency fringes");
        c->add_option("--from", a->from, "Scan start, W");
        c->add_option("--to", a->to, "Scan end, W");
        c->add_option("--points", a->points, "Scan steps")->check(CLI::Range(2, 100000));
        c->add_option("--overlap", a->overlap, "Pair indistinguishability in (0, 1]");
        c->add_option("--accidental", a->accidental, "Accidental rate per pair");
        auto *alpha_opt = c->add_option("--alpha", a->alpha, "Phase per watt, rad/W");
        c->add_option("--phi0", a->phi0, "Phase offset, rad");
        c->add_option("--pairs", a->pairs, "Pair flux scale, counts");
        auto *eta1_opt = c->add_option("--eta1", a->eta1, "Input coupler ratio")
                             ->check(CLI::Range(0.0, 1.0));
        auto *eta2_opt = c->add_option("--eta2", a->eta2, "Output coupler ratio")
                             ->check(CLI::Range(0.0, 1.0));
        c->add_option("--heater", a->heater, "Heater index for config alpha");
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a, alpha_opt, eta1_opt, eta2_opt] {
            run_simulate_noon(ctx, *a, alpha_opt->count() > 0,
                              eta1_opt->count() > 0 || eta2_opt->count() > 0);
        });
    }
    {
        auto a = std::make_shared<HomArgs>();
        CLI::App *c = sim->add_subcommand("hom", "Hong-Ou-Mandel dip against delay");
        c->add_option("--delay-from", a->delay_from, "First delay, s");
        c->add_option("--delay-to", a->delay_to, "Last delay, s");
        c->add_option("--points", a->points, "Delay steps")->check(CLI::Range(2, 100000));
        c->add_option("--overlap", a->overlap, "Zero-delay indistinguishability");
        c->add_option("--sigma-t", a->sigma_t, "Coherence width, s");
        c->add_option("--accidental", a->accidental, "Accidental rate per pair");
        c->add_option("--eta", a->eta, "Splitter ratio")->check(CLI::Range(0.0, 1.0));
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a] { run_simulate_hom(ctx, *a); });
    }
    {
        auto a = std::make_shared<StepArgs>();
        CLI::App *c = sim->add_subcommand("step", "First-order phase settling");
        c->add_option("--phi-initial", a->phi_initial, "Start phase, rad");
        c->add_option("--phi-final", a->phi_final, "Target phase, rad");
        c->add_option("--tau", a->tau, "Time constant, s");
        c->add_option("--duration", a->duration, "Trace length, s");
        c->add_option("--points", a->points, "Samples")->check(CLI::Range(2, 1000000));
        c->add_option("--out", a->out, "Output CSV name");
        c->callback([&ctx, a] { run_simulate_step(ctx, *a); });
    }
}

}  // namespace mzsim::cli
