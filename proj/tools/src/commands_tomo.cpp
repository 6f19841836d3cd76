#include <cmath>
#include <cstdio>
#include <memory>
#include <random>

#include "commands.hpp"
#include "mzsim/mzi.hpp"
#include "mzsim/tomography.hpp"

namespace mzsim::cli {

namespace {

void print_matrix(const Unitary &u) {
    for (int i = 0; i < u.dim(); ++i) {
        std::printf("   ");
        for (int j = 0; j < u.dim(); ++j) {
            Complex v = u(i, j);
            std::printf(" %8.5f%+8.5fi", v.real(), v.imag());
        }
        std::printf("\n");
    }
}

struct TomoSimArgs {
    int dim = 2;
    double phi = M_PI / 2;
    bool haar = false;
    double shots = 0.0;
    double overlap = 1.0;
    double accidental = 0.0;
    std::string out_singles = "singles.csv";
    std::string out_hom = "hom.csv";
    std::string out_unitary = "unitary_true.csv";
};

void run_tomo_simulate(Context &ctx, const TomoSimArgs &a) {
    if (a.dim != 2 && !a.haar) {
        throw InvalidParameterError(
            "dim: only dim 2 has a phase parametrization; pass --haar for "
            "larger circuits");
    }
    std::mt19937_64 rng(ctx.seed);
    Unitary u = a.haar ? haar_random_unitary(a.dim, rng) : mzi_unitary(a.phi);

    PhotonPairModel pair;
    pair.overlap = a.overlap;
    pair.accidental_rate = a.accidental;
    pair.validate();
    TomographyDataset dataset = simulate_dataset(u, a.shots, pair, ctx.seed);

    std::string singles_path = out_path(ctx, a.out_singles);
    std::string hom_path = out_path(ctx, a.out_hom);
    save_tomography_dataset(singles_path, hom_path, dataset);
    std::string unitary_path = out_path(ctx, a.out_unitary);
    write_unitary_csv(unitary_path, u);

    std::printf("tomo simulate\n");
    std::printf("  circuit      %s, dim %d\n",
                a.haar ? "haar random" : "interferometer", a.dim);
    if (!a.haar) std::printf("  phi          %.10g rad\n", a.phi);
    std::printf("  shots        %.10g%s\n", a.shots,
                a.shots == 0 ? " (analytic)" : "");
    std::printf("  overlap      %.10g, accidental %.10g\n", a.overlap, a.accidental);
    print_matrix(u);
    std::printf("  wrote        %s, %s, %s\n", singles_path.c_str(),
                hom_path.c_str(), unitary_path.c_str());
}

struct TomoRecArgs {
    std::string singles;
    std::string hom;
    std::string out_unitary = "reconstructed.csv";
};

void run_tomo_reconstruct(Context &ctx, const TomoRecArgs &a) {
    TomographyDataset dataset = load_tomography_dataset(a.singles, a.hom);
    ReconstructedUnitary rec = reconstruct(dataset);

    std::printf("tomo reconstruct: %s (dim %d, %zu visibilities)\n",
                a.singles.c_str(), dataset.dim(), dataset.hom.size());
    print_matrix(rec.u_exp);
    std::printf("  residual     %.6g\n", rec.residual);
    for (size_t i = 0; i < rec.parameter_uncertainties.size(); ++i) {
        std::printf("  sigma[%zu]     %.6g rad\n", i,
                    rec.parameter_uncertainties[i]);
    }
    if (rec.loss_normalized) {
        std::printf("  note         singles rows were renormalized (loss)\n");
    }
    if (rec.gauge_degenerate) {
        std::printf("  note         exact zeros leave some phases free\n");
    }

    std::string path = out_path(ctx, a.out_unitary);
    write_unitary_csv(path, rec.u_exp);
    std::printf("  wrote        %s\n", path.c_str());
}

struct TomoFidArgs {
    std::string theory;
    std::string measured;
};

void run_tomo_fidelity(const TomoFidArgs &a) {
    Unitary u_theo = read_unitary_csv(a.theory);
    Unitary u_exp = read_unitary_csv(a.measured);

    double raw = gate_fidelity(u_theo, u_exp);
    double canon = gate_fidelity(canonical_gauge(u_theo), canonical_gauge(u_exp));
    double gauge = gauge_fidelity(u_theo, u_exp);

    std::printf("tomo fidelity\n");
    std::printf("  gate         %.9f (fixed gauge)\n", raw);
    std::printf("  canonical    %.9f (both in canonical gauge)\n", canon);
    std::printf("  gauge        %.9f (maximized over row/column phases)\n", gauge);
}

}  // namespace

void register_tomo(CLI::App &app, Context &ctx) {
    CLI::App *tomo = app.add_subcommand("tomo", "Unitary reconstruction from counts");
    tomo->require_subcommand(1);

    {
        auto a = std::make_shared<TomoSimArgs>();
        CLI::App *c = tomo->add_subcommand("simulate", "Synthetic tomography dataset");
        c->add_option("--dim", a->dim, "Circuit size")->check(CLI::Range(2, 4));
        c->add_option("--phi", a->phi, "Interferometer phase, rad (dim 2)");
        c->add_flag("--haar", a->haar, "Draw a Haar-random circuit instead");
        c->add_option("--shots", a->shots, "Counts per measurement, 0 = analytic");
        c->add_option("--overlap", a->overlap, "Pair indistinguishability in (0, 1]");
        c->add_option("--accidental", a->accidental, "Accidental rate per pair");
        c->add_option("--out-singles", a->out_singles, "Singles CSV name");
        c->add_option("--out-hom", a->out_hom, "Visibility CSV name");
        c->add_option("--out-unitary", a->out_unitary, "True unitary CSV name");
        c->callback([&ctx, a] { run_tomo_simulate(ctx, *a); });
    }
    {
        auto a = std::make_shared<TomoRecArgs>();
        CLI::App *c = tomo->add_subcommand("reconstruct", "Fit a unitary to a dataset");
        c->add_option("--singles", a->singles, "Singles CSV")->required();
        c->add_option("--hom", a->hom, "Visibility CSV")->required();
        c->add_option("--out-unitary", a->out_unitary, "Output CSV name");
        c->callback([&ctx, a] { run_tomo_reconstruct(ctx, *a); });
    }
    {
        auto a = std::make_shared<TomoFidArgs>();
        CLI::App *c = tomo->add_subcommand("fidelity", "Compare two unitary files");
        c->add_option("--theory", a->theory, "Reference unitary CSV")->required();
        c->add_option("--measured", a->measured, "Reconstructed unitary CSV")->required();
        c->callback([a] { run_tomo_fidelity(*a); });
    }
}

}  // namespace mzsim::cli
