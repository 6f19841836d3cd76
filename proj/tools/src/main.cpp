#include <cstdio>
#include <functional>

#include "commands.hpp"
#include "mzsim/error.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Thermally reconfigurable interferometer toolkit"};
    app.require_subcommand(1);

    mzsim::cli::Context ctx;
    app.add_option("--config", ctx.config_path, "Device config file")
        ->envname("MZSIM_CONFIG");
    app.add_option("--outdir", ctx.outdir, "Directory for output files");
    app.add_option("--seed", ctx.seed, "Seed for all randomness");

    mzsim::cli::register_simulate(app, ctx);
    mzsim::cli::register_fit(app, ctx);
    mzsim::cli::register_thermal(app, ctx);
    mzsim::cli::register_tomo(app, ctx);

    // Let --config/--outdir/--seed appear anywhere on the line.
    std::function<void(CLI::App *)> enable_fallthrough = [&](CLI::App *cmd) {
        cmd->fallthrough();
        for (CLI::App *sub :
             cmd->get_subcommands([](const CLI::App *) { return true; })) {
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    } catch (const mzsim::NumericError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const mzsim::ValidationError &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
    return 0;
}
