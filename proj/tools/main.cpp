// spinengine: finite-time two-level spin-1/2 heat engine toolkit.
//
// Subcommands:
//   cycle     simulate one discrete cycle and emit the step ledger as CSV
//   fig2      efficiency at maximum omega-dot vs Carnot efficiency, with the
//             Curzon-Ahlborn curve and a crossover report
//   fig3      efficiency at maximum omega-dot over positive gamma/phi ratios
//   fig4      negative-ratio branch with pole exclusion and a zero/pole report
//   validate  run the invariant suite; exit 2 on any failure
//
// Exit codes: 0 success, 1 configuration error, 2 validation failure.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinengine/run.hpp"

namespace {

int write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "config error: field 'out': cannot open '" << path
                  << "' for writing\n";
        return 1;
    }
    out << content;
    return out.good() ? 0 : 1;
}

int emit(const spinengine::Document& doc, const std::string& out_path) {
    if (int rc = write_file(out_path, doc.csv); rc != 0) return rc;
    if (!doc.meta.empty())
        if (int rc = write_file(out_path + ".meta", doc.meta); rc != 0) return rc;
    std::cout << "wrote " << out_path;
    if (!doc.meta.empty()) std::cout << " and " << out_path << ".meta";
    std::cout << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    spinengine::RunConfig config;

    CLI::App app{"finite-time two-level spin-1/2 heat engine toolkit"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.add_option("--gap-a", config.gap_a, "hot-stroke starting gap")
        ->capture_default_str();
    app.add_option("--gap-b", config.gap_b, "hot-stroke final gap")
        ->capture_default_str();
    app.add_option("--beta-h", config.beta_h, "hot reservoir inverse temperature")
        ->capture_default_str();
    app.add_option("--beta-c", config.beta_c, "cold reservoir inverse temperature")
        ->capture_default_str();
    app.add_option("--n", config.subdivisions, "sub-steps per isothermal stroke")
        ->capture_default_str();
    app.add_option("--eta-c", config.eta_c_values,
                   "Carnot efficiency values (repeatable; fig2 grid rows, "
                   "fig3/fig4 curves)");
    app.add_option("--r", config.ratios,
                   "gamma/phi ratios for fig2 columns (repeatable)");
    app.add_option("--r-min", config.r_min, "sweep ratio lower end (fig3/fig4)");
    app.add_option("--r-max", config.r_max, "sweep ratio upper end (fig3/fig4)");
    app.add_option("--r-steps", config.r_steps, "sweep sample count (fig3/fig4)");
    app.add_option("--pole-eps", config.pole_eps_factor,
                   "pole exclusion half-width as a fraction of eta_c (fig4)")
        ->capture_default_str();
    app.add_option("--out", config.out_path, "output path (default <mode>.csv)");
    app.add_flag("--corrupt-delta-prime", config.corrupt_delta_prime,
                 "validate only: corrupt the cold-stroke step sign inside the "
                 "closure check (negative control, must fail)");

    auto* cycle_cmd = app.add_subcommand("cycle", "simulate one discrete cycle");
    auto* fig2_cmd = app.add_subcommand(
        "fig2", "eta at max omega-dot vs eta_c, with Curzon-Ahlborn");
    auto* fig3_cmd =
        app.add_subcommand("fig3", "eta at max omega-dot over positive ratios");
    auto* fig4_cmd =
        app.add_subcommand("fig4", "negative-ratio branch with pole exclusion");
    auto* validate_cmd =
        app.add_subcommand("validate", "run the invariant suite");
    app.require_subcommand(1);
    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();  // shared options may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cycle_cmd->parsed()) config.mode = spinengine::RunMode::cycle;
        if (fig2_cmd->parsed()) config.mode = spinengine::RunMode::fig2;
        if (fig3_cmd->parsed()) config.mode = spinengine::RunMode::fig3;
        if (fig4_cmd->parsed()) config.mode = spinengine::RunMode::fig4;
        if (validate_cmd->parsed()) config.mode = spinengine::RunMode::validate;

        switch (config.mode) {
            case spinengine::RunMode::cycle:
                return emit(spinengine::run_cycle(config),
                            spinengine::resolve(config).out_path);
            case spinengine::RunMode::fig2:
                return emit(spinengine::run_fig2(config),
                            spinengine::resolve(config).out_path);
            case spinengine::RunMode::fig3:
                return emit(spinengine::run_fig3(config),
                            spinengine::resolve(config).out_path);
            case spinengine::RunMode::fig4:
                return emit(spinengine::run_fig4(config),
                            spinengine::resolve(config).out_path);
            case spinengine::RunMode::validate: {
                const spinengine::ValidationOutcome outcome =
                    spinengine::run_validate(config);
                std::cout << outcome.report;
                return outcome.passed ? 0 : 2;
            }
        }
    } catch (const spinengine::config_error& e) {
        std::cerr << "config error: field '" << e.field() << "': " << e.what()
                  << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
