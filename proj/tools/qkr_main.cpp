// Command-line front end for the two-level kicked rotor library.
// Exit codes: 0 success, 1 config error, 2 verification failure,
// 3 numeric-integrity error.

#include <CLI11.hpp>

#include <iostream>

#include "harness.hpp"
#include "qkr/closed_form.hpp"
#include "qkr/kernels.hpp"
#include "qkr/version.hpp"

namespace {

using qkr::harness::RunConfig;

struct CommonArgs {
    std::string config_path;
    std::string kappa, tau, delta_tilde, beta, gamma, phi;
    std::string leakage_threshold;
    int k_max = -1;
    int steps = -1;
    std::string backend;
    std::string out;
    std::string kernels;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = -1;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key = value config file");
    cmd->add_option("--kappa", args.kappa, "kick strength (accepts e.g. 0.5pi)");
    cmd->add_option("--tau", args.tau, "kinetic phase scale (default 2pi)");
    cmd->add_option("--delta-tilde", args.delta_tilde, "detuning phase");
    cmd->add_option("--beta", args.beta, "quasimomentum in [-1/2, 1/2)");
    cmd->add_option("--kmax", args.k_max, "lattice half-width (0 = auto)");
    cmd->add_option("--steps", args.steps, "number of Floquet periods");
    cmd->add_option("--backend", args.backend, "bessel | splitstep");
    cmd->add_option("--gamma", args.gamma, "Bloch polar angle of the start");
    cmd->add_option("--phi", args.phi, "Bloch azimuth of the start");
    cmd->add_option("--out", args.out, "output path");
    cmd->add_option("--leakage-threshold", args.leakage_threshold,
                    "flag trajectories whose edge leakage exceeds this");
    cmd->add_option("--seed", args.seed, "seed for randomized suites")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--jobs", args.jobs, "parallel workers for sweeps");
    cmd->add_option("--kernels", args.kernels, "force kernels: scalar|avx2|auto");
}

// File first, then flags (flags win).
RunConfig resolve(const CommonArgs& args) {
    RunConfig cfg;
    if (!args.config_path.empty())
        qkr::harness::apply_config_file(cfg, args.config_path);
    using qkr::harness::apply_key;
    if (!args.kappa.empty()) apply_key(cfg, "kappa", args.kappa);
    if (!args.tau.empty()) apply_key(cfg, "tau", args.tau);
    if (!args.delta_tilde.empty()) apply_key(cfg, "delta_tilde", args.delta_tilde);
    if (!args.beta.empty()) apply_key(cfg, "beta", args.beta);
    if (!args.gamma.empty()) apply_key(cfg, "gamma", args.gamma);
    if (!args.phi.empty()) apply_key(cfg, "phi", args.phi);
    if (!args.leakage_threshold.empty())
        apply_key(cfg, "leakage_threshold", args.leakage_threshold);
    if (args.k_max >= 0) cfg.k_max = args.k_max;
    if (args.steps >= 0) cfg.steps = args.steps;
    if (!args.backend.empty()) cfg.backend = args.backend;
    if (!args.out.empty()) cfg.out = args.out;
    if (args.seed_set) cfg.seed = args.seed;
    if (args.jobs >= 1) cfg.jobs = args.jobs;
    if (!args.kernels.empty()) {
        try {
            qkr::kernels::force(args.kernels);
        } catch (const std::invalid_argument& e) {
            throw qkr::harness::config_error(e.what());
        }
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-level quantum kicked rotor simulator"};
    app.set_version_flag("--version", qkr::kVersion);
    app.require_subcommand(1);
    std::vector<std::string> flags(argv + 1, argv + argc);

    CommonArgs evolve_args, fig1_args, fig2_args, sweep_args;
    int grid_size = 33;
    std::string sweep_key;
    std::vector<std::string> sweep_values;
    std::string verify_suite = "all";
    std::uint64_t verify_seed = 20240901;

    CLI::App* c_evolve = app.add_subcommand("evolve", "Iterate the Floquet map and emit a trajectory CSV");
    add_common_flags(c_evolve, evolve_args);

    CLI::App* c_fig1 = app.add_subcommand("fig1", "Second-moment growth study with late-time slope fit");
    add_common_flags(c_fig1, fig1_args);

    CLI::App* c_fig2 = app.add_subcommand("fig2", "Entanglement entropy over the Bloch sphere of initial conditions");
    add_common_flags(c_fig2, fig2_args);
    c_fig2->add_option("--grid", grid_size, "grid points per angle axis");

    CLI::App* c_sweep = app.add_subcommand("sweep", "Run one config key over a list of values");
    add_common_flags(c_sweep, sweep_args);
    c_sweep->add_option("--key", sweep_key, "swept config key")->required();
    c_sweep->add_option("--values", sweep_values, "comma-separated value list")
        ->required()->delimiter(',');

    CLI::App* c_verify = app.add_subcommand("verify", "Run a verification battery");
    c_verify->add_option("suite", verify_suite,
                         "bessel | identities | backends | closedform | all");
    c_verify->add_option("--seed", verify_seed, "randomized-suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        using namespace qkr::harness;
        if (c_evolve->parsed()) {
            const RunConfig cfg = resolve(evolve_args);
            // fig1/evolve defaults differ only in delta_tilde; evolve keeps 0
            return cmd_evolve(cfg, flags);
        }
        if (c_fig1->parsed()) {
            CommonArgs a = fig1_args;
            if (a.delta_tilde.empty()) a.delta_tilde = "0.97pi";
            if (a.steps < 0) a.steps = 500;
            RunConfig cfg = resolve(a);
            return cmd_fig1(cfg, flags);
        }
        if (c_fig2->parsed()) {
            CommonArgs a = fig2_args;
            if (a.steps < 0) a.steps = 500;
            RunConfig cfg = resolve(a);
            return cmd_fig2(cfg, grid_size, flags);
        }
        if (c_sweep->parsed()) {
            const RunConfig cfg = resolve(sweep_args);
            return cmd_sweep(cfg, sweep_key, sweep_values, flags);
        }
        if (c_verify->parsed()) return cmd_verify(verify_suite, verify_seed);
    } catch (const qkr::harness::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const qkr::numeric_integrity_error& e) {
        std::cerr << "numeric integrity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
