#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harness.hpp"
#include "qkr/evolve.hpp"

using namespace qkr;
using namespace qkr::harness;
namespace fs = std::filesystem;

namespace {

#ifndef QKR_CLI_PATH
#define QKR_CLI_PATH "qkr"
#endif

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / "qkr_harness_test";
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QKR_CLI_PATH) + " " + args +
                            " > /dev/null 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("parse_real handles pi suffixes") {
    CHECK(parse_real("2") == doctest::Approx(2.0));
    CHECK(parse_real("-0.5") == doctest::Approx(-0.5));
    CHECK(parse_real("1e-3") == doctest::Approx(1e-3));
    CHECK(parse_real("0.97pi") == doctest::Approx(0.97 * M_PI));
    CHECK(parse_real("pi") == doctest::Approx(M_PI));
    CHECK(parse_real("-pi") == doctest::Approx(-M_PI));
    CHECK(parse_real("2pi") == doctest::Approx(2.0 * M_PI));
    CHECK_THROWS_AS(parse_real("abc"), config_error);
    CHECK_THROWS_AS(parse_real("1.2.3"), config_error);
    CHECK_THROWS_AS(parse_real("2pipi"), config_error);
    CHECK_THROWS_AS(parse_real(""), config_error);
}

TEST_CASE("apply_key rejects unknown keys and bad values") {
    RunConfig cfg;
    apply_key(cfg, "kappa", "0.5pi");
    CHECK(cfg.kappa == doctest::Approx(0.5 * M_PI));
    apply_key(cfg, "steps", "250");
    CHECK(cfg.steps == 250);
    apply_key(cfg, "backend", "splitstep");
    CHECK(cfg.backend == "splitstep");
    CHECK_THROWS_AS(apply_key(cfg, "kapa", "1"), config_error);
    CHECK_THROWS_AS(apply_key(cfg, "steps", "many"), config_error);
}

TEST_CASE("amplitude lists parse and normalize") {
    RunConfig cfg;
    apply_key(cfg, "amplitudes", "0:1:0:0:0; 1:0:0:1:0");
    REQUIRE(cfg.amplitudes.size() == 2);
    CHECK(cfg.amplitudes[0].k == 0);
    CHECK(cfg.amplitudes[1].b == cplx{1.0, 0.0});
    SpinorState s = cfg.initial_state(8);
    CHECK(std::abs(s.at_a(0) - cplx{1.0 / std::sqrt(2.0), 0.0}) < 1e-15);
    CHECK(total_norm(s) == doctest::Approx(1.0));
    CHECK_THROWS_AS(apply_key(cfg, "amplitudes", "0:1:0"), config_error);
    apply_key(cfg, "amplitudes", "9:1:0:0:0");
    CHECK_THROWS_AS(cfg.initial_state(8), config_error);
}

TEST_CASE("config file applies and flags can override") {
    fs::path dir = scratch_dir();
    fs::path cfgfile = dir / "run.cfg";
    {
        std::ofstream out(cfgfile);
        out << "# comment line\n"
            << "kappa = 2.5\n"
            << "delta_tilde = 0.5pi  # inline comment\n"
            << "steps = 80\n";
    }
    RunConfig cfg;
    apply_config_file(cfg, cfgfile.string());
    CHECK(cfg.kappa == doctest::Approx(2.5));
    CHECK(cfg.delta_tilde == doctest::Approx(0.5 * M_PI));
    CHECK(cfg.steps == 80);
    apply_key(cfg, "kappa", "1.0");  // the flag path reuses apply_key
    CHECK(cfg.kappa == doctest::Approx(1.0));

    fs::path bad = dir / "bad.cfg";
    { std::ofstream out(bad); out << "kappa 2.5\n"; }
    RunConfig other;
    CHECK_THROWS_AS(apply_config_file(other, bad.string()), config_error);
    CHECK_THROWS_AS(apply_config_file(other, (dir / "missing.cfg").string()),
                    config_error);
}

TEST_CASE("sidecar round-trips the full configuration") {
    RunConfig cfg;
    cfg.kappa = 1.75;
    cfg.tau = 6.0;
    cfg.delta_tilde = 0.3;
    cfg.beta = -0.125;
    cfg.k_max = 99;
    cfg.steps = 321;
    cfg.backend = "splitstep";
    cfg.gamma = 0.7;
    cfg.phi = 1.9;
    cfg.amplitudes = {{2, cplx{0.5, -0.5}, cplx{0.25, 0.0}}};
    cfg.out = "x.csv";
    cfg.leakage_threshold = 1e-9;
    cfg.seed = 987654321;
    cfg.jobs = 3;
    RunConfig back = config_from_sidecar(sidecar_json(cfg, 1.25, {"evolve"}));
    CHECK(back.kappa == cfg.kappa);
    CHECK(back.tau == cfg.tau);
    CHECK(back.delta_tilde == cfg.delta_tilde);
    CHECK(back.beta == cfg.beta);
    CHECK(back.k_max == cfg.k_max);
    CHECK(back.steps == cfg.steps);
    CHECK(back.backend == cfg.backend);
    CHECK(back.gamma == cfg.gamma);
    CHECK(back.phi == cfg.phi);
    CHECK(back.out == cfg.out);
    CHECK(back.leakage_threshold == cfg.leakage_threshold);
    CHECK(back.seed == cfg.seed);
    CHECK(back.jobs == cfg.jobs);
    REQUIRE(back.amplitudes.size() == 1);
    CHECK(back.amplitudes[0].k == 2);
    CHECK(back.amplitudes[0].a == cfg.amplitudes[0].a);
    CHECK(back.amplitudes[0].b == cfg.amplitudes[0].b);
}

TEST_CASE("trajectory CSV carries the fixed column set") {
    RunConfig cfg;
    cfg.steps = 5;
    Trajectory traj = evolve(cfg.initial_state(cfg.effective_k_max()),
                             cfg.model_params(), cfg.steps, Backend::BesselMatrix);
    std::string csv = trajectory_csv(traj);
    CHECK(csv.rfind("n,m1,m2,variance,Pg,Pe,ReQ,ImQ,S,norm,leakage,flag\n", 0) == 0);
    int lines = 0;
    for (char c : csv) lines += (c == '\n');
    CHECK(lines == 7);  // header + 6 records
}

TEST_CASE("atomic_write leaves no temp file behind") {
    fs::path p = scratch_dir() / "atomic.txt";
    atomic_write(p.string(), "payload\n");
    CHECK(slurp(p) == "payload\n");
    CHECK_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST_CASE("cli: evolve writes csv and sidecar") {
    fs::path dir = scratch_dir();
    fs::path out = dir / "cli_traj.csv";
    CHECK(run_cli("evolve --kappa 1 --steps 20 --out " + out.string()) == 0);
    REQUIRE(fs::exists(out));
    REQUIRE(fs::exists(out.string() + ".json"));
    std::string csv = slurp(out);
    CHECK(csv.rfind("n,m1,m2", 0) == 0);
    RunConfig cfg = config_from_sidecar(slurp(out.string() + ".json"));
    CHECK(cfg.kappa == doctest::Approx(1.0));
    CHECK(cfg.steps == 20);
}

TEST_CASE("cli: reruns are bit-identical") {
    fs::path dir = scratch_dir();
    fs::path o1 = dir / "rerun1.csv";
    fs::path o2 = dir / "rerun2.csv";
    const std::string common = "evolve --kappa 1.3 --delta-tilde 0.9pi --steps 60 --out ";
    CHECK(run_cli(common + o1.string()) == 0);
    CHECK(run_cli(common + o2.string()) == 0);
    CHECK(slurp(o1) == slurp(o2));
}

TEST_CASE("cli: error paths use exit code 1") {
    fs::path dir = scratch_dir();
    CHECK(run_cli("evolve --kappa nonsense --steps 5 --out " +
                  (dir / "x.csv").string()) == 1);
    CHECK(run_cli("evolve --steps 5") == 1);  // missing --out
    CHECK(run_cli("evolve --backend warp --steps 5 --out " +
                  (dir / "x.csv").string()) == 1);
    CHECK(run_cli("sweep --key kappa --out " + (dir / "s.csv").string()) == 1);
    CHECK(run_cli("definitely-not-a-subcommand") == 1);
    CHECK(run_cli("verify no-such-suite") == 1);
}

TEST_CASE("cli: verify batteries pass") {
    CHECK(run_cli("verify bessel") == 0);
    CHECK(run_cli("verify identities") == 0);
}

TEST_CASE("cli: fig2 grid stays close to the asymptote") {
    fs::path dir = scratch_dir();
    fs::path out = dir / "grid.csv";
    CHECK(run_cli("fig2 --grid 9 --steps 120 --kappa 1 --out " + out.string()) == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "gamma,phi,S_numeric,S0_analytic,abs_diff");
    int rows = 0;
    while (std::getline(in, line)) {
        const auto last = line.rfind(',');
        CHECK(std::stod(line.substr(last + 1)) < 0.05);
        ++rows;
    }
    CHECK(rows == 81);
    // off resonance the grid is meaningless
    CHECK(run_cli("fig2 --grid 5 --steps 120 --delta-tilde 0.5pi --out " +
                  (dir / "g2.csv").string()) == 1);
}

TEST_CASE("cli: sweep emits per-run files and a summary") {
    fs::path dir = scratch_dir();
    fs::path out = dir / "sw.csv";
    CHECK(run_cli("sweep --key delta_tilde --values 0.5pi,0.9pi --steps 100 "
                  "--jobs 2 --out " + out.string()) == 0);
    CHECK(fs::exists(out.string() + ".run0.csv"));
    CHECK(fs::exists(out.string() + ".run1.csv"));
    std::ifstream in(out.string() + ".summary.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "index,delta_tilde,slope,refused,transient_amplitude,fit_start");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
}

}
