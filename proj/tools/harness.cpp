#include "harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qkr/analysis.hpp"
#include "qkr/closed_form.hpp"
#include "qkr/verify.hpp"
#include "qkr/version.hpp"

namespace qkr::harness {

using nlohmann::json;

double parse_real(const std::string& text) {
    std::string t = text;
    double factor = 1.0;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        factor = M_PI;
        t = t.substr(0, t.size() - 2);
        if (t.empty() || t == "-") t += "1";
    }
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw config_error("cannot parse number: '" + text + "'");
    }
    if (used != t.size())
        throw config_error("cannot parse number: '" + text + "'");
    return v * factor;
}

int RunConfig::effective_k_max() const {
    if (k_max > 0) return k_max;
    int width = 1;
    if (!amplitudes.empty()) {
        int lo = 0, hi = 0;
        for (const auto& e : amplitudes) {
            lo = std::min(lo, e.k);
            hi = std::max(hi, e.k);
        }
        width = hi - lo + 1;
    }
    return required_k_max(width, steps, kappa);
}

Backend RunConfig::backend_enum() const {
    if (backend == "bessel") return Backend::BesselMatrix;
    if (backend == "splitstep") return Backend::SplitStep;
    throw config_error("backend must be 'bessel' or 'splitstep', got '" +
                       backend + "'");
}

SpinorState RunConfig::initial_state(int kmax) const {
    if (amplitudes.empty()) return bloch_state({gamma, phi}, kmax);
    SpinorState s(kmax);
    for (const auto& e : amplitudes) {
        if (std::abs(e.k) > kmax)
            throw config_error("amplitude momentum outside lattice");
        s.at_a(e.k) = e.a;
        s.at_b(e.k) = e.b;
    }
    const double n = total_norm(s);
    if (n <= 0.0) throw config_error("amplitude list has zero norm");
    const double scale = 1.0 / std::sqrt(n);
    for (auto& v : s.a) v *= scale;
    for (auto& v : s.b) v *= scale;
    return s;
}

ModelParams RunConfig::model_params() const {
    ModelParams p;
    p.kappa = std::abs(kappa);
    p.tau = tau;
    p.delta_tilde = delta_tilde;
    p.beta = reduce_beta(beta);
    p.k_max = effective_k_max();
    return p;
}

namespace {

std::vector<AmplitudeEntry> parse_amplitudes(const std::string& value) {
    // entries "k:a_re:a_im:b_re:b_im" separated by ';'
    std::vector<AmplitudeEntry> out;
    std::stringstream ss(value);
    std::string entry;
    while (std::getline(ss, entry, ';')) {
        if (entry.find_first_not_of(" \t") == std::string::npos) continue;
        std::stringstream es(entry);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(es, field, ':')) fields.push_back(field);
        if (fields.size() != 5)
            throw config_error("amplitude entry needs k:a_re:a_im:b_re:b_im");
        AmplitudeEntry e;
        e.k = static_cast<int>(parse_real(fields[0]));
        e.a = cplx{parse_real(fields[1]), parse_real(fields[2])};
        e.b = cplx{parse_real(fields[3]), parse_real(fields[4])};
        out.push_back(e);
    }
    if (out.empty()) throw config_error("empty amplitude list");
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void apply_key(RunConfig& cfg, const std::string& key,
               const std::string& value) {
    if (key == "kappa") cfg.kappa = parse_real(value);
    else if (key == "tau") cfg.tau = parse_real(value);
    else if (key == "delta_tilde") cfg.delta_tilde = parse_real(value);
    else if (key == "beta") cfg.beta = parse_real(value);
    else if (key == "k_max") cfg.k_max = static_cast<int>(parse_real(value));
    else if (key == "steps") cfg.steps = static_cast<int>(parse_real(value));
    else if (key == "backend") cfg.backend = value;
    else if (key == "gamma") cfg.gamma = parse_real(value);
    else if (key == "phi") cfg.phi = parse_real(value);
    else if (key == "amplitudes") cfg.amplitudes = parse_amplitudes(value);
    else if (key == "record") cfg.record = value;
    else if (key == "out") cfg.out = value;
    else if (key == "leakage_threshold") cfg.leakage_threshold = parse_real(value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_real(value));
    else if (key == "jobs") cfg.jobs = static_cast<int>(parse_real(value));
    else throw config_error("unknown config key: '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "n,m1,m2,variance,Pg,Pe,ReQ,ImQ,S,norm,leakage,flag\n";
    for (const StepRecord& r : traj.steps) {
        out += std::to_string(r.n);
        for (double v : {r.m1, r.m2, r.variance, r.p_g, r.p_e, r.q.real(),
                         r.q.imag(), r.entropy, r.norm, r.leak}) {
            out += ',';
            out += format_g17(v);
        }
        out += r.leak_flag ? ",1\n" : ",0\n";
    }
    return out;
}

namespace {

json config_json(const RunConfig& cfg) {
    json j;
    j["kappa"] = cfg.kappa;
    j["tau"] = cfg.tau;
    j["delta_tilde"] = cfg.delta_tilde;
    j["beta"] = cfg.beta;
    j["k_max"] = cfg.k_max;
    j["k_max_effective"] = cfg.effective_k_max();
    j["steps"] = cfg.steps;
    j["backend"] = cfg.backend;
    j["gamma"] = cfg.gamma;
    j["phi"] = cfg.phi;
    j["record"] = cfg.record;
    j["out"] = cfg.out;
    j["leakage_threshold"] = cfg.leakage_threshold;
    j["seed"] = cfg.seed;
    j["jobs"] = cfg.jobs;
    json amps = json::array();
    for (const auto& e : cfg.amplitudes)
        amps.push_back({{"k", e.k},
                        {"a_re", e.a.real()},
                        {"a_im", e.a.imag()},
                        {"b_re", e.b.real()},
                        {"b_im", e.b.imag()}});
    j["amplitudes"] = amps;
    return j;
}

}  // namespace

std::string sidecar_json(const RunConfig& cfg, double wall_time,
                         const std::vector<std::string>& flags) {
    json j;
    j["config"] = config_json(cfg);
    j["library_version"] = qkr::kVersion;
    j["wall_time"] = wall_time;
    j["flags"] = flags;
    return j.dump(2) + "\n";
}

RunConfig config_from_sidecar(const std::string& json_text) {
    json j = json::parse(json_text);
    const json& c = j.at("config");
    RunConfig cfg;
    cfg.kappa = c.at("kappa").get<double>();
    cfg.tau = c.at("tau").get<double>();
    cfg.delta_tilde = c.at("delta_tilde").get<double>();
    cfg.beta = c.at("beta").get<double>();
    cfg.k_max = c.at("k_max").get<int>();
    cfg.steps = c.at("steps").get<int>();
    cfg.backend = c.at("backend").get<std::string>();
    cfg.gamma = c.at("gamma").get<double>();
    cfg.phi = c.at("phi").get<double>();
    cfg.record = c.at("record").get<std::string>();
    cfg.out = c.at("out").get<std::string>();
    cfg.leakage_threshold = c.at("leakage_threshold").get<double>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    cfg.jobs = c.at("jobs").get<int>();
    for (const json& e : c.at("amplitudes")) {
        AmplitudeEntry a;
        a.k = e.at("k").get<int>();
        a.a = cplx{e.at("a_re").get<double>(), e.at("a_im").get<double>()};
        a.b = cplx{e.at("b_re").get<double>(), e.at("b_im").get<double>()};
        cfg.amplitudes.push_back(a);
    }
    return cfg;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start).count();
    }
};

Trajectory run_trajectory(const RunConfig& cfg, bool keep_final = false) {
    const int kmax = cfg.effective_k_max();
    ModelParams p = cfg.model_params();
    SpinorState s0 = cfg.initial_state(kmax);
    EvolveOptions opts;
    opts.leakage_threshold = cfg.leakage_threshold;
    opts.keep_final_state = keep_final;
    Trajectory traj = evolve(s0, p, cfg.steps, cfg.backend_enum(), opts);
    if (traj.capacity_warning)
        std::cerr << "warning: k_max=" << kmax
                  << " is below the capacity rule for " << cfg.steps
                  << " steps at kappa=" << p.kappa << "\n";
    if (traj.truncation_compromised)
        std::cerr << "warning: leakage exceeded threshold; trajectory flagged\n";
    return traj;
}

void require_out(const RunConfig& cfg) {
    if (cfg.out.empty()) throw config_error("--out is required");
}

json fit_json(const GrowthFit& fit) {
    json j;
    j["refused"] = fit.refused;
    j["reason"] = fit.reason;
    if (!fit.refused) {
        j["slope"] = fit.slope;
        j["log_intercept"] = fit.log_intercept;
        j["fit_start"] = fit.fit_start;
        j["transient_amplitude"] = fit.transient_amplitude;
    }
    return j;
}

}  // namespace

int cmd_evolve(const RunConfig& cfg, const std::vector<std::string>& flags) {
    require_out(cfg);
    Timer timer;
    Trajectory traj = run_trajectory(cfg);
    atomic_write(cfg.out, trajectory_csv(traj));
    atomic_write(cfg.out + ".json", sidecar_json(cfg, timer.seconds(), flags));
    return 0;
}

int cmd_fig1(const RunConfig& cfg, const std::vector<std::string>& flags) {
    require_out(cfg);
    if (cfg.steps < 64)
        throw config_error("fig1 needs at least 64 steps for the late-time fit");
    Timer timer;
    Trajectory traj = run_trajectory(cfg);
    std::vector<double> m2;
    m2.reserve(traj.steps.size());
    for (const auto& r : traj.steps) m2.push_back(r.m2);
    GrowthFit fit = fit_growth(m2);

    atomic_write(cfg.out, trajectory_csv(traj));
    json report = fit_json(fit);
    report["delta_tilde"] = cfg.delta_tilde;
    report["kappa"] = cfg.kappa;
    report["steps"] = cfg.steps;
    atomic_write(cfg.out + ".fit.json", report.dump(2) + "\n");
    atomic_write(cfg.out + ".json", sidecar_json(cfg, timer.seconds(), flags));
    if (fit.refused)
        std::cerr << "fit refused: " << fit.reason << "\n";
    else
        std::cout << "late-time log-log slope: " << fit.slope << "\n";
    return 0;
}

int cmd_fig2(const RunConfig& cfg, int grid_size,
             const std::vector<std::string>& flags) {
    require_out(cfg);
    if (grid_size < 2) throw config_error("grid size must be >= 2");
    ModelParams p = cfg.model_params();
    if (!is_resonant(p))
        throw config_error("fig2 runs at resonance (tau=2pi, beta=0, delta_tilde=2m*pi)");
    Timer timer;

    // The step is linear, so one resonant run per chirality basis state
    // is enough; grid states are superpositions of the two final states.
    EvolveOptions opts;
    opts.leakage_threshold = cfg.leakage_threshold;
    opts.keep_final_state = true;
    SpinorState ea(p.k_max), eb(p.k_max);
    ea.at_a(0) = 1.0;
    eb.at_b(0) = 1.0;
    const Backend backend = cfg.backend_enum();
    SpinorState fa = *evolve(ea, p, cfg.steps, backend, opts).final_state;
    SpinorState fb = *evolve(eb, p, cfg.steps, backend, opts).final_state;

    std::string csv = "gamma,phi,S_numeric,S0_analytic,abs_diff\n";
    SpinorState mix(p.k_max);
    for (int gi = 0; gi < grid_size; ++gi) {
        const double gamma = M_PI * gi / (grid_size - 1);
        for (int fi = 0; fi < grid_size; ++fi) {
            const double phi = 2.0 * M_PI * fi / (grid_size - 1);
            const cplx cu = std::cos(gamma / 2.0);
            const cplx cd = std::polar(std::sin(gamma / 2.0), phi);
            for (int i = 0; i < mix.size(); ++i) {
                mix.a[i] = cu * fa.a[i] + cd * fb.a[i];
                mix.b[i] = cu * fa.b[i] + cd * fb.b[i];
            }
            const double s_num = entanglement_entropy(reduced_density(mix));
            const double s0 = asymptotic_entropy({gamma, phi});
            csv += format_g17(gamma) + "," + format_g17(phi) + "," +
                   format_g17(s_num) + "," + format_g17(s0) + "," +
                   format_g17(std::abs(s_num - s0)) + "\n";
        }
    }
    atomic_write(cfg.out, csv);
    json side = json::parse(sidecar_json(cfg, timer.seconds(), flags));
    side["grid_size"] = grid_size;
    atomic_write(cfg.out + ".json", side.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& key,
              const std::vector<std::string>& values,
              const std::vector<std::string>& flags) {
    require_out(cfg);
    if (key.empty()) throw config_error("sweep needs exactly one swept key");
    if (values.empty()) throw config_error("sweep needs a non-empty value list");
    Timer timer;

    struct SweepRow {
        std::string value;
        GrowthFit fit;
    };
    std::vector<SweepRow> rows(values.size());
    std::vector<RunConfig> cfgs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        cfgs[i] = cfg;
        apply_key(cfgs[i], key, values[i]);
        cfgs[i].out = cfg.out + ".run" + std::to_string(i) + ".csv";
    }

    auto run_one = [&](std::size_t i) {
        Trajectory traj = run_trajectory(cfgs[i]);
        std::vector<double> m2;
        for (const auto& r : traj.steps) m2.push_back(r.m2);
        rows[i] = {values[i], fit_growth(m2)};
        atomic_write(cfgs[i].out, trajectory_csv(traj));
        atomic_write(cfgs[i].out + ".json", sidecar_json(cfgs[i], 0.0, flags));
    };
    if (cfg.jobs <= 1) {
        for (std::size_t i = 0; i < values.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < values.size(); ++i) {
            pool.emplace_back(run_one, i);
            if (static_cast<int>(pool.size()) == cfg.jobs ||
                i + 1 == values.size()) {
                for (auto& t : pool) t.join();
                pool.clear();
            }
        }
    }

    std::string summary = "index," + key +
                          ",slope,refused,transient_amplitude,fit_start\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const GrowthFit& f = rows[i].fit;
        summary += std::to_string(i) + "," + rows[i].value + "," +
                   (f.refused ? "" : format_g17(f.slope)) + "," +
                   (f.refused ? "1" : "0") + "," +
                   (f.refused ? "" : format_g17(f.transient_amplitude)) + "," +
                   std::to_string(f.fit_start) + "\n";
    }
    atomic_write(cfg.out + ".summary.csv", summary);
    atomic_write(cfg.out + ".json", sidecar_json(cfg, timer.seconds(), flags));
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> results;
    try {
        results = run_verify_suite(suite, seed);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    bool all_pass = true;
    for (const CheckResult& r : results) {
        std::printf("%-4s %-55s residual %.3e (tol %.0e)\n",
                    r.pass() ? "PASS" : "FAIL", r.name.c_str(), r.residual,
                    r.tolerance);
        all_pass = all_pass && r.pass();
    }
    return all_pass ? 0 : 2;
}

}  // namespace qkr::harness
