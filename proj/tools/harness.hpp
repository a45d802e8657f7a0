#ifndef QKR_TOOLS_HARNESS_HPP
#define QKR_TOOLS_HARNESS_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkr/evolve.hpp"
#include "qkr/state.hpp"

namespace qkr::harness {

// Config / usage problems (CLI exit code 1).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmplitudeEntry {
    int k = 0;
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};
};

struct RunConfig {
    double kappa = 1.0;
    double tau = 2.0 * 3.14159265358979323846;
    double delta_tilde = 0.0;
    double beta = 0.0;
    int k_max = 0;  // 0 = auto-size from the capacity rule
    int steps = 100;
    std::string backend = "bessel";  // bessel | splitstep
    double gamma = 3.14159265358979323846;  // default start |k=0>|g>
    double phi = 0.0;
    std::vector<AmplitudeEntry> amplitudes;  // overrides (gamma, phi) when set
    std::string record = "all";
    std::string out;
    double leakage_threshold = 1e-10;
    std::uint64_t seed = 12345;
    int jobs = 1;

    int effective_k_max() const;
    Backend backend_enum() const;
    SpinorState initial_state(int k_max) const;
    ModelParams model_params() const;
};

// "0.97pi" -> 0.97*pi; plain decimals pass through.
double parse_real(const std::string& text);

// key = value lines; '#' comments; unknown keys are errors.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

std::string format_g17(double v);

// Serialization of a full trajectory (fixed column set; `flag` marks
// rows whose leakage breached the threshold).
std::string trajectory_csv(const Trajectory& traj);

std::string sidecar_json(const RunConfig& cfg, double wall_time,
                         const std::vector<std::string>& flags);
RunConfig config_from_sidecar(const std::string& json_text);

// temp + rename so partially written artifacts are never observed
void atomic_write(const std::string& path, const std::string& content);

int cmd_evolve(const RunConfig& cfg, const std::vector<std::string>& flags);
int cmd_fig1(const RunConfig& cfg, const std::vector<std::string>& flags);
int cmd_fig2(const RunConfig& cfg, int grid_size,
             const std::vector<std::string>& flags);
int cmd_sweep(const RunConfig& cfg, const std::string& key,
              const std::vector<std::string>& values,
              const std::vector<std::string>& flags);
int cmd_verify(const std::string& suite, std::uint64_t seed);

}  // namespace qkr::harness

#endif
