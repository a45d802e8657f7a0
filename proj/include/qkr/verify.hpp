#ifndef QKR_VERIFY_HPP
#define QKR_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qkr {

// One entry of a verification battery.  Residuals (not booleans) so the
// CLI can log margins and regressions stay quantitative.
struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return residual < tolerance; }
};

// suite in {"bessel", "identities", "backends", "closedform", "all"};
// unknown names throw std::invalid_argument.
std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          std::uint64_t seed);

}  // namespace qkr

#endif
