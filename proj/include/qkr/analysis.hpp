#ifndef QKR_ANALYSIS_HPP
#define QKR_ANALYSIS_HPP

#include <array>
#include <string>
#include <vector>

namespace qkr {

// Late-time growth diagnostics for a second-moment series m2(n), n = 0..N.
struct GrowthFit {
    bool refused = false;
    std::string reason;
    double slope = 0.0;        // log-log slope over the final half
    double log_intercept = 0.0;
    int fit_start = 0;
    double transient_amplitude = 0.0;  // max quad-fit residual over the
                                       // first half, relative to m2(N)
};

// Least-squares quadratic c0 + c1 n + c2 n^2 over [start, end).
std::array<double, 3> quadratic_fit(const std::vector<double>& y, int start,
                                    int end);

// Fits the final half of the series in log-log coordinates and measures
// the transient oscillation against a quadratic fit of the same window.
// Refuses series shorter than 64 steps and periodic (non-growing) series.
GrowthFit fit_growth(const std::vector<double>& m2);

}  // namespace qkr

#endif
