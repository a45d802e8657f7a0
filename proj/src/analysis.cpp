#include "qkr/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace qkr {

std::array<double, 3> quadratic_fit(const std::vector<double>& y, int start,
                                    int end) {
    if (end - start < 3) throw std::invalid_argument("quadratic_fit: too few points");
    // Normal equations for the Vandermonde system, solved by Gaussian
    // elimination on the 3x3 moment matrix.
    double s[5] = {0, 0, 0, 0, 0};
    double r[3] = {0, 0, 0};
    for (int n = start; n < end; ++n) {
        const double x = n;
        double p = 1.0;
        for (int d = 0; d <= 4; ++d) {
            s[d] += p;
            if (d <= 2) r[d] += p * y[n];
            p *= x;
        }
    }
    double m[3][4] = {{s[0], s[1], s[2], r[0]},
                      {s[1], s[2], s[3], r[1]},
                      {s[2], s[3], s[4], r[2]}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
        for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
        for (int row = 0; row < 3; ++row) {
            if (row == col) continue;
            const double f = m[row][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

GrowthFit fit_growth(const std::vector<double>& m2) {
    GrowthFit fit;
    const int n_total = static_cast<int>(m2.size()) - 1;
    if (n_total < 64) {
        fit.refused = true;
        fit.reason = "run too short for fit (< 64 steps)";
        return fit;
    }
    fit.fit_start = n_total / 2;

    // A periodic regime has no late-time growth to fit.
    double late_max = 0.0, early_max = 0.0;
    for (int n = 1; n <= n_total; ++n) {
        if (n >= fit.fit_start)
            late_max = std::max(late_max, m2[n]);
        else
            early_max = std::max(early_max, m2[n]);
    }
    if (late_max <= 0.0 || late_max < 2.0 * early_max) {
        fit.refused = true;
        fit.reason = "periodic regime: second moment is not growing";
        return fit;
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int n = fit.fit_start; n <= n_total; ++n) {
        if (m2[n] <= 0.0) continue;
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(m2[n]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double denom = count * sxx - sx * sx;
    fit.slope = (count * sxy - sx * sy) / denom;
    fit.log_intercept = (sy - fit.slope * sx) / count;

    std::array<double, 3> quad = quadratic_fit(m2, fit.fit_start, n_total + 1);
    double amp = 0.0;
    for (int n = 0; n < fit.fit_start; ++n) {
        const double model = quad[0] + quad[1] * n + quad[2] * n * n;
        amp = std::max(amp, std::abs(m2[n] - model));
    }
    fit.transient_amplitude = amp / m2[n_total];
    return fit;
}

}  // namespace qkr
