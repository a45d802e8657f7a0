#include "qkr/kernels.hpp"

namespace qkr::kernels {

namespace {

void kick_conv_scalar(const cplx* a, const cplx* b, cplx* oa, cplx* ob,
                      const cplx* w, int band, int n) {
    for (int k = 0; k < n; ++k) {
        cplx sa{0.0, 0.0}, sb{0.0, 0.0};
        const int m_lo = (k - (n - 1) > -band) ? k - (n - 1) : -band;
        const int m_hi = (k < band) ? k : band;
        for (int m = m_lo; m <= m_hi; ++m) {
            const cplx wm = w[m + band];
            const int j = k - m;
            if (m & 1) {
                sa += wm * b[j];
                sb += wm * a[j];
            } else {
                sa += wm * a[j];
                sb += wm * b[j];
            }
        }
        oa[k] = sa;
        ob[k] = sb;
    }
}

void phase_mul_scalar(cplx* a, cplx* b, const cplx* pa, const cplx* pb,
                      int n) {
    for (int i = 0; i < n; ++i) {
        a[i] *= pa[i];
        b[i] *= pb[i];
    }
}

}  // namespace

const Dispatch& scalar() {
    static const Dispatch d{kick_conv_scalar, phase_mul_scalar, "scalar"};
    return d;
}

}  // namespace qkr::kernels
