// AVX2 variants of the lattice kernels.  Compiled with -mavx2 on x86-64;
// availability is still checked at runtime before dispatch.

#include "qkr/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>

namespace qkr::kernels {
namespace {

// One output site, scalar; used for the boundary strips.
inline void kick_one(const cplx* a, const cplx* b, cplx* oa, cplx* ob,
                     const cplx* w, int band, int n, int k) {
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

// acc += src * (wr + i*wi), two complex lanes at once
inline __m256d cmul_acc(__m256d acc, __m256d src, __m256d wr, __m256d wi) {
    __m256d t1 = _mm256_mul_pd(src, wr);
    __m256d sw = _mm256_shuffle_pd(src, src, 0x5);  // swap re/im per lane
    __m256d t2 = _mm256_mul_pd(sw, wi);
    return _mm256_add_pd(acc, _mm256_addsub_pd(t1, t2));
}

void kick_conv_avx2(const cplx* a, const cplx* b, cplx* oa, cplx* ob,
                    const cplx* w, int band, int n) {
    const int lo = band < n ? band : n;
    const int hi = (n - band) > lo ? (n - band) : lo;
    for (int k = 0; k < lo; ++k) kick_one(a, b, oa, ob, w, band, n, k);
    for (int k = hi; k < n; ++k) kick_one(a, b, oa, ob, w, band, n, k);

    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    int k = lo;
    for (; k + 1 < hi; k += 2) {
        __m256d acc_a = _mm256_setzero_pd();
        __m256d acc_b = _mm256_setzero_pd();
        for (int m = -band; m <= band; ++m) {
            const cplx wm = w[m + band];
            const __m256d wr = _mm256_set1_pd(wm.real());
            const __m256d wi = _mm256_set1_pd(wm.imag());
            const int j = k - m;
            const __m256d sa = _mm256_loadu_pd(ad + 2 * j);
            const __m256d sb = _mm256_loadu_pd(bd + 2 * j);
            if (m & 1) {
                acc_a = cmul_acc(acc_a, sb, wr, wi);
                acc_b = cmul_acc(acc_b, sa, wr, wi);
            } else {
                acc_a = cmul_acc(acc_a, sa, wr, wi);
                acc_b = cmul_acc(acc_b, sb, wr, wi);
            }
        }
        _mm256_storeu_pd(reinterpret_cast<double*>(oa + k), acc_a);
        _mm256_storeu_pd(reinterpret_cast<double*>(ob + k), acc_b);
    }
    for (; k < hi; ++k) kick_one(a, b, oa, ob, w, band, n, k);
}

void phase_mul_avx2(cplx* a, cplx* b, const cplx* pa, const cplx* pb, int n) {
    double* ad = reinterpret_cast<double*>(a);
    double* bd = reinterpret_cast<double*>(b);
    const double* pad = reinterpret_cast<const double*>(pa);
    const double* pbd = reinterpret_cast<const double*>(pb);
    int i = 0;
    for (; i + 1 < n; i += 2) {
        __m256d va = _mm256_loadu_pd(ad + 2 * i);
        __m256d vb = _mm256_loadu_pd(bd + 2 * i);
        __m256d qa = _mm256_loadu_pd(pad + 2 * i);
        __m256d qb = _mm256_loadu_pd(pbd + 2 * i);
        // per-lane complex multiply with non-broadcast phases
        __m256d ar = _mm256_unpacklo_pd(qa, qa);  // [re0,re0,re1,re1]
        __m256d ai = _mm256_unpackhi_pd(qa, qa);
        __m256d br = _mm256_unpacklo_pd(qb, qb);
        __m256d bi = _mm256_unpackhi_pd(qb, qb);
        __m256d ra = _mm256_addsub_pd(_mm256_mul_pd(va, ar),
                                      _mm256_mul_pd(_mm256_shuffle_pd(va, va, 0x5), ai));
        __m256d rb = _mm256_addsub_pd(_mm256_mul_pd(vb, br),
                                      _mm256_mul_pd(_mm256_shuffle_pd(vb, vb, 0x5), bi));
        _mm256_storeu_pd(ad + 2 * i, ra);
        _mm256_storeu_pd(bd + 2 * i, rb);
    }
    for (; i < n; ++i) {
        a[i] *= pa[i];
        b[i] *= pb[i];
    }
}

}  // namespace

const Dispatch* avx2() {
    static const bool ok = __builtin_cpu_supports("avx2");
    static const Dispatch d{kick_conv_avx2, phase_mul_avx2, "avx2"};
    return ok ? &d : nullptr;
}

}  // namespace qkr::kernels

#else

namespace qkr::kernels {
const Dispatch* avx2() { return nullptr; }
}  // namespace qkr::kernels

#endif
