#ifndef QKR_KERNELS_HPP
#define QKR_KERNELS_HPP

#include <complex>
#include <string>

namespace qkr::kernels {

using cplx = std::complex<double>;

// Banded kick application on the momentum lattice, open boundaries:
//   oa[k] = sum_{|m|<=band} w[m+band] * (m even ? a : b)[k-m]
//   ob[k] = sum_{|m|<=band} w[m+band] * (m even ? b : a)[k-m]
// Source indices outside [0, n) contribute nothing (amplitudes that
// would leave the window are dropped, never wrapped).
using KickConvFn = void (*)(const cplx* a, const cplx* b, cplx* oa, cplx* ob,
                            const cplx* w, int band, int n);

// Pointwise phase multiply: a[i] *= pa[i], b[i] *= pb[i].
using PhaseMulFn = void (*)(cplx* a, cplx* b, const cplx* pa, const cplx* pb,
                            int n);

struct Dispatch {
    KickConvFn kick_conv;
    PhaseMulFn phase_mul;
    const char* name;
};

// Scalar reference kernels (fixed summation order; the determinism
// contract for trajectories is defined against these loops).
const Dispatch& scalar();

// AVX2 variants; nullptr when the CPU or build lacks them.
const Dispatch* avx2();

// The runtime-selected implementation.  Honors QKR_KERNELS=scalar|avx2
// from the environment; defaults to the best available.
const Dispatch& active();

// Force a specific implementation ("scalar", "avx2", "auto").
// Throws std::invalid_argument for unknown or unavailable names.
void force(const std::string& name);

}  // namespace qkr::kernels

#endif
