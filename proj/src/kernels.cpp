#include "qkr/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qkr::kernels {

namespace {

const Dispatch* g_forced = nullptr;

const Dispatch& pick_default() {
    if (const char* env = std::getenv("QKR_KERNELS")) {
        std::string want(env);
        if (want == "scalar") return scalar();
        if (want == "avx2" && avx2()) return *avx2();
        // unknown or unavailable value: fall through to auto
    }
    if (const Dispatch* d = avx2()) return *d;
    return scalar();
}

}  // namespace

const Dispatch& active() {
    if (g_forced) return *g_forced;
    static const Dispatch& def = pick_default();
    return def;
}

void force(const std::string& name) {
    if (name == "auto") {
        g_forced = nullptr;
    } else if (name == "scalar") {
        g_forced = &scalar();
    } else if (name == "avx2") {
        if (!avx2()) throw std::invalid_argument("avx2 kernels unavailable on this CPU");
        g_forced = avx2();
    } else {
        throw std::invalid_argument("unknown kernel implementation: " + name);
    }
}

}  // namespace qkr::kernels
