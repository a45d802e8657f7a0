#ifndef QKR_VERSION_HPP
#define QKR_VERSION_HPP

namespace qkr {
inline constexpr const char* kVersion = "1.0.0";
}

#endif
