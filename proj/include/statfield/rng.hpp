#pragma once

#include <complex>
#include <cstdint>

namespace statfield {

/// Counter-based deterministic noise: every draw is a pure function of
/// (seed, atom, sample, component), so ensembles are reproducible regardless
/// of evaluation order or thread count.
namespace rng {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t atom, std::uint64_t sample,
                         std::uint64_t component) {
    std::uint64_t k = mix64(seed);
    k = mix64(k ^ (atom * 0xd6e8feb86659fd93ULL));
    k = mix64(k ^ (sample * 0xa3b195354a39b70dULL));
    k = mix64(k ^ (component * 0x9e6c63d0876a9a0fULL));
    return k;
}

/// Uniform in (0, 1].
inline double uniform(std::uint64_t k) {
    return (static_cast<double>(k >> 11) + 1.0) * 0x1p-53;
}

/// Standard complex Gaussian with E[|Z|^2] = 1 (real and imaginary parts
/// independent N(0, 1/2)), via Box-Muller on two counter draws.
std::complex<double> standard_complex_gaussian(std::uint64_t seed, std::uint64_t atom,
                                               std::uint64_t sample, std::uint64_t component);

}  // namespace rng
}  // namespace statfield
