#include "statfield/rng.hpp"

#include <cmath>
#include <numbers>

namespace statfield::rng {

std::complex<double> standard_complex_gaussian(std::uint64_t seed, std::uint64_t atom,
                                               std::uint64_t sample, std::uint64_t component) {
    const std::uint64_t k = key(seed, atom, sample, component);
    const double u1 = uniform(mix64(k ^ 0x1ULL));
    const double u2 = uniform(mix64(k ^ 0x2ULL));
    // |Z| ~ Rayleigh with E|Z|^2 = 1.
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace statfield::rng
