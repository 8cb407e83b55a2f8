#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "baker/sphere.hpp"

namespace baker {

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Deterministic sampling stream. Raw mt19937_64 draws are mapped to doubles
// explicitly so the byte stream does not depend on library distribution
// internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    Rng(std::uint64_t seed, std::string_view stream, std::uint64_t salt = 0)
        : eng_(seed ^ fnv1a64(stream) ^ (salt * 0x9e3779b97f4a7c15ULL)) {}

    std::uint64_t bits() { return eng_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }

    double angle() { return 2.0 * pi() * uniform(); }

    /// Uniform by area in the disc D(center, radius).
    cplx in_disc(cplx center, double radius) {
        const double t = std::sqrt(uniform());
        const double a = angle();
        return center + radius * t * cplx{std::cos(a), std::sin(a)};
    }

    /// Uniform in radius (not area) over {lo <= |w| <= hi}, centred at 0.
    cplx in_round_annulus(double lo, double hi) {
        const double s = uniform(lo, hi);
        const double a = angle();
        return s * cplx{std::cos(a), std::sin(a)};
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

private:
    std::mt19937_64 eng_;
};

} // namespace baker
