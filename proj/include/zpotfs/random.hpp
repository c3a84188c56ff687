#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "zpotfs/types.hpp"

namespace zpotfs {

// Deterministic seed splitting (splitmix64). Used to derive independent
// per-trial streams from a base seed; the mt19937_64 output sequence is
// fixed by the standard, so identical seeds give identical trials on any
// platform.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Random stream with reproducible draws built directly on the engine output
// (std::normal_distribution et al. are implementation-defined, so Gaussians
// are generated by explicit Box-Muller).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    int bit() { return static_cast<int>(engine_() & 1u); }

    // Uniform in (0, 1]; never returns 0 so log() is safe.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard circularly-symmetric complex Gaussian, E|z|^2 = 1.
    cplx cgauss() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    double angle() { return 2.0 * std::numbers::pi * uniform01(); }

  private:
    std::mt19937_64 engine_;
};

inline constexpr const char* kRngName = "mt19937_64/box-muller";

}  // namespace zpotfs
