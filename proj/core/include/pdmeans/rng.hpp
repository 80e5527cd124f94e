#pragma once

#include <cstdint>
#include <random>

#include "pdmeans/matrix.hpp"

namespace pdmeans {

/// Deterministic random source. Built on std::mt19937_64 (whose output
/// sequence is fixed by the standard) with explicit uniform and polar
/// Box-Muller mappings, so streams are bit-identical across platforms
/// and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal (polar Box-Muller).
    double gaussian();

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Stream splitting: decorrelates (seed, stream) pairs via splitmix64.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Haar-like random orthogonal matrix: Householder QR of a Gaussian
/// matrix with the R diagonal sign fixed positive.
Matrix random_orthogonal(std::size_t n, Rng& rng);

}  // namespace pdmeans
