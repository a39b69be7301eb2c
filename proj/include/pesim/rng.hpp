#pragma once

#include <cstdint>

namespace pesim {

// xoshiro256++ with splitmix64 seeding. The standard library distributions are
// implementation-defined, so every stochastic result in this codebase goes
// through this generator to keep runs byte-reproducible for a given seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    // uniform double in [0, 1)
    double uniform();

    // standard normal via Box-Muller (two uniforms per pair, cached)
    double normal();

    // Poisson sample with the given mean. Exact (Knuth) for small means,
    // rounded Gaussian above mean 256 where the relative error is < 1e-3.
    std::int64_t poisson(double mean);

  private:
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// Derives an independent stream seed from a master seed and a stream index,
// so that per-point / per-resample RNGs do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace pesim
