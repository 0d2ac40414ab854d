#pragma once

#include <cstdint>
#include <random>

namespace factorcop {

//! Seeded stream of open-interval uniforms.
//!
//! The engine state is derived from the seed through splitmix64 so that
//! consecutive seeds (seed0 + rep) give unrelated streams. Uniforms are built
//! from the top 53 bits directly instead of std::uniform_real_distribution,
//! whose output is implementation-defined.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(splitmix64(seed))
  {}

  //! Uniform on (0, 1); never returns 0 or 1.
  double uniform()
  {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  static std::uint64_t splitmix64(std::uint64_t x)
  {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace factorcop
