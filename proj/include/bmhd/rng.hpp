#pragma once
#include <cstdint>
#include <random>

namespace bmhd {

// Deterministic random source.  All distributions are built from raw mt19937_64
// output so streams are reproducible across standard libraries; std::*_distribution
// is implementation-defined and must not be used anywhere seeds matter.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t bits();
  double uniform();                    // [0, 1), 53-bit resolution
  double uniform(double lo, double hi);
  double normal();                     // standard normal, Box-Muller
  int uniform_int(int lo, int hi);     // inclusive range

  // Independent substream; fork(i) != fork(j) for i != j, order-independent.
  Rng fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bmhd
