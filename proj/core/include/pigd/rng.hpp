#pragma once

#include <cstdint>
#include <random>

namespace pigd {

/// Seedable 64-bit generator used everywhere randomness enters a run.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The derived draws below avoid the standard distributions, whose
/// algorithms are implementation-defined, so a given seed produces the same
/// stream on every platform:
///
///  - uniform01: top 53 bits of one engine word, scaled by 2^-53, in [0, 1).
///  - uniform_index(n): rejection sampling. Words >= floor(2^64 / n) * n are
///    discarded and redrawn; an accepted word w maps to w % n. Unbiased.
///  - normal: Box-Muller on two uniform01 draws, both values of the pair used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  std::uint64_t uniform_index(std::uint64_t n);
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pigd
