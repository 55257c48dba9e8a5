#include "pigd/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pigd/types.hpp"

namespace pigd {

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  require(n > 0, "uniform_index: n must be positive");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  // rem = 2^64 mod n; words in [2^64 - rem, 2^64) would bias the low residues.
  const std::uint64_t rem = (max % n + 1) % n;
  const std::uint64_t last_accepted = max - rem;
  for (;;) {
    const std::uint64_t w = engine_();
    if (rem == 0 || w <= last_accepted) return w % n;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform01();
  } while (u1 <= 0.0);
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

}  // namespace pigd
