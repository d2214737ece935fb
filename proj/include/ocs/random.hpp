#pragma once

#include <cstdint>
#include <random>

#include "ocs/matrix.hpp"
#include "ocs/rational.hpp"

namespace ocs {

// Deterministic sampling. std::mt19937_64 output is pinned by the standard;
// the distributions below are hand-rolled because std::uniform_int_distribution
// is not bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [lo, hi]. Modulo bias is irrelevant at these ranges.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  // Small random rational, numerator in [-max_num, max_num], denominator
  // in [1, max_den]. Not uniform over values; only cheap and exact.
  Rational rational(std::int64_t max_num = 4, std::int64_t max_den = 3) {
    return rat(uniform_int(-max_num, max_num), uniform_int(1, max_den));
  }

  double real01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

inline RMatrix random_rational_matrix(Rng& rng, std::size_t rows,
                                      std::size_t cols,
                                      std::int64_t max_num = 4,
                                      std::int64_t max_den = 3) {
  RMatrix m(rows, cols);
  bool nonzero = false;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = rng.rational(max_num, max_den);
      if (m(i, j) != 0) nonzero = true;
    }
  if (!nonzero) m(0, 0) = 1;
  return m;
}

}  // namespace ocs
