#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "singlab/rational.hpp"

namespace singlab {

/// Seeded stream of dyadic rationals.  Bounded integers are drawn by
/// rejection on raw mt19937_64 output so results do not depend on the
/// standard library's distribution implementation.
class SampleStream {
 public:
  static constexpr unsigned kDenominatorBits = 16;

  explicit SampleStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      const std::uint64_t x = gen_();
      if (x < limit) return x % n;
    }
  }

  /// Uniform k / 2^16 in [-delta, delta].
  Rational dyadic_in(const Rational& delta) {
    const Rational scale = pow(Rational(2), kDenominatorBits);
    const Integer k_max = floor(delta * scale);
    const std::uint64_t span = static_cast<std::uint64_t>(k_max.get_ui()) * 2 + 1;
    const std::int64_t k = static_cast<std::int64_t>(below(span)) - static_cast<std::int64_t>(k_max.get_ui());
    Rational r(static_cast<long>(k));
    return r / scale;
  }

  std::vector<Rational> point_in_box(std::size_t dim, const Rational& delta) {
    std::vector<Rational> t;
    t.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) t.push_back(dyadic_in(delta));
    return t;
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace singlab
