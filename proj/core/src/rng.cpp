#include "wmm/rng.hpp"

#include <cmath>
#include <numbers>

namespace wmm {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t keyed_value(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  return mix64(mix64(mix64(seed) ^ i) ^ j);
}

double keyed_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  // Top 53 bits, shifted into (0,1]: never 0, so log() below is safe.
  return static_cast<double>((keyed_value(seed, i, j) >> 11) + 1) * 0x1.0p-53;
}

GaussPair keyed_gauss_pair(std::uint64_t seed, std::uint64_t sample, std::uint64_t pair) {
  const double u1 = keyed_uniform(seed, sample, 2 * pair);
  const double u2 = keyed_uniform(seed, sample, 2 * pair + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

void keyed_gauss_vector(std::uint64_t seed, std::uint64_t sample, std::vector<double>& out) {
  const std::size_t r = out.size();
  for (std::size_t p = 0; 2 * p < r; ++p) {
    const GaussPair g = keyed_gauss_pair(seed, sample, p);
    out[2 * p] = g.z0;
    if (2 * p + 1 < r) out[2 * p + 1] = g.z1;
  }
}

namespace {
// Small signed integer in [-bound, bound] from a keyed value.
int keyed_small_int(std::uint64_t seed, std::uint64_t i, std::uint64_t j, int bound) {
  const std::uint64_t v = keyed_value(seed, i, j);
  return static_cast<int>(v % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
}
}  // namespace

RatMatrix random_rational_pd(int r, std::uint64_t seed) {
  RatMatrix a(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      a.at(i, j) = keyed_small_int(seed, static_cast<std::uint64_t>(i),
                                   static_cast<std::uint64_t>(j), 3);
  return a.transpose() * a + RatMatrix::identity(r);
}

RatMatrix random_rational_symmetric(int r, std::uint64_t seed) {
  RatMatrix q(r);
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      const int v = keyed_small_int(seed, static_cast<std::uint64_t>(i),
                                    static_cast<std::uint64_t>(j), 4);
      q.at(i, j) = v;
      q.at(j, i) = v;
    }
  return q;
}

std::vector<Rational> random_rational_vector(int r, std::uint64_t seed) {
  std::vector<Rational> x(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i)
    x[static_cast<std::size_t>(i)] = keyed_small_int(seed, static_cast<std::uint64_t>(i), 0, 4);
  return x;
}

}  // namespace wmm
