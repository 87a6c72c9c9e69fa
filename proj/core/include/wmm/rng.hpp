#pragma once

// Counter-based randomness: every value is a pure function of (seed,
// counters), so parallel or re-ordered sampling replays bit-identically.

#include <cstdint>
#include <vector>

#include "wmm/rat_matrix.hpp"

namespace wmm {

/// SplitMix64 finalizer: one 64-bit mix step.
std::uint64_t mix64(std::uint64_t z);

/// Keyed counter value: mixes seed with up to two counter indices.
std::uint64_t keyed_value(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

/// Uniform draw in (0,1] from a keyed value (53-bit mantissa).
double keyed_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

/// Standard normal pair from two uniforms (polar-free Box-Muller), keyed by
/// (seed, sample index, pair index).
struct GaussPair {
  double z0;
  double z1;
};
GaussPair keyed_gauss_pair(std::uint64_t seed, std::uint64_t sample, std::uint64_t pair);

/// Fill out[0..r) with standard normals for one sample index.
void keyed_gauss_vector(std::uint64_t seed, std::uint64_t sample, std::vector<double>& out);

/// Random exact-rational positive definite matrix A^T A + I with integer
/// A entries in [-3, 3], deterministic in the seed.
RatMatrix random_rational_pd(int r, std::uint64_t seed);

/// Random exact-rational symmetric matrix with integer entries in [-4, 4].
RatMatrix random_rational_symmetric(int r, std::uint64_t seed);

/// Random exact-rational vector with integer entries in [-4, 4].
std::vector<Rational> random_rational_vector(int r, std::uint64_t seed);

}  // namespace wmm
