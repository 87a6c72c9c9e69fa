#pragma once

// Enumeration primitives: permutations in canonical cycle form, injections,
// weak compositions, extended binomial coefficients, and complete Bell
// polynomials (increasing-sequence form plus the classical recursion used
// as its independent oracle).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wmm/caps.hpp"
#include "wmm/errors.hpp"
#include "wmm/rational.hpp"

namespace wmm {

/// Exponent word v = (v1,...,vm) of non-negative integers indexing a matrix
/// product moment. Positions are 0-based in code, 1-based in formulas.
using MultiIndex = std::vector<int>;

/// |v| = sum of entries.
int weight(const MultiIndex& v);

/// Drop the last entry (the projection pi).
MultiIndex word_front(const MultiIndex& v);

/// The last entry (pi+). Requires a non-empty word.
int word_last(const MultiIndex& v);

std::string word_to_string(const MultiIndex& v);

/// A permutation of [n] = {1,...,n} in canonical cycle form: every cycle is
/// listed in successor order starting with its largest element, and cycles
/// are ordered by increasing largest element.
struct CycleDecomposition {
  int n = 0;
  std::vector<std::vector<int>> cycles;

  /// Number of cycles |sigma| (fixed points included).
  int cycle_count() const { return static_cast<int>(cycles.size()); }

  /// Build from one-line notation: images[i] = sigma(i+1), values in [n].
  static CycleDecomposition from_one_line(const std::vector<int>& images);

  /// Rewrite into canonical form (rotate cycles to largest-first, sort by
  /// largest element). Idempotent on canonical input.
  void canonicalize();

  bool operator==(const CycleDecomposition&) const = default;
};

/// The pieces of a decomposition relative to a distinguished index i:
/// the cycle c(i,sigma) through i, the remaining cycles C(i,sigma), and the
/// rooted cycle c_flat(i,sigma) = c(i,sigma) with i removed, written from
/// the successor of i onward (empty when i is a fixed point).
struct DistinguishedCycle {
  std::vector<int> cycle;
  std::vector<std::vector<int>> rest;
  std::vector<int> rooted;
};

DistinguishedCycle distinguished_cycle(const CycleDecomposition& sigma, int i);

/// Streams all n! permutations of [n] as canonical cycle decompositions, in
/// lexicographic one-line order. Guarded by caps.permutation_cap.
class PermutationStream {
 public:
  PermutationStream(int n, const Caps& caps = Caps{});
  std::optional<CycleDecomposition> next();

 private:
  std::vector<int> images_;
  bool done_ = false;
};

void for_each_permutation(int n, const Caps& caps,
                          const std::function<void(const CycleDecomposition&)>& fn);

/// Streams the (n)_m injections [m] -> [n] (image tuples of distinct values
/// in [n]) in lexicographic order; m = 0 yields the single empty injection.
/// Guarded by caps.injection_cap on n.
class InjectionStream {
 public:
  InjectionStream(int m, int n, const Caps& caps = Caps{});
  std::optional<std::vector<int>> next();

 private:
  int m_, n_;
  std::vector<int> images_;
  bool started_ = false;
  bool done_ = false;

  bool advance();
};

void for_each_injection(int m, int n, const Caps& caps,
                        const std::function<void(const std::vector<int>&)>& fn);

/// Streams V_{m,n}: all words of length m with non-negative entries summing
/// to n, in lexicographic order. m = 0 is allowed only with n = 0 (one empty
/// word). Count is C(n+m-1, n).
class CompositionStream {
 public:
  CompositionStream(int m, int n);
  std::optional<MultiIndex> next();

 private:
  int m_, n_;
  MultiIndex current_;
  bool started_ = false;
  bool done_ = false;
};

void for_each_composition(int m, int n, const std::function<void(const MultiIndex&)>& fn);

/// Number of weak compositions |V_{m,n}| = C(n+m-1, n).
Integer composition_count(int m, int n);

/// Extended binomial coefficient: sum over v in V_{m,n} of
/// beta[v1]*...*beta[vm]. Conventions: (m,n)=(0,0) -> 1; m=0, n>0 -> 0.
/// beta must cover indices 0..n (unused when m = 0).
template <class T>
T extended_binomial(const std::vector<T>& beta, int m, int n) {
  if (m == 0) return n == 0 ? T(1) : T(0);
  if (n > 0 && static_cast<int>(beta.size()) < n + 1)
    throw std::invalid_argument("extended_binomial: beta must cover indices 0..n");
  T total{};
  for_each_composition(m, n, [&](const MultiIndex& v) {
    T term(1);
    for (int entry : v) term = term * beta[static_cast<std::size_t>(entry)];
    total = total + term;
  });
  return total;
}

/// Complete Bell polynomial B_n(b1,...,bn) via the increasing-sequence sum:
/// B_n = n! * sum over 1<=p<=n and 0=k0<k1<...<kp=n of
///       prod_l (1/k_l) * b_{k_l - k_{l-1}} / (k_l - k_{l-1} - 1)!.
/// b holds b_1..b_n (b[i] = b_{i+1}); B_0 = 1 requires T(1).
template <class T>
T complete_bell(const std::vector<T>& b) {
  const int n = static_cast<int>(b.size());
  if (n == 0) return T(1);
  T total{};
  // Interior points k1..k_{p-1} range over subsets of {1..n-1}; k_p = n.
  const unsigned long subsets = 1UL << (n - 1);
  std::vector<int> ks;
  for (unsigned long mask = 0; mask < subsets; ++mask) {
    ks.clear();
    ks.push_back(0);
    for (int j = 1; j < n; ++j)
      if (mask & (1UL << (j - 1))) ks.push_back(j);
    ks.push_back(n);
    Rational coeff(factorial(n));
    T value(1);
    for (std::size_t l = 1; l < ks.size(); ++l) {
      const int d = ks[l] - ks[l - 1];
      coeff /= Rational(Integer(ks[l]) * factorial(d - 1));
      value = value * b[static_cast<std::size_t>(d - 1)];
    }
    total = total + scale(value, coeff);
  }
  return total;
}

/// Independent oracle: the classical recursion
/// B_{n+1} = sum_k C(n,k) b_{k+1} B_{n-k}, B_0 = 1.
template <class T>
T complete_bell_recursion(const std::vector<T>& b) {
  const int n = static_cast<int>(b.size());
  std::vector<T> bell;
  bell.reserve(static_cast<std::size_t>(n) + 1);
  bell.push_back(T(1));
  for (int m = 0; m < n; ++m) {
    T next{};
    for (int k = 0; k <= m; ++k) {
      const Rational c(binomial(m, k));
      next = next + scale(b[static_cast<std::size_t>(k)] * bell[static_cast<std::size_t>(m - k)], c);
    }
    bell.push_back(next);
  }
  return bell.back();
}

}  // namespace wmm
