#pragma once

// Central matrix moments E[(X - P)^n] and the sample-level non-commutative
// binomial identity (x x' + Q)^{n+1} = Q^{n+1} + sum Xi^l_{k,n} Q^{[l]}(x),
// with the Xi coefficient tables computed two independent ways.

#include <map>
#include <utility>
#include <vector>

#include "wmm/moments.hpp"

namespace wmm {

/// s_k = <x, Q^k x> for k = 0..n.
std::vector<Rational> s_values(const RatMatrix& Q, const std::vector<Rational>& x, int n);

/// Coefficients Xi^l_{k,n} (0 <= l <= k <= n) of the non-commutative
/// binomial expansion, as functions of s_0..s_{n-1}.
struct XiTable {
  int n = 0;
  std::vector<Rational> s;  // s_0..s_{n-1}
  std::map<std::pair<int, int>, Rational> values;

  /// Xi^l_{k,n}; zero off the stored support.
  Rational at(int k, int l) const;
};

/// Fill by the backward recursion Xi^l_{k,n} = sum_{j>l} Xi^j_{k+1,n} s_{j-l-1},
/// boundary row Xi^l_{n,n} = 1_{l=n}.
XiTable xi_table(const std::vector<Rational>& s, int n);

/// Independent form: Xi^l_{k,n} = sum over v in V_{n-k,k-l} of s_{v1}...s_{v_{n-k}}.
Rational xi_extended_binomial(const std::vector<Rational>& s, int n, int k, int l);

/// Q^{[l]}(x) = sum_{a+b=l} Q^a x x' Q^b.
RatMatrix q_bracket(const RatMatrix& Q, const std::vector<Rational>& x, int l);

/// Q^{[k,l]}(x) = Q^k x x' Q^l (one split term).
RatMatrix q_bracket_split(const RatMatrix& Q, const std::vector<Rational>& x, int k, int l);

struct BinomialSamplePair {
  RatMatrix lhs;  // (x x' + Q)^{n+1} by direct matrix power
  RatMatrix rhs;  // Q^{n+1} + sum_{l<=k<=n} Xi^l_{k,n} Q^{[l]}(x)
};

/// Both sides of the sample-level binomial identity; they must be equal.
BinomialSamplePair noncommutative_binomial_sample(const RatMatrix& Q,
                                                  const std::vector<Rational>& x, int n);

/// E[(X - P)^n] = (-1)^n P^n + sum_{0<=k<n} (-1)^k W(n-k, k).
MatrixPolynomial central_moment(MomentEngine& engine, int n);

/// Independent oracle: expand (X - P)^n into its 2^n words over {X, -P},
/// turn each word P^{a0} X P^{a1} ... X P^{aj} into the product moment with
/// P^{a0} absorbed into the polynomial, and sum with signs (-1)^{#P}.
MatrixPolynomial central_moment_word_expansion(MomentEngine& engine, int n);

/// E[(X - I)^n] at P = I_r collapses to a multiple phi_n of the identity.
/// The alternating sum sum_j (-1)^j z_n(j) with z_n(j) = C(n,j) (1/r)
/// prod_{0<=l<n-j} (r+2l) realizes the collapse display as printed; the
/// corrected variant replaces its j = n term 1/r by 1 (exact at every r,
/// and the two coincide at r = 1).
Rational identity_collapse_alternating(int n, int r);
Rational identity_collapse_corrected(int n, int r);

/// E<x,x>^k at P = I_r: prod_{0<=l<k} (r+2l).
Rational identity_norm_moment(int k, int r);

}  // namespace wmm
