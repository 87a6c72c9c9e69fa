#pragma once

// The moment engine for X = x x' with Gaussian x of covariance P:
//   - matrix product moments M(v) = E[(X P^{v1}) ... (X P^{vm})] by the
//     removal recursion and by the trace-array polynomial formula,
//   - injection trace arrays t_v(k,l) and the rho coefficient families,
//   - weighted aggregates T/W and their traces tau/varpi,
//   - scalar norm moments E<x,x>^n by three independent routes,
//   - matrix power moments E[X^n] by two independent routes.
// Everything is symbolic (trace-polynomial coefficients); numbers are
// evaluations at a CovarianceContext.

#include <map>
#include <utility>
#include <vector>

#include "wmm/combinatorics.hpp"
#include "wmm/matrix_polynomial.hpp"
#include "wmm/trace_algebra.hpp"

namespace wmm {

/// The injection-averaged trace array of a word v (length m, weight n):
/// values at every (k,l) with 0 <= k <= m, 0 <= l <= n.
struct TraceArray {
  MultiIndex v;
  int m = 0;
  int n = 0;
  std::map<std::pair<int, int>, TracePolynomial> values;

  const TracePolynomial& at(int k, int l) const;
};

/// T(m,n) = sum of M(v) over words of length m and weight n;
/// W(m,n) weights each M(v) by (1 + last entry); tau/varpi their traces.
struct AggregateMoments {
  MatrixPolynomial T;
  MatrixPolynomial W;
  TracePolynomial tau;
  TracePolynomial varpi;
};

enum class NormMethod { recursion, permutation, bell };

class MomentEngine {
 public:
  explicit MomentEngine(Caps caps = Caps{});

  const Caps& caps() const { return caps_; }

  /// M(v) by the removal recursion
  ///   M(w, p) = P^{p+1} [ tr(M(w)) I + 2 sum_i M(w minus i, append w_i) ],
  /// base M(empty) = I, M((v1)) = P^{1+v1}. Memoized on the exact word.
  const MatrixPolynomial& moment_recursive(const MultiIndex& v);

  /// t_v = tr(M(v)) with t_empty = 1; memoized on the sorted word (traces
  /// are permutation-invariant; the equality is itself under test).
  const TracePolynomial& trace_moment(const MultiIndex& v);

  /// t_v(k,l) = (m)_k^{-1} sum over injections a:[k]->[m] with |v_a| = l
  /// of t_{v_a}; conventions t_v(0,0) = 1, t_v(m,l) = 1_{l=n} t_v.
  TraceArray trace_array(const MultiIndex& v);
  TracePolynomial trace_array_entry(const MultiIndex& v, int k, int l);

  /// rho^M_{m,n}(v,q) = sum_{k+l=q} 2^k (m)_k t_v(m-k, n-l).
  TracePolynomial rho_M(const MultiIndex& v, int q);

  /// M(v,p) = sum_q rho^M_{m,n}(v,q) P^{1+p+q} (the polynomial route).
  MatrixPolynomial moment_polynomial(const MultiIndex& v, int p);

  /// Aggregates over V_{m,n} (m >= 1).
  AggregateMoments aggregate_moments(int m, int n);

  /// tau(m,n) = sum_v t_v with the convention tau(0,n) = 1_{n=0}.
  TracePolynomial tau(int m, int n);
  /// varpi(m,n) = sum_v (1 + last entry) t_v, same convention at m=0.
  TracePolynomial varpi(int m, int n);

  /// rho^W_{m,n}(q) = sum_{k+l=q} 2^k (m)_k C(q+1,l) tau(m-k, n-l);
  /// these are the P^{1+q} coefficients of W(m+1,n).
  TracePolynomial rho_W(int m, int n, int q);

  /// E<x,x>^n by the chosen route (all three agree exactly).
  TracePolynomial norm_moment_symbolic(int n, NormMethod method);
  Rational norm_moment(const CovarianceContext& ctx, int n, NormMethod method);

  /// E[X^n] = 2^n n!/(2n) sum_{0<=k<n} 2^{-k}/k! E<x,x>^k P^{n-k} (n >= 1;
  /// n = 0 gives the identity).
  MatrixPolynomial matrix_power_moment(int n);

  /// Same quantity with the inner scalars expanded by direct enumeration of
  /// increasing index sequences — an independent route.
  MatrixPolynomial matrix_power_moment_bracket(int n);

  /// 2^{-k}/k! E<x,x>^k as the increasing-sequence sum
  /// sum_p sum_{0=k_0<...<k_p=k} prod_l t_{d_l} / (2 k_l), d_l = k_l-k_{l-1}.
  TracePolynomial increasing_sequence_bracket(int k);

 private:
  Caps caps_;
  std::map<MultiIndex, MatrixPolynomial> memo_m_;
  std::map<MultiIndex, TracePolynomial> memo_t_;
  std::vector<TracePolynomial> norm_recursion_;  // E_0, E_1, ...

  void guard_word(const MultiIndex& v) const;
  const TracePolynomial& norm_recursion(int n);
};

}  // namespace wmm
