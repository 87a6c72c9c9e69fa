#pragma once

// Independent ground truths the engine is tested against: permutation sums
// over the symmetric group (trace, matrix, and general-Q forms), the
// polarization reduction, moment generating function closed forms, and a
// seeded Monte Carlo estimator.

#include <cstdint>
#include <vector>

#include "wmm/moments.hpp"

namespace wmm {

/// t_v = sum over permutations sigma of [n] of 2^{n-|sigma|}
/// prod_{cycles c} t_{|c| + v(c)}, with v(c) = sum of v_i over i in c.
TracePolynomial letac_trace(const MultiIndex& v, const Caps& caps = Caps{});

/// M(v) = sum_sigma 2^{n-|sigma|} [prod over cycles not containing n of
/// t_{|c|+v(c)}] P^{|c_n|+v(c_n)}, c_n the cycle through n.
MatrixPolynomial letac_matrix(const MultiIndex& v, const Caps& caps = Caps{});

/// E prod_i <XX', Q_i>_F for symmetric Q_i: permutation sum with cycle
/// products tr(prod_{i in c} P Q_i).
Rational letac_general_q_trace(const CovarianceContext& ctx, const std::vector<RatMatrix>& qs,
                               const Caps& caps = Caps{});

/// E[(XX' Q_1) ... (XX' Q_n)]: permutation sum with the rooted cycle through
/// n mapped to sym((PQ)_{rooted} P) Q_n.
RatMatrix letac_general_q_matrix(const CovarianceContext& ctx, const std::vector<RatMatrix>& qs,
                                 const Caps& caps = Caps{});

/// E prod_i <X, Q_i X> by the polarization reduction: a signed average over
/// 2^n sign words w of the norm moment with traces tr((P Q_w)^k),
/// Q_w = sum_i w_i Q_i. Exact; no square roots involved.
Rational polarization_product(const CovarianceContext& ctx, const std::vector<RatMatrix>& qs,
                              MomentEngine& engine);

/// Norm moment E<y,y>^n for y Gaussian with (possibly indefinite) symmetric
/// shape S, evaluated purely from the traces tr(S^k) supplied by t_of.
Rational norm_moment_from_traces(MomentEngine& engine, int n,
                                 const std::function<Rational(int)>& t_of);

struct LaplaceResult {
  double mgf = 0.0;                   // det(I - 2tP)^{-1/2}
  double mgf_log_series = 0.0;        // exp(1/2 sum_{k<=order} (2t)^k t_k / k), truncated
  int truncation_order = 0;
  RatMatrix dmgf_over_mgf;            // exact (I - 2tP)^{-1} P
  std::vector<double> dmgf;           // row-major mgf * (I - 2tP)^{-1} P
  std::vector<Rational> scalar_coefficients;        // n-th: E<x,x>^n / n!
  std::vector<MatrixPolynomial> matrix_coefficients;  // n-th: E[X^{n+1}]/n! as sum a_{n-k} 2^k P^{k+1}
};

/// Closed forms and formal series of E exp(t <X, . X>). Requires the exact
/// spectral condition I - 2tP positive definite for the closed forms.
LaplaceResult laplace_closed_forms(const CovarianceContext& ctx, const Rational& t, int order);

struct MCConfig {
  long samples = 100000;
  std::uint64_t seed = 1;
  int batch = 4096;   // scheduling hint only; estimates do not depend on it
  int threads = 1;    // ditto
};

struct MCResult {
  int r = 0;
  long samples = 0;
  std::vector<double> estimate;  // row-major r x r, symmetrized
  std::vector<double> stderrs;   // row-major entrywise standard errors
  double at(int i, int j) const { return estimate[static_cast<std::size_t>(i) * r + j]; }
  double se(int i, int j) const { return stderrs[static_cast<std::size_t>(i) * r + j]; }
};

/// Monte Carlo estimate of M(v): samples X = L z with L the Cholesky factor
/// of P and z keyed standard normals, averages the symmetrized product
/// (XX' P^{v1}) ... (XX' P^{vm}). Accumulation runs in fixed 4096-sample
/// chunks reduced in index order, so results depend only on (samples, seed).
MCResult monte_carlo_M(const CovarianceContext& ctx, const MultiIndex& v, const MCConfig& cfg);

}  // namespace wmm
