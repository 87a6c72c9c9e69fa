#include "wmm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "wmm/errors.hpp"
#include "wmm/rng.hpp"

namespace wmm {

namespace {
int cycle_weight(const std::vector<int>& cycle, const MultiIndex& v) {
  int w = 0;
  for (int i : cycle) w += v[static_cast<std::size_t>(i - 1)];
  return w;
}
}  // namespace

TracePolynomial letac_trace(const MultiIndex& v, const Caps& caps) {
  const int n = static_cast<int>(v.size());
  TracePolynomial total;
  for_each_permutation(n, caps, [&](const CycleDecomposition& sigma) {
    TracePolynomial term(Rational(Integer(1) << (n - sigma.cycle_count())));
    for (const auto& cycle : sigma.cycles)
      term = term * TracePolynomial::variable(static_cast<int>(cycle.size()) + cycle_weight(cycle, v));
    total += term;
  });
  return total;
}

MatrixPolynomial letac_matrix(const MultiIndex& v, const Caps& caps) {
  const int n = static_cast<int>(v.size());
  if (n == 0) return MatrixPolynomial::power_term(0);
  MatrixPolynomial total;
  for_each_permutation(n, caps, [&](const CycleDecomposition& sigma) {
    const DistinguishedCycle parts = distinguished_cycle(sigma, n);
    TracePolynomial coeff(Rational(Integer(1) << (n - sigma.cycle_count())));
    for (const auto& cycle : parts.rest)
      coeff = coeff * TracePolynomial::variable(static_cast<int>(cycle.size()) + cycle_weight(cycle, v));
    total.add_term(static_cast<int>(parts.cycle.size()) + cycle_weight(parts.cycle, v), coeff);
  });
  return total;
}

namespace {
void require_symmetric_set(const CovarianceContext& ctx, const std::vector<RatMatrix>& qs) {
  if (qs.empty()) throw std::invalid_argument("general-Q sum: need at least one matrix");
  for (const auto& q : qs) {
    if (q.rows() != ctx.r())
      throw DimensionMismatch("general-Q sum: matrix dimension does not match covariance");
    if (!q.is_symmetric()) throw std::invalid_argument("general-Q sum: matrices must be symmetric");
  }
}

/// Product of P Q_i along a cycle in stored successor order.
RatMatrix cycle_product(const CovarianceContext& ctx, const std::vector<RatMatrix>& qs,
                        const std::vector<int>& cycle) {
  RatMatrix prod = RatMatrix::identity(ctx.r());
  for (int i : cycle) prod = prod * ctx.matrix() * qs[static_cast<std::size_t>(i - 1)];
  return prod;
}
}  // namespace

Rational letac_general_q_trace(const CovarianceContext& ctx, const std::vector<RatMatrix>& qs,
                               const Caps& caps) {
  require_symmetric_set(ctx, qs);
  const int n = static_cast<int>(qs.size());
  Rational total(0);
  for_each_permutation(n, caps, [&](const CycleDecomposition& sigma) {
    Rational term(Integer(1) << (n - sigma.cycle_count()));
    for (const auto& cycle : sigma.cycles) term *= cycle_product(ctx, qs, cycle).trace();
    total += term;
  });
  return total;
}

RatMatrix letac_general_q_matrix(const CovarianceContext& ctx, const std::vector<RatMatrix>& qs,
                                 const Caps& caps) {
  require_symmetric_set(ctx, qs);
  const int n = static_cast<int>(qs.size());
  RatMatrix sum(ctx.r());
  for_each_permutation(n, caps, [&](const CycleDecomposition& sigma) {
    const DistinguishedCycle parts = distinguished_cycle(sigma, n);
    Rational coeff(Integer(1) << (n - sigma.cycle_count()));
    for (const auto& cycle : parts.rest) coeff *= cycle_product(ctx, qs, cycle).trace();
    const RatMatrix rooted = cycle_product(ctx, qs, parts.rooted) * ctx.matrix();
    sum += (rooted + rooted.transpose()) * (coeff / 2);
  });
  return sum * qs.back();
}

Rational norm_moment_from_traces(MomentEngine& engine, int n,
                                 const std::function<Rational(int)>& t_of) {
  return engine.norm_moment_symbolic(n, NormMethod::recursion).eval_with(t_of);
}

Rational polarization_product(const CovarianceContext& ctx, const std::vector<RatMatrix>& qs,
                              MomentEngine& engine) {
  require_symmetric_set(ctx, qs);
  const int n = static_cast<int>(qs.size());
  if (n > engine.caps().polarization_cap)
    throw CapExceeded("polarization over " + std::to_string(n) + " factors exceeds polarization_cap=" +
                      std::to_string(engine.caps().polarization_cap) +
                      " (raise WMM_POLARIZATION_CAP to override)");
  const TracePolynomial norm_poly = engine.norm_moment_symbolic(n, NormMethod::recursion);
  Rational total(0);
  const unsigned long words = 1UL << n;
  for (unsigned long word = 0; word < words; ++word) {
    RatMatrix qw(ctx.r());
    int sign = 1;
    for (int i = 0; i < n; ++i) {
      const bool plus = (word >> i) & 1UL;
      qw += qs[static_cast<std::size_t>(i)] * Rational(plus ? 1 : -1);
      if (!plus) sign = -sign;
    }
    // Powers of P Q_w supply the traces of the signed-shape Gaussian.
    std::vector<RatMatrix> powers{RatMatrix::identity(ctx.r())};
    const RatMatrix pqw = ctx.matrix() * qw;
    for (int k = 1; k <= n; ++k) powers.push_back(powers.back() * pqw);
    const Rational value = norm_poly.eval_with(
        [&](int k) { return powers[static_cast<std::size_t>(k)].trace(); });
    total += Rational(sign) * value;
  }
  return total / (Rational(factorial(n)) * Rational(Integer(1) << n));
}

LaplaceResult laplace_closed_forms(const CovarianceContext& ctx, const Rational& t, int order) {
  if (order < 0) throw std::invalid_argument("laplace: order must be >= 0");
  const int r = ctx.r();
  LaplaceResult out;
  out.truncation_order = order;

  RatMatrix shifted = RatMatrix::identity(r) - ctx.matrix() * (Rational(2) * t);
  if (!shifted.is_positive_definite())
    throw std::domain_error("laplace: spectral condition violated (I - 2tP is not positive definite)");
  out.mgf = 1.0 / std::sqrt(to_double(shifted.determinant()));
  out.dmgf_over_mgf = shifted.inverse() * ctx.matrix();
  out.dmgf.resize(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      out.dmgf[static_cast<std::size_t>(i) * r + j] = out.mgf * to_double(out.dmgf_over_mgf.at(i, j));

  // log MGF = 1/2 sum_k (2t)^k t_k / k; truncation reported as such.
  double log_series = 0.0;
  Rational two_t_pow(1);
  for (int k = 1; k <= order; ++k) {
    two_t_pow *= Rational(2) * t;
    log_series += 0.5 * to_double(two_t_pow * ctx.trace_power(k) / Rational(k));
  }
  out.mgf_log_series = std::exp(log_series);

  // a_n = E<x,x>^n / n! satisfy n a_n = sum_{j=1..n} 2^{j-1} t_j a_{n-j}.
  out.scalar_coefficients.assign(1, Rational(1));
  for (int n = 1; n <= order; ++n) {
    Rational acc(0);
    for (int j = 1; j <= n; ++j)
      acc += Rational(Integer(1) << (j - 1)) * ctx.trace_power(j) *
             out.scalar_coefficients[static_cast<std::size_t>(n - j)];
    out.scalar_coefficients.push_back(acc / Rational(n));
  }

  // Coefficient of t^n in MGF * (I-2tP)^{-1} P: sum_k a_{n-k} 2^k P^{k+1}.
  for (int n = 0; n <= order; ++n) {
    MatrixPolynomial coeff;
    for (int k = 0; k <= n; ++k)
      coeff.add_term(k + 1, TracePolynomial(out.scalar_coefficients[static_cast<std::size_t>(n - k)] *
                                            Rational(Integer(1) << k)));
    out.matrix_coefficients.push_back(std::move(coeff));
  }
  return out;
}

namespace {
/// Lower Cholesky factor of a symmetric positive definite matrix (double).
std::vector<double> cholesky_lower(const RatMatrix& p) {
  const int r = p.rows();
  std::vector<double> a(static_cast<std::size_t>(r) * r, 0.0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= i; ++j) {
      double sum = to_double(p.at(i, j));
      for (int k = 0; k < j; ++k)
        sum -= a[static_cast<std::size_t>(i) * r + k] * a[static_cast<std::size_t>(j) * r + k];
      if (i == j) {
        if (sum <= 0.0)
          throw std::domain_error("monte carlo: covariance is not positive definite (Cholesky failure)");
        a[static_cast<std::size_t>(i) * r + i] = std::sqrt(sum);
      } else {
        a[static_cast<std::size_t>(i) * r + j] = sum / a[static_cast<std::size_t>(j) * r + j];
      }
    }
  return a;
}

struct ChunkSums {
  std::vector<double> sum;
  std::vector<double> sumsq;
};

constexpr long kChunk = 4096;
}  // namespace

MCResult monte_carlo_M(const CovarianceContext& ctx, const MultiIndex& v, const MCConfig& cfg) {
  if (v.empty()) throw std::invalid_argument("monte carlo: word must be non-empty");
  if (cfg.samples < 2) throw std::invalid_argument("monte carlo: need at least 2 samples");
  const int r = ctx.r();
  const std::size_t cells = static_cast<std::size_t>(r) * r;
  const std::vector<double> chol = cholesky_lower(ctx.matrix());

  // Dense double powers P^{v_i} for the distinct exponents in v.
  const int max_pow = *std::max_element(v.begin(), v.end());
  std::vector<std::vector<double>> powers(static_cast<std::size_t>(max_pow) + 1,
                                          std::vector<double>(cells, 0.0));
  for (int i = 0; i < r; ++i) powers[0][static_cast<std::size_t>(i) * r + i] = 1.0;
  for (int q = 1; q <= max_pow; ++q)
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k) {
        const double pik = powers[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(i) * r + k];
        if (pik == 0.0) continue;
        for (int j = 0; j < r; ++j)
          powers[static_cast<std::size_t>(q)][static_cast<std::size_t>(i) * r + j] +=
              pik * to_double(ctx.matrix().at(k, j));
      }

  const long chunks = (cfg.samples + kChunk - 1) / kChunk;
  std::vector<ChunkSums> partials(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](long c) {
    ChunkSums& out = partials[static_cast<std::size_t>(c)];
    out.sum.assign(cells, 0.0);
    out.sumsq.assign(cells, 0.0);
    std::vector<double> z(static_cast<std::size_t>(r));
    std::vector<double> x(static_cast<std::size_t>(r));
    std::vector<double> y(static_cast<std::size_t>(r));
    const long begin = c * kChunk;
    const long end = std::min(cfg.samples, begin + kChunk);
    for (long s = begin; s < end; ++s) {
      keyed_gauss_vector(cfg.seed, static_cast<std::uint64_t>(s), z);
      for (int i = 0; i < r; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) acc += chol[static_cast<std::size_t>(i) * r + j] * z[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc;
      }
      // prod_i (XX' P^{v_i}) = scal * X (P^{v_m} X)' with the quadratic forms
      // scal = prod_{i<m} <X, P^{v_i} X>.
      double scal = 1.0;
      for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const std::vector<double>& pw = powers[static_cast<std::size_t>(v[i])];
        double q = 0.0;
        for (int a = 0; a < r; ++a) {
          double row = 0.0;
          for (int b = 0; b < r; ++b) row += pw[static_cast<std::size_t>(a) * r + b] * x[static_cast<std::size_t>(b)];
          q += x[static_cast<std::size_t>(a)] * row;
        }
        scal *= q;
      }
      const std::vector<double>& last = powers[static_cast<std::size_t>(v.back())];
      for (int a = 0; a < r; ++a) {
        double row = 0.0;
        for (int b = 0; b < r; ++b) row += last[static_cast<std::size_t>(a) * r + b] * x[static_cast<std::size_t>(b)];
        y[static_cast<std::size_t>(a)] = row;
      }
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          const double value =
              0.5 * scal * (x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] +
                            y[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)]);
          out.sum[static_cast<std::size_t>(i) * r + j] += value;
          out.sumsq[static_cast<std::size_t>(i) * r + j] += value * value;
        }
    }
  };

  const int workers = std::max(1, cfg.threads);
  if (workers == 1) {
    for (long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (long c = w; c < chunks; c += workers) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  // Fixed-order reduction: chunk 0, 1, 2, ... regardless of thread count.
  std::vector<double> sum(cells, 0.0);
  std::vector<double> sumsq(cells, 0.0);
  for (const auto& part : partials)
    for (std::size_t k = 0; k < cells; ++k) {
      sum[k] += part.sum[k];
      sumsq[k] += part.sumsq[k];
    }

  MCResult res;
  res.r = r;
  res.samples = cfg.samples;
  res.estimate.resize(cells);
  res.stderrs.resize(cells);
  const double n = static_cast<double>(cfg.samples);
  for (std::size_t k = 0; k < cells; ++k) {
    const double mean = sum[k] / n;
    res.estimate[k] = mean;
    const double var = std::max(0.0, (sumsq[k] - n * mean * mean) / (n - 1.0));
    res.stderrs[k] = std::sqrt(var / n);
  }
  return res;
}

}  // namespace wmm
