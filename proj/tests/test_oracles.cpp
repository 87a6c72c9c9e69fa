#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wmm/oracles.hpp>
#include <wmm/rng.hpp>

#include <cmath>

using namespace wmm;

namespace {

CovarianceContext diag12() {
  return CovarianceContext(RatMatrix::diagonal({Rational(1), Rational(2)}));
}

}  // namespace

TEST_CASE("permutation oracle agrees with the recursion symbolically") {
  MomentEngine engine;
  const std::vector<MultiIndex> words = {{},       {0},       {2},      {0, 0},
                                         {0, 1},   {1, 0},    {1, 2},   {0, 0, 0},
                                         {1, 0, 1}, {0, 1, 2}, {0, 0, 0, 0}, {1, 0, 0, 1}};
  for (const MultiIndex& v : words) {
    CHECK(letac_matrix(v) == engine.moment_recursive(v));
    CHECK(letac_trace(v) == engine.trace_moment(v));
  }
}

TEST_CASE("general-Q oracle reduces to powers of P") {
  MomentEngine engine;
  const CovarianceContext ctx = diag12();
  const std::vector<MultiIndex> words = {{0}, {1}, {0, 0}, {0, 1}, {1, 2}, {0, 1, 0}};
  for (const MultiIndex& v : words) {
    std::vector<RatMatrix> qs;
    for (int e : v) qs.push_back(ctx.power(e));
    CHECK(letac_general_q_matrix(ctx, qs) == engine.moment_recursive(v).eval(ctx));
    CHECK(letac_general_q_trace(ctx, qs) == ctx.eval(engine.trace_moment(v)));
  }
}

TEST_CASE("general-Q oracle pinned closed form at n = 2") {
  // E[X Q X Q] = tr(PQ) PQ + 2 (PQ)^2.
  const CovarianceContext ctx(random_rational_pd(3, 5));
  const RatMatrix q = random_rational_symmetric(3, 6);
  const RatMatrix pq = ctx.matrix() * q;
  const RatMatrix expected = pq * pq.trace() + pq * pq * Rational(2);
  CHECK(letac_general_q_matrix(ctx, {q, q}) == expected);
  CHECK_THROWS_AS(letac_general_q_matrix(ctx, {q, RatMatrix(2)}), DimensionMismatch);
}

TEST_CASE("polarization matches the general-Q oracle on random symmetric inputs") {
  MomentEngine engine;
  for (int r : {2, 3}) {
    const CovarianceContext ctx(random_rational_pd(r, 21));
    for (int n = 1; n <= 3; ++n) {
      std::vector<RatMatrix> qs;
      for (int i = 0; i < n; ++i) qs.push_back(random_rational_symmetric(r, 300 + 10 * r + i));
      CHECK(polarization_product(ctx, qs, engine) == letac_general_q_trace(ctx, qs));
    }
  }
}

TEST_CASE("polarization collapses to single-matrix norm moments when all Q agree") {
  MomentEngine engine;
  const CovarianceContext ctx(random_rational_pd(3, 33));
  const RatMatrix q = random_rational_symmetric(3, 34);
  const RatMatrix pq = ctx.matrix() * q;
  const auto t_of = [&](int k) {
    RatMatrix power = RatMatrix::identity(3);
    for (int i = 0; i < k; ++i) power = power * pq;
    return power.trace();
  };
  for (int n = 1; n <= 5; ++n) {
    const std::vector<RatMatrix> qs(static_cast<std::size_t>(n), q);
    CHECK(polarization_product(ctx, qs, engine) == norm_moment_from_traces(engine, n, t_of));
  }
}

TEST_CASE("norm moments from traces match the covariance evaluation") {
  MomentEngine engine;
  const CovarianceContext ctx = diag12();
  const auto t_of = [&](int k) { return ctx.trace_power(k); };
  for (int n = 0; n <= 8; ++n) {
    CHECK(norm_moment_from_traces(engine, n, t_of) ==
          engine.norm_moment(ctx, n, NormMethod::recursion));
  }
}

TEST_CASE("laplace closed forms: coefficients, exact ratio, pinned value") {
  MomentEngine engine;
  const CovarianceContext ctx = diag12();
  const Rational t(1, 10);  // 2t tr(P) = 3/5 < 1
  const LaplaceResult res = laplace_closed_forms(ctx, t, 10);

  for (int n = 0; n <= 10; ++n) {
    const Rational expected = ctx.eval(engine.norm_moment_symbolic(n, NormMethod::recursion)) /
                              Rational(factorial(n));
    CHECK(res.scalar_coefficients[static_cast<std::size_t>(n)] == expected);
  }
  for (int n = 0; n <= 8; ++n) {
    const RatMatrix expected =
        engine.matrix_power_moment(n + 1).eval(ctx) * (Rational(1) / Rational(factorial(n)));
    CHECK(res.matrix_coefficients[static_cast<std::size_t>(n)].eval(ctx) == expected);
  }

  // Exact derivative ratio (I-2tP)^{-1} P.
  const RatMatrix shifted = RatMatrix::identity(2) - ctx.matrix() * (Rational(2) * t);
  CHECK(res.dmgf_over_mgf == shifted.inverse() * ctx.matrix());

  // r=1, t=1/4: E exp(X^2/4) = (1-1/2)^{-1/2} = sqrt(2).
  const CovarianceContext one(RatMatrix::identity(1));
  const LaplaceResult scalar = laplace_closed_forms(one, Rational(1, 4), 2);
  CHECK(std::fabs(scalar.mgf - std::sqrt(2.0)) <= 1e-12);

  // Spectral condition: t = 1/2 on r=1 makes I - 2tP singular.
  CHECK_THROWS_AS(laplace_closed_forms(one, Rational(1, 2), 2), std::domain_error);
}

TEST_CASE("monte carlo estimates are reproducible and near the exact values") {
  MomentEngine engine;
  const CovarianceContext ctx = diag12();
  MCConfig cfg;
  cfg.samples = 40000;
  cfg.seed = 7;

  const MultiIndex v = {0, 1};
  const MCResult a = monte_carlo_M(ctx, v, cfg);
  const MCResult b = monte_carlo_M(ctx, v, cfg);
  CHECK(a.estimate == b.estimate);  // bit-identical replay
  CHECK(a.stderrs == b.stderrs);

  MCConfig threaded = cfg;
  threaded.threads = 3;
  const MCResult c = monte_carlo_M(ctx, v, threaded);
  CHECK(a.estimate == c.estimate);  // thread count is scheduling only

  const RatMatrix exact = engine.moment_recursive(v).eval(ctx);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double gap = std::fabs(a.at(i, j) - to_double(exact.at(i, j)));
      CHECK(gap <= 6.0 * a.se(i, j));
    }
  }

  MCConfig other_seed = cfg;
  other_seed.seed = 8;
  const MCResult d = monte_carlo_M(ctx, v, other_seed);
  CHECK_FALSE(a.estimate == d.estimate);
}
