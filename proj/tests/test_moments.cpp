#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wmm/moments.hpp>
#include <wmm/rng.hpp>

using namespace wmm;

namespace {

CovarianceContext diag12() {
  return CovarianceContext(RatMatrix::diagonal({Rational(1), Rational(2)}));
}

CovarianceContext unit(int r) { return CovarianceContext(RatMatrix::identity(r)); }

Rational double_factorial_odd(int n) {
  // (2n-1)!! = E z^{2n} for a standard scalar Gaussian.
  Rational out(1);
  for (int k = 1; k <= n; ++k) out *= Rational(2 * k - 1);
  return out;
}

}  // namespace

TEST_CASE("base moments") {
  MomentEngine engine;
  CHECK(engine.moment_recursive({}) == MatrixPolynomial::power_term(0));
  CHECK(engine.moment_recursive({0}) == MatrixPolynomial::power_term(1));
  CHECK(engine.moment_recursive({3}) == MatrixPolynomial::power_term(4));
  // E[X P^0 X P^1 ...] with a single factor X: E[X] = P^{1+v1}.
  CHECK(engine.trace_moment({}) == TracePolynomial(1));
  CHECK(engine.trace_moment({0}) == TracePolynomial::variable(1));
}

TEST_CASE("pinned second and third order moments") {
  MomentEngine engine;
  // E[X^2] = t1 P + 2 P^2.
  MatrixPolynomial expected2;
  expected2.add_term(1, TracePolynomial::variable(1));
  expected2.add_term(2, TracePolynomial(2));
  CHECK(engine.moment_recursive({0, 0}) == expected2);

  // E[X P X] = t2 P + 2 P^3  (v = (1,0)).
  MatrixPolynomial expected_10;
  expected_10.add_term(1, TracePolynomial::variable(2));
  expected_10.add_term(3, TracePolynomial(2));
  CHECK(engine.moment_recursive({1, 0}) == expected_10);

  // M((0,1)) = P (t1 P + 2 P^2) = t1 P^2 + 2 P^3; at diag(1,2) -> diag(5,28)...
  const CovarianceContext ctx = diag12();
  const RatMatrix m01 = engine.moment_recursive({0, 1}).eval(ctx);
  CHECK(m01 == RatMatrix::diagonal({Rational(5), Rational(28)}));

  // M(1,2,0) = (t2 t3 + 2 t5) P + 2 t3 P^3 + 2 t2 P^4 + 8 P^6.
  MatrixPolynomial expected_120;
  expected_120.add_term(1, TracePolynomial::variable(2) * TracePolynomial::variable(3) +
                               TracePolynomial::variable(5) * Rational(2));
  expected_120.add_term(3, TracePolynomial::variable(3) * Rational(2));
  expected_120.add_term(4, TracePolynomial::variable(2) * Rational(2));
  expected_120.add_term(6, TracePolynomial(8));
  CHECK(engine.moment_recursive({1, 2, 0}) == expected_120);
}

TEST_CASE("trace moments are invariant under word reversal") {
  MomentEngine engine;
  const std::vector<MultiIndex> words = {{0, 1}, {1, 2, 0}, {2, 0, 1, 1}, {0, 0, 3}};
  for (const MultiIndex& v : words) {
    MultiIndex reversed(v.rbegin(), v.rend());
    CHECK(engine.trace_moment(v) == engine.trace_moment(reversed));
  }
}

TEST_CASE("trace arrays: conventions and the averaged example") {
  MomentEngine engine;
  const MultiIndex v = {1, 2};
  const TraceArray arr = engine.trace_array(v);
  CHECK(arr.m == 2);
  CHECK(arr.n == 3);
  CHECK(arr.at(0, 0) == TracePolynomial(1));
  // Full-length injections recover t_v itself at l = n.
  CHECK(arr.at(2, 3) == engine.trace_moment(v));
  // Averaging over the (2)_1 = 2 injections picking one letter: subword (1)
  // has weight 1, subword (2) weight 2, each t_{single} = t_{1+v}.
  CHECK(arr.at(1, 1) == TracePolynomial::variable(2) * Rational(1, 2));
  CHECK(arr.at(1, 2) == TracePolynomial::variable(3) * Rational(1, 2));
  CHECK_THROWS_AS(arr.at(1, 7), std::out_of_range);
}

TEST_CASE("rho coefficients rebuild the moment polynomial") {
  MomentEngine engine;
  const std::vector<MultiIndex> words = {{0}, {0, 0}, {1, 0}, {0, 1, 2}, {2, 1, 0, 1}};
  for (const MultiIndex& v : words) {
    const int m = static_cast<int>(v.size());
    const int n = weight(v);
    for (int p : {0, 1}) {
      MatrixPolynomial rebuilt;
      for (int q = 0; q <= m + n; ++q) {
        rebuilt += MatrixPolynomial::power_term(1 + p + q, engine.rho_M(v, q));
      }
      CHECK(rebuilt == engine.moment_polynomial(v, p));
      // The final letter p enters only through the power shift: the rho
      // coefficients of the first m letters rebuild the (m+1)-letter moment.
      MultiIndex extended = v;
      extended.push_back(p);
      CHECK(rebuilt == engine.moment_recursive(extended));
    }
    // A one-letter word is the trivial instance with an empty prefix.
    CHECK(engine.moment_polynomial({}, v.front()) ==
          engine.moment_recursive({v.front()}));
    // Top coefficient is 2^m m!.
    CHECK(engine.rho_M(v, m + n) ==
          TracePolynomial(Rational(Integer(1) << m) * Rational(factorial(m))));
  }
}

TEST_CASE("aggregates: pinned weighted sums") {
  MomentEngine engine;
  const AggregateMoments a11 = engine.aggregate_moments(1, 1);
  // V_{1,1} = {(1)}: W(1,1) = (1+1) M((1)) = 2 P^2.
  CHECK(a11.W == MatrixPolynomial::power_term(2, TracePolynomial(2)));
  CHECK(a11.T == MatrixPolynomial::power_term(2));

  // W(2,1) = 2 M((0,1)) + M((1,0)) = t2 P + 2 t1 P^2 + 6 P^3.
  const AggregateMoments a21 = engine.aggregate_moments(2, 1);
  MatrixPolynomial expected;
  expected.add_term(1, TracePolynomial::variable(2));
  expected.add_term(2, TracePolynomial::variable(1) * Rational(2));
  expected.add_term(3, TracePolynomial(6));
  CHECK(a21.W == expected);
  CHECK(unit(1).eval(a21.varpi) == Rational(9));
  // Traces match the matrix aggregates.
  const CovarianceContext ctx = diag12();
  CHECK(ctx.eval(a21.tau) == a21.T.eval(ctx).trace());
  CHECK(ctx.eval(a21.varpi) == a21.W.eval(ctx).trace());
}

TEST_CASE("tau and varpi conventions at m = 0") {
  MomentEngine engine;
  CHECK(engine.tau(0, 0) == TracePolynomial(1));
  CHECK(engine.tau(0, 3) == TracePolynomial(0));
  CHECK(engine.varpi(0, 0) == TracePolynomial(1));
  CHECK(engine.varpi(0, 2) == TracePolynomial(0));
}

TEST_CASE("rho^W coefficients rebuild W(m+1,n) and hit the boundary value") {
  MomentEngine engine;
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      MatrixPolynomial rebuilt;
      for (int q = 0; q <= m + n; ++q) {
        rebuilt += MatrixPolynomial::power_term(1 + q, engine.rho_W(m, n, q));
      }
      CHECK(rebuilt == engine.aggregate_moments(m + 1, n).W);
      CHECK(engine.rho_W(m, n, m + n) ==
            TracePolynomial(Rational(Integer(1) << m) * Rational(factorial(m)) *
                            Rational(binomial(m + n + 1, n))));
    }
  }
  // rho^W_{1,1} = (t2, 2 t1, 6): evaluate at r=1 where every t_k = 1.
  const CovarianceContext one = unit(1);
  CHECK(one.eval(engine.rho_W(1, 1, 0)) == Rational(1));
  CHECK(one.eval(engine.rho_W(1, 1, 1)) == Rational(2));
  CHECK(one.eval(engine.rho_W(1, 1, 2)) == Rational(6));
}

TEST_CASE("norm moments: three routes agree and match scalar facts") {
  MomentEngine engine;
  for (int n = 0; n <= 10; ++n) {
    const TracePolynomial rec = engine.norm_moment_symbolic(n, NormMethod::recursion);
    if (n <= 8) {
      CHECK(rec == engine.norm_moment_symbolic(n, NormMethod::permutation));
    }
    CHECK(rec == engine.norm_moment_symbolic(n, NormMethod::bell));
  }
  // r = 1: E <x,x>^n = (2n-1)!!.
  const CovarianceContext one = unit(1);
  for (int n = 0; n <= 10; ++n) {
    CHECK(engine.norm_moment(one, n, NormMethod::recursion) == double_factorial_odd(n));
  }
  // diag(1,2): E <X,X>^2 = (t1)^2 + 2 t2 = 9 + 10 = 19.
  CHECK(engine.norm_moment(diag12(), 2, NormMethod::bell) == Rational(19));
}

TEST_CASE("matrix power moments: direct, recursive, and bracket routes agree") {
  MomentEngine engine;
  for (int n = 1; n <= 7; ++n) {
    const MultiIndex zeros(static_cast<std::size_t>(n), 0);
    const MatrixPolynomial direct = engine.matrix_power_moment(n);
    CHECK(direct == engine.moment_recursive(zeros));
    CHECK(direct == engine.matrix_power_moment_bracket(n));
  }
  CHECK(engine.matrix_power_moment(2).eval(diag12()) ==
        RatMatrix::diagonal({Rational(5), Rational(14)}));
}

TEST_CASE("word caps guard the symbolic engine") {
  Caps tight;
  tight.word_cap = 4;
  MomentEngine engine(tight);
  // The budget is length + weight, the invariant the recursion preserves.
  CHECK_NOTHROW(engine.moment_recursive({0, 0, 1}));
  CHECK_NOTHROW(engine.moment_recursive({3}));
  CHECK_THROWS_AS(engine.moment_recursive({0, 0, 1, 1}), CapExceeded);
  CHECK_THROWS_AS(engine.moment_recursive({5}), CapExceeded);
  CHECK_THROWS_AS(engine.moment_recursive({-1}), std::invalid_argument);
}
