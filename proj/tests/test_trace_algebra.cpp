#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wmm/errors.hpp>
#include <wmm/matrix_polynomial.hpp>
#include <wmm/rng.hpp>
#include <wmm/trace_algebra.hpp>

using namespace wmm;

namespace {

CovarianceContext diag12() {
  return CovarianceContext(RatMatrix::diagonal({Rational(1), Rational(2)}));
}

}  // namespace

TEST_CASE("trace polynomial ring arithmetic and printing") {
  const TracePolynomial t1 = TracePolynomial::variable(1);
  const TracePolynomial t2 = TracePolynomial::variable(2);
  const TracePolynomial p = t1 * t1 + TracePolynomial(2) * t2;
  CHECK(p.to_string() == "t1^2 + 2 t2");
  CHECK((p - p).is_zero());
  CHECK((t1 * t2) * t1 == t1 * (t2 * t1));
  CHECK(p.max_index() == 2);
  CHECK(TracePolynomial(Rational(5, 3)).is_constant());
  CHECK(TracePolynomial(Rational(5, 3)).constant_value() == Rational(5, 3));

  // Distributivity on a random-ish triple.
  const TracePolynomial a = t1 + TracePolynomial(3);
  const TracePolynomial b = t2 * t1 - TracePolynomial(1);
  const TracePolynomial c = t2 + t1 * t1;
  CHECK(a * (b + c) == a * b + a * c);
}

TEST_CASE("evaluation is a ring homomorphism") {
  const CovarianceContext ctx = diag12();
  const TracePolynomial t1 = TracePolynomial::variable(1);
  const TracePolynomial t2 = TracePolynomial::variable(2);
  const TracePolynomial a = t1 * t2 + TracePolynomial(Rational(1, 2));
  const TracePolynomial b = t1 * t1 * t1 - t2;
  CHECK(ctx.eval(a * b) == ctx.eval(a) * ctx.eval(b));
  CHECK(ctx.eval(a + b) == ctx.eval(a) + ctx.eval(b));
  // tr(P)=3, tr(P^2)=5 at diag(1,2).
  CHECK(ctx.eval(t1) == Rational(3));
  CHECK(ctx.eval(t2) == Rational(5));
  CHECK(ctx.trace_power(0) == Rational(2));  // t_0 = r
}

TEST_CASE("covariance context validates its matrix") {
  RatMatrix asym(2);
  asym.at(0, 1) = Rational(1);
  CHECK_THROWS_AS(CovarianceContext{asym}, ParseError);

  RatMatrix indefinite = RatMatrix::diagonal({Rational(1), Rational(-1)});
  CHECK_THROWS_AS(CovarianceContext{indefinite}, ParseError);
  CHECK_NOTHROW(CovarianceContext(indefinite, /*require_pd=*/false));
}

TEST_CASE("trace degree cap guards the power cache") {
  Caps tight;
  tight.trace_degree_cap = 3;
  const CovarianceContext ctx(RatMatrix::identity(2), true, tight);
  CHECK(ctx.trace_power(3) == Rational(2));
  CHECK_THROWS_AS(ctx.trace_power(4), CapExceeded);
}

TEST_CASE("matrix polynomials evaluate and trace coherently") {
  const CovarianceContext ctx = diag12();
  // f = t1 P + 2 P^2.
  MatrixPolynomial f;
  f.add_term(1, TracePolynomial::variable(1));
  f.add_term(2, TracePolynomial(2));
  CHECK(f.to_string() == "t1 P + 2 P^2");
  const RatMatrix value = f.eval(ctx);
  CHECK(value == RatMatrix::diagonal({Rational(5), Rational(14)}));
  // Symbolic trace then evaluate == evaluate then trace.
  CHECK(ctx.eval(f.symbolic_trace()) == value.trace());
  // Shifting multiplies by P.
  CHECK(f.shift(2).eval(ctx) == ctx.power(2) * value);

  MatrixPolynomial with_identity = MatrixPolynomial::power_term(0, TracePolynomial(3));
  CHECK_THROWS_AS(with_identity.symbolic_trace(), std::logic_error);
  CHECK(with_identity.symbolic_trace(5) == TracePolynomial(15));
}

TEST_CASE("matrix polynomial ring identities") {
  const TracePolynomial t1 = TracePolynomial::variable(1);
  MatrixPolynomial f;
  f.add_term(0, t1);
  f.add_term(3, TracePolynomial(Rational(1, 2)));
  MatrixPolynomial g = MatrixPolynomial::power_term(1) + MatrixPolynomial::power_term(2, t1);
  const CovarianceContext ctx = diag12();
  CHECK((f + g).eval(ctx) == f.eval(ctx) + g.eval(ctx));
  CHECK((f * t1).eval(ctx) == f.eval(ctx) * ctx.eval(t1));
  CHECK((f - g).degree() == 3);
  CHECK(f.coefficient(3) == TracePolynomial(Rational(1, 2)));
  CHECK(f.coefficient(7).is_zero());
}

TEST_CASE("seeded random rational matrices are reproducible and well-formed") {
  const RatMatrix p1 = random_rational_pd(3, 42);
  const RatMatrix p2 = random_rational_pd(3, 42);
  const RatMatrix p3 = random_rational_pd(3, 43);
  CHECK(p1 == p2);
  CHECK_FALSE(p1 == p3);
  CHECK(p1.is_symmetric());
  CHECK(p1.is_positive_definite());

  const RatMatrix q = random_rational_symmetric(4, 7);
  CHECK(q.is_symmetric());
  const auto x = random_rational_vector(4, 9);
  CHECK(x.size() == 4);
}
