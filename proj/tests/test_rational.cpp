#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wmm/caps.hpp>
#include <wmm/errors.hpp>
#include <wmm/rat_matrix.hpp>
#include <wmm/rational.hpp>

#include <cstdlib>

using namespace wmm;

TEST_CASE("rational parsing accepts integers, fractions, and decimals") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(parse_rational(" 2/3 ") == Rational(2, 3));
}

TEST_CASE("rational parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
}

TEST_CASE("format round-trips through parse") {
  for (const char* text : {"0", "5", "-12", "22/7", "-3/8"}) {
    CHECK(format_rational(parse_rational(text)) == text);
  }
}

TEST_CASE("factorials and falling factorials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(10) == 3628800);
  CHECK(falling_factorial(5, 0) == 1);
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(5, 5) == 120);
  CHECK(falling_factorial(3, 4) == 0);
  CHECK(falling_factorial(0, 0) == 1);
  CHECK(falling_factorial(0, 1) == 0);
}

TEST_CASE("binomial conventions") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 0) == 1);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(-2, 1) == 0);
  // The single negative-argument value the series formulas rely on.
  CHECK(binomial(-1, 0) == 1);
  // Pascal consistency on a block.
  for (long a = 1; a <= 12; ++a) {
    for (long b = 1; b <= a; ++b) {
      CHECK(binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b));
    }
  }
}

TEST_CASE("matrix arithmetic basics") {
  RatMatrix p = RatMatrix::diagonal({Rational(1), Rational(2)});
  CHECK(p.trace() == Rational(3));
  CHECK(p.power(3).at(1, 1) == Rational(8));
  CHECK(p.power(0) == RatMatrix::identity(2));
  CHECK((p * p) == p.power(2));
  CHECK(p.is_symmetric());
  CHECK(p.is_positive_definite());

  RatMatrix a(2);
  a.at(0, 0) = Rational(2);
  a.at(0, 1) = Rational(1);
  a.at(1, 0) = Rational(1);
  a.at(1, 1) = Rational(2);
  CHECK(a.determinant() == Rational(3));
  CHECK(a.inverse() * a == RatMatrix::identity(2));
  CHECK(a.is_positive_definite());

  RatMatrix not_pd(2);
  not_pd.at(0, 0) = Rational(1);
  not_pd.at(0, 1) = Rational(2);
  not_pd.at(1, 0) = Rational(2);
  not_pd.at(1, 1) = Rational(1);
  CHECK_FALSE(not_pd.is_positive_definite());
  CHECK(not_pd.determinant() == Rational(-3));
}

TEST_CASE("dimension mismatches are rejected") {
  RatMatrix a(2);
  RatMatrix b(3);
  CHECK_THROWS_AS(a * b, DimensionMismatch);
  CHECK_THROWS_AS(a + b, DimensionMismatch);
}

TEST_CASE("caps environment overrides") {
  ::setenv("WMM_WORD_CAP", "7", 1);
  const Caps caps = Caps::from_env();
  CHECK(caps.word_cap == 7);
  ::unsetenv("WMM_WORD_CAP");
  const Caps defaults = Caps::from_env();
  CHECK(defaults.word_cap == Caps{}.word_cap);
}
