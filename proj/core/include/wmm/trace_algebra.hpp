#pragma once

// The scalar coefficient ring of every moment formula: exact multivariate
// polynomials in the abstract trace variables t_k = tr(P^k), plus the
// covariance context they are evaluated against.

#include <functional>
#include <map>
#include <string>

#include "wmm/caps.hpp"
#include "wmm/rat_matrix.hpp"
#include "wmm/rational.hpp"

namespace wmm {

/// Product of trace variables: map k -> multiplicity, meaning prod t_k^mult.
/// Keys are >= 1 and multiplicities >= 1 (the empty map is the monomial 1).
using TraceMonomial = std::map<int, int>;

/// Total degree sum(k * mult) of a monomial.
int monomial_degree(const TraceMonomial& m);

std::string monomial_to_string(const TraceMonomial& m);

/// Polynomial in the t_k with exact rational coefficients. Zero coefficients
/// are never stored, so equality of the term maps is polynomial identity.
class TracePolynomial {
 public:
  TracePolynomial() = default;
  TracePolynomial(int c) : TracePolynomial(Rational(c)) {}  // NOLINT: ring literal
  TracePolynomial(const Rational& c);                       // NOLINT: ring literal

  /// The monomial t_k^mult.
  static TracePolynomial variable(int k, int mult = 1);

  const std::map<TraceMonomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 if absent).
  Rational constant_value() const;
  /// Largest trace index appearing in any term (0 for constants).
  int max_index() const;

  TracePolynomial operator+(const TracePolynomial& other) const;
  TracePolynomial operator-(const TracePolynomial& other) const;
  TracePolynomial operator*(const TracePolynomial& other) const;
  TracePolynomial operator-() const;
  TracePolynomial& operator+=(const TracePolynomial& other);
  TracePolynomial& operator-=(const TracePolynomial& other);
  TracePolynomial operator*(const Rational& s) const;
  bool operator==(const TracePolynomial& other) const = default;

  /// Substitute t_k = t_of(k); a ring homomorphism.
  Rational eval_with(const std::function<Rational(int)>& t_of) const;

  /// Human-readable form like "t1^2 + 2 t2" (constant "0" when empty).
  std::string to_string() const;

  /// Add coeff * monomial, pruning a resulting zero.
  void add_term(const TraceMonomial& monomial, const Rational& coeff);

 private:
  std::map<TraceMonomial, Rational> terms_;
};

TracePolynomial operator*(const Rational& s, const TracePolynomial& p);

/// ADL hook for generic ring code (Bell polynomials and friends).
inline TracePolynomial scale(const TracePolynomial& p, const Rational& s) { return p * s; }

/// A concrete covariance: dimension r, exact symmetric matrix P, and lazily
/// grown caches of P^k and t_k = tr(P^k). Symmetry is always required;
/// strict positive definiteness (Sylvester, exact) is checked unless
/// require_pd is false (quadratic-form moment formulas stay valid for
/// indefinite symmetric matrices).
class CovarianceContext {
 public:
  explicit CovarianceContext(RatMatrix P, bool require_pd = true, const Caps& caps = Caps{});

  int r() const { return matrix_.rows(); }
  const RatMatrix& matrix() const { return matrix_; }
  const Caps& caps() const { return caps_; }

  /// P^k for k >= 0; cache grows monotonically up to caps.trace_degree_cap.
  const RatMatrix& power(int k) const;

  /// t_k = tr(P^k); t_0 = r.
  Rational trace_power(int k) const;

  /// Substitute t_k = tr(P^k) into a trace polynomial.
  Rational eval(const TracePolynomial& p) const;

 private:
  RatMatrix matrix_;
  Caps caps_;
  mutable std::vector<RatMatrix> powers_;  // powers_[k] = P^k

  void ensure_power(int k) const;
};

}  // namespace wmm
