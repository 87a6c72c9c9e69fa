#pragma once

// Polynomials sum_q c_q(t) P^q in the covariance matrix P, with trace-
// polynomial coefficients: the common shape of every matrix-valued moment
// formula here. Two polynomials are equal iff their coefficient maps are.

#include <map>
#include <string>

#include "wmm/trace_algebra.hpp"

namespace wmm {

class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;

  /// c * P^q.
  static MatrixPolynomial power_term(int q, TracePolynomial c = TracePolynomial(1));

  const std::map<int, TracePolynomial>& coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of P^q (zero polynomial if absent).
  const TracePolynomial& coefficient(int q) const;
  /// Largest exponent with nonzero coefficient (-1 for the zero polynomial).
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  void add_term(int q, const TracePolynomial& c);

  MatrixPolynomial operator+(const MatrixPolynomial& other) const;
  MatrixPolynomial operator-(const MatrixPolynomial& other) const;
  MatrixPolynomial& operator+=(const MatrixPolynomial& other);
  MatrixPolynomial operator*(const TracePolynomial& s) const;
  MatrixPolynomial operator*(const Rational& s) const;
  bool operator==(const MatrixPolynomial& other) const = default;

  /// Multiply by P^d (shift every exponent up by d >= 0).
  MatrixPolynomial shift(int d) const;

  /// tr(sum c_q P^q) = sum c_q t_q as a trace polynomial. Exponent 0
  /// contributes c_0 * r via the dimension argument; calls without it
  /// reject constant terms rather than guess the dimension.
  TracePolynomial symbolic_trace() const;
  TracePolynomial symbolic_trace(int r) const;

  RatMatrix eval(const CovarianceContext& ctx) const;

  /// Human-readable form like "t1 P + 2 P^2".
  std::string to_string() const;

 private:
  std::map<int, TracePolynomial> coeffs_;
};

MatrixPolynomial operator*(const Rational& s, const MatrixPolynomial& p);

inline MatrixPolynomial scale(const MatrixPolynomial& p, const Rational& s) { return p * s; }

}  // namespace wmm
