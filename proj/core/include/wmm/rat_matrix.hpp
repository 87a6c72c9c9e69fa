#pragma once

// Dense square matrices over exact rationals. Sized for desk-scale
// covariance work (dimension <= a few dozen), so the arithmetic is the
// straightforward O(r^3) kind with no attempt at sparsity.

#include <vector>

#include "wmm/rational.hpp"

namespace wmm {

class RatMatrix {
 public:
  RatMatrix() = default;
  explicit RatMatrix(int r) : r_(r), data_(static_cast<std::size_t>(r) * r, Rational(0)) {}

  static RatMatrix identity(int r);
  static RatMatrix diagonal(const std::vector<Rational>& entries);

  int rows() const { return r_; }

  Rational& at(int i, int j) { return data_[static_cast<std::size_t>(i) * r_ + j]; }
  const Rational& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * r_ + j]; }

  RatMatrix operator+(const RatMatrix& other) const;
  RatMatrix operator-(const RatMatrix& other) const;
  RatMatrix operator*(const RatMatrix& other) const;
  RatMatrix operator*(const Rational& s) const;
  RatMatrix& operator+=(const RatMatrix& other);
  bool operator==(const RatMatrix& other) const = default;

  RatMatrix transpose() const;
  Rational trace() const;
  bool is_symmetric() const;
  bool is_zero() const;

  /// A^k for k >= 0 (A^0 = I).
  RatMatrix power(int k) const;

  /// True iff the matrix is symmetric with all leading principal minors
  /// positive (Sylvester's criterion), i.e. symmetric positive definite.
  bool is_positive_definite() const;

  /// Determinant by fraction-free-ish Gaussian elimination (exact).
  Rational determinant() const;

  /// Exact inverse via Gauss-Jordan with partial pivoting; throws on a
  /// singular matrix.
  RatMatrix inverse() const;

  /// Entrywise maximum absolute value as a double (for tolerance reporting).
  double max_abs() const;

 private:
  int r_ = 0;
  std::vector<Rational> data_;
};

RatMatrix operator*(const Rational& s, const RatMatrix& a);

/// ADL hook so generic ring code can rescale matrices.
inline RatMatrix scale(const RatMatrix& a, const Rational& s) { return a * s; }

}  // namespace wmm
