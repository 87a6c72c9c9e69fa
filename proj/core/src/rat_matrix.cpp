#include "wmm/rat_matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "wmm/errors.hpp"

namespace wmm {

RatMatrix RatMatrix::identity(int r) {
  RatMatrix a(r);
  for (int i = 0; i < r; ++i) a.at(i, i) = 1;
  return a;
}

RatMatrix RatMatrix::diagonal(const std::vector<Rational>& entries) {
  RatMatrix a(static_cast<int>(entries.size()));
  for (int i = 0; i < a.r_; ++i) a.at(i, i) = entries[static_cast<std::size_t>(i)];
  return a;
}

namespace {
void require_same_size(const RatMatrix& a, const RatMatrix& b, const char* op) {
  if (a.rows() != b.rows())
    throw DimensionMismatch(std::string(op) + ": matrices have different dimensions");
}
}  // namespace

RatMatrix RatMatrix::operator+(const RatMatrix& other) const {
  require_same_size(*this, other, "matrix add");
  RatMatrix out(r_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] + other.data_[k];
  return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& other) const {
  require_same_size(*this, other, "matrix subtract");
  RatMatrix out(r_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] - other.data_[k];
  return out;
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
  require_same_size(*this, other, "matrix multiply");
  RatMatrix out(r_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < r_; ++k) {
      const Rational& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < r_; ++j) out.at(i, j) += aik * other.at(k, j);
    }
  return out;
}

RatMatrix RatMatrix::operator*(const Rational& s) const {
  RatMatrix out(r_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] * s;
  return out;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& other) {
  require_same_size(*this, other, "matrix add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix out(r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Rational RatMatrix::trace() const {
  Rational t(0);
  for (int i = 0; i < r_; ++i) t += at(i, i);
  return t;
}

bool RatMatrix::is_symmetric() const {
  for (int i = 0; i < r_; ++i)
    for (int j = i + 1; j < r_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

RatMatrix RatMatrix::power(int k) const {
  if (k < 0) throw std::invalid_argument("matrix power: exponent must be >= 0");
  RatMatrix out = identity(r_);
  for (int step = 0; step < k; ++step) out = out * *this;
  return out;
}

bool RatMatrix::is_positive_definite() const {
  if (!is_symmetric()) return false;
  // Gaussian elimination without pivoting: the pivots of a symmetric matrix
  // are all positive iff every leading principal minor is positive.
  RatMatrix work = *this;
  for (int k = 0; k < r_; ++k) {
    if (work.at(k, k) <= 0) return false;
    for (int i = k + 1; i < r_; ++i) {
      const Rational factor = work.at(i, k) / work.at(k, k);
      if (factor == 0) continue;
      for (int j = k; j < r_; ++j) work.at(i, j) -= factor * work.at(k, j);
    }
  }
  return true;
}

Rational RatMatrix::determinant() const {
  RatMatrix work = *this;
  Rational det(1);
  for (int k = 0; k < r_; ++k) {
    int pivot = -1;
    for (int i = k; i < r_; ++i)
      if (work.at(i, k) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return Rational(0);
    if (pivot != k) {
      for (int j = 0; j < r_; ++j) std::swap(work.at(pivot, j), work.at(k, j));
      det = -det;
    }
    det *= work.at(k, k);
    for (int i = k + 1; i < r_; ++i) {
      const Rational factor = work.at(i, k) / work.at(k, k);
      if (factor == 0) continue;
      for (int j = k; j < r_; ++j) work.at(i, j) -= factor * work.at(k, j);
    }
  }
  return det;
}

RatMatrix RatMatrix::inverse() const {
  RatMatrix work = *this;
  RatMatrix inv = identity(r_);
  for (int k = 0; k < r_; ++k) {
    int pivot = -1;
    for (int i = k; i < r_; ++i)
      if (work.at(i, k) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw std::domain_error("matrix inverse: singular matrix");
    if (pivot != k)
      for (int j = 0; j < r_; ++j) {
        std::swap(work.at(pivot, j), work.at(k, j));
        std::swap(inv.at(pivot, j), inv.at(k, j));
      }
    const Rational lead = work.at(k, k);
    for (int j = 0; j < r_; ++j) {
      work.at(k, j) /= lead;
      inv.at(k, j) /= lead;
    }
    for (int i = 0; i < r_; ++i) {
      if (i == k) continue;
      const Rational factor = work.at(i, k);
      if (factor == 0) continue;
      for (int j = 0; j < r_; ++j) {
        work.at(i, j) -= factor * work.at(k, j);
        inv.at(i, j) -= factor * inv.at(k, j);
      }
    }
  }
  return inv;
}

double RatMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(to_double(x)));
  return m;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) { return a * s; }

}  // namespace wmm
