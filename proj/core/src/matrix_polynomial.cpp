#include "wmm/matrix_polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace wmm {

namespace {
const TracePolynomial kZero{};
}

MatrixPolynomial MatrixPolynomial::power_term(int q, TracePolynomial c) {
  if (q < 0) throw std::invalid_argument("matrix polynomial: exponent must be >= 0");
  MatrixPolynomial p;
  p.add_term(q, c);
  return p;
}

const TracePolynomial& MatrixPolynomial::coefficient(int q) const {
  auto it = coeffs_.find(q);
  return it == coeffs_.end() ? kZero : it->second;
}

void MatrixPolynomial::add_term(int q, const TracePolynomial& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(q, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& other) const {
  MatrixPolynomial out = *this;
  out += other;
  return out;
}

MatrixPolynomial& MatrixPolynomial::operator+=(const MatrixPolynomial& other) {
  for (const auto& [q, c] : other.coeffs_) add_term(q, c);
  return *this;
}

MatrixPolynomial MatrixPolynomial::operator-(const MatrixPolynomial& other) const {
  MatrixPolynomial out = *this;
  for (const auto& [q, c] : other.coeffs_) out.add_term(q, -c);
  return out;
}

MatrixPolynomial MatrixPolynomial::operator*(const TracePolynomial& s) const {
  MatrixPolynomial out;
  for (const auto& [q, c] : coeffs_) out.add_term(q, c * s);
  return out;
}

MatrixPolynomial MatrixPolynomial::operator*(const Rational& s) const {
  return *this * TracePolynomial(s);
}

MatrixPolynomial operator*(const Rational& s, const MatrixPolynomial& p) { return p * s; }

MatrixPolynomial MatrixPolynomial::shift(int d) const {
  if (d < 0) throw std::invalid_argument("matrix polynomial shift: d must be >= 0");
  MatrixPolynomial out;
  for (const auto& [q, c] : coeffs_) out.coeffs_.emplace(q + d, c);
  return out;
}

TracePolynomial MatrixPolynomial::symbolic_trace() const {
  if (coeffs_.count(0))
    throw std::logic_error("symbolic_trace: constant term needs the dimension; pass r");
  return symbolic_trace(0);
}

TracePolynomial MatrixPolynomial::symbolic_trace(int r) const {
  TracePolynomial total;
  for (const auto& [q, c] : coeffs_)
    total += q == 0 ? c * Rational(r) : c * TracePolynomial::variable(q);
  return total;
}

RatMatrix MatrixPolynomial::eval(const CovarianceContext& ctx) const {
  RatMatrix out(ctx.r());
  for (const auto& [q, c] : coeffs_) out += ctx.power(q) * ctx.eval(c);
  return out;
}

std::string MatrixPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [q, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    const bool wrap = c.terms().size() > 1;
    const std::string cs = c.to_string();
    if (q == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << (wrap ? "(" + cs + ")" : cs) << ' ';
    os << 'P';
    if (q > 1) os << '^' << q;
  }
  return os.str();
}

}  // namespace wmm
