#include "wmm/trace_algebra.hpp"

#include <sstream>
#include <stdexcept>

#include "wmm/errors.hpp"

namespace wmm {

int monomial_degree(const TraceMonomial& m) {
  int d = 0;
  for (const auto& [k, mult] : m) d += k * mult;
  return d;
}

std::string monomial_to_string(const TraceMonomial& m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, mult] : m) {
    if (!first) os << ' ';
    first = false;
    os << 't' << k;
    if (mult > 1) os << '^' << mult;
  }
  return os.str();
}

TracePolynomial::TracePolynomial(const Rational& c) {
  if (c != 0) terms_.emplace(TraceMonomial{}, c);
}

TracePolynomial TracePolynomial::variable(int k, int mult) {
  if (k < 1 || mult < 1) throw std::invalid_argument("trace variable: need k >= 1, mult >= 1");
  TracePolynomial p;
  p.terms_.emplace(TraceMonomial{{k, mult}}, Rational(1));
  return p;
}

bool TracePolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational TracePolynomial::constant_value() const {
  auto it = terms_.find(TraceMonomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int TracePolynomial::max_index() const {
  int k_max = 0;
  for (const auto& [mono, coeff] : terms_)
    if (!mono.empty()) k_max = std::max(k_max, mono.rbegin()->first);
  return k_max;
}

void TracePolynomial::add_term(const TraceMonomial& monomial, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(monomial, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

TracePolynomial TracePolynomial::operator+(const TracePolynomial& other) const {
  TracePolynomial out = *this;
  out += other;
  return out;
}

TracePolynomial& TracePolynomial::operator+=(const TracePolynomial& other) {
  for (const auto& [mono, coeff] : other.terms_) add_term(mono, coeff);
  return *this;
}

TracePolynomial TracePolynomial::operator-(const TracePolynomial& other) const {
  TracePolynomial out = *this;
  out -= other;
  return out;
}

TracePolynomial& TracePolynomial::operator-=(const TracePolynomial& other) {
  for (const auto& [mono, coeff] : other.terms_) add_term(mono, -coeff);
  return *this;
}

TracePolynomial TracePolynomial::operator-() const {
  TracePolynomial out;
  for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, -coeff);
  return out;
}

TracePolynomial TracePolynomial::operator*(const TracePolynomial& other) const {
  TracePolynomial out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) {
      TraceMonomial mono = ma;
      for (const auto& [k, mult] : mb) mono[k] += mult;
      out.add_term(mono, ca * cb);
    }
  return out;
}

TracePolynomial TracePolynomial::operator*(const Rational& s) const {
  TracePolynomial out;
  if (s == 0) return out;
  for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, coeff * s);
  return out;
}

TracePolynomial operator*(const Rational& s, const TracePolynomial& p) { return p * s; }

Rational TracePolynomial::eval_with(const std::function<Rational(int)>& t_of) const {
  Rational total(0);
  for (const auto& [mono, coeff] : terms_) {
    Rational term = coeff;
    for (const auto& [k, mult] : mono)
      for (int rep = 0; rep < mult; ++rep) term *= t_of(k);
    total += term;
  }
  return total;
}

std::string TracePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    if (first) {
      if (coeff < 0) os << '-';
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
    if (mono.empty()) {
      os << format_rational(mag);
    } else {
      if (mag != 1) os << format_rational(mag) << ' ';
      os << monomial_to_string(mono);
    }
  }
  return os.str();
}

CovarianceContext::CovarianceContext(RatMatrix P, bool require_pd, const Caps& caps)
    : matrix_(std::move(P)), caps_(caps) {
  if (matrix_.rows() < 1) throw ParseError("covariance: dimension must be >= 1");
  if (!matrix_.is_symmetric()) throw ParseError("covariance: matrix must be symmetric");
  if (require_pd && !matrix_.is_positive_definite())
    throw ParseError("covariance: matrix must be positive definite (pass strict=false to allow)");
  powers_.push_back(RatMatrix::identity(matrix_.rows()));
  powers_.push_back(matrix_);
}

void CovarianceContext::ensure_power(int k) const {
  if (k < 0) throw std::invalid_argument("covariance power: k must be >= 0");
  if (k > caps_.trace_degree_cap)
    throw CapExceeded("covariance power " + std::to_string(k) + " exceeds trace_degree_cap=" +
                      std::to_string(caps_.trace_degree_cap) +
                      " (raise WMM_TRACE_DEGREE_CAP to override)");
  while (static_cast<int>(powers_.size()) <= k) powers_.push_back(powers_.back() * matrix_);
}

const RatMatrix& CovarianceContext::power(int k) const {
  ensure_power(k);
  return powers_[static_cast<std::size_t>(k)];
}

Rational CovarianceContext::trace_power(int k) const { return power(k).trace(); }

Rational CovarianceContext::eval(const TracePolynomial& p) const {
  return p.eval_with([this](int k) { return trace_power(k); });
}

}  // namespace wmm
