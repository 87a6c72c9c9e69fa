#include "wmm/rational.hpp"

#include <cctype>

namespace wmm {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

// mpz_class's string constructor auto-detects the base, so a leading zero
// would switch it to octal; force decimal. check_int has already validated
// the shape, including an optional '+', which GMP does not accept.
Integer integer_base10(const std::string& s) {
  return Integer((!s.empty() && s[0] == '+') ? s.substr(1) : s, 10);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto check_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '+' || part[0] == '-') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!check_int(num) || !check_int(den))
      throw std::invalid_argument("malformed rational literal: " + text);
    const Integer d = integer_base10(den);
    if (d == 0) throw std::invalid_argument("rational with zero denominator: " + text);
    Rational q{integer_base10(num), d};
    q.canonicalize();
    return q;
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || !check_int(digits))
      throw std::invalid_argument("malformed decimal literal: " + text);
    Integer den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(integer_base10(digits), den);
    q.canonicalize();
    return q;
  }

  if (!check_int(s)) throw std::invalid_argument("malformed integer literal: " + text);
  return Rational(integer_base10(s));
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Integer factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative argument");
  Integer result;
  mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
  return result;
}

Integer falling_factorial(int n, int k) {
  if (k < 0) throw std::invalid_argument("falling factorial with negative length");
  if (k > n) return 0;
  Integer result(1);
  for (int i = 0; i < k; ++i) result *= (n - i);
  return result;
}

Integer binomial(long a, long b) {
  if (a == -1 && b == 0) return 1;  // empty weak composition
  if (b < 0 || a < 0 || a < b) return 0;
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return result;
}

}  // namespace wmm
