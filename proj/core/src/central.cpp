#include "wmm/central.hpp"

#include <stdexcept>

#include "wmm/errors.hpp"

namespace wmm {

std::vector<Rational> s_values(const RatMatrix& Q, const std::vector<Rational>& x, int n) {
  const int r = Q.rows();
  if (static_cast<int>(x.size()) != r)
    throw DimensionMismatch("s_values: vector length must match matrix dimension");
  std::vector<Rational> s;
  s.reserve(static_cast<std::size_t>(n) + 1);
  std::vector<Rational> y = x;  // Q^k x
  for (int k = 0; k <= n; ++k) {
    Rational dot(0);
    for (int i = 0; i < r; ++i) dot += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    s.push_back(dot);
    if (k == n) break;
    std::vector<Rational> next(static_cast<std::size_t>(r), Rational(0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) next[static_cast<std::size_t>(i)] += Q.at(i, j) * y[static_cast<std::size_t>(j)];
    y = std::move(next);
  }
  return s;
}

Rational XiTable::at(int k, int l) const {
  auto it = values.find({k, l});
  return it == values.end() ? Rational(0) : it->second;
}

XiTable xi_table(const std::vector<Rational>& s, int n) {
  if (n < 0) throw std::invalid_argument("xi_table: n must be >= 0");
  if (n > 0 && static_cast<int>(s.size()) < n)
    throw std::invalid_argument("xi_table: need s_0..s_{n-1}");
  XiTable table;
  table.n = n;
  table.s.assign(s.begin(), s.begin() + n);
  for (int l = 0; l <= n; ++l) table.values[{n, l}] = l == n ? Rational(1) : Rational(0);
  for (int k = n - 1; k >= 0; --k)
    for (int l = 0; l <= k; ++l) {
      Rational total(0);
      for (int j = l + 1; j <= k + 1; ++j)
        total += table.at(k + 1, j) * s[static_cast<std::size_t>(j - l - 1)];
      table.values[{k, l}] = total;
    }
  return table;
}

Rational xi_extended_binomial(const std::vector<Rational>& s, int n, int k, int l) {
  if (l > k || k > n || l < 0) return Rational(0);
  return extended_binomial(s, n - k, k - l);
}

RatMatrix q_bracket_split(const RatMatrix& Q, const std::vector<Rational>& x, int k, int l) {
  const int r = Q.rows();
  if (static_cast<int>(x.size()) != r)
    throw DimensionMismatch("q_bracket: vector length must match matrix dimension");
  RatMatrix xx(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) xx.at(i, j) = x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
  return Q.power(k) * xx * Q.power(l);
}

RatMatrix q_bracket(const RatMatrix& Q, const std::vector<Rational>& x, int l) {
  RatMatrix total(Q.rows());
  for (int a = 0; a <= l; ++a) total += q_bracket_split(Q, x, a, l - a);
  return total;
}

BinomialSamplePair noncommutative_binomial_sample(const RatMatrix& Q,
                                                  const std::vector<Rational>& x, int n) {
  if (n < 0) throw std::invalid_argument("binomial sample: n must be >= 0");
  const int r = Q.rows();
  if (static_cast<int>(x.size()) != r)
    throw DimensionMismatch("binomial sample: vector length must match matrix dimension");
  BinomialSamplePair out;

  RatMatrix base = Q;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      base.at(i, j) += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
  out.lhs = base.power(n + 1);

  const XiTable xi = xi_table(s_values(Q, x, n > 0 ? n - 1 : 0), n);
  out.rhs = Q.power(n + 1);
  for (int l = 0; l <= n; ++l) {
    Rational weight(0);
    for (int k = l; k <= n; ++k) weight += xi.at(k, l);
    if (weight != 0) out.rhs += q_bracket(Q, x, l) * weight;
  }
  return out;
}

MatrixPolynomial central_moment(MomentEngine& engine, int n) {
  if (n < 0) throw std::invalid_argument("central moment: n must be >= 0");
  MatrixPolynomial out;
  out.add_term(n, TracePolynomial(Rational(n % 2 == 0 ? 1 : -1)));
  for (int k = 0; k < n; ++k) {
    const MatrixPolynomial w = engine.aggregate_moments(n - k, k).W;
    out += w * Rational(k % 2 == 0 ? 1 : -1);
  }
  return out;
}

MatrixPolynomial central_moment_word_expansion(MomentEngine& engine, int n) {
  if (n < 0) throw std::invalid_argument("central moment: n must be >= 0");
  if (n > engine.caps().oracle_word_cap)
    throw CapExceeded("central word expansion for n=" + std::to_string(n) +
                      " exceeds oracle_word_cap=" + std::to_string(engine.caps().oracle_word_cap) +
                      " (raise WMM_ORACLE_WORD_CAP to override)");
  MatrixPolynomial total;
  const unsigned long words = 1UL << n;
  for (unsigned long word = 0; word < words; ++word) {
    // Bit i set means letter i is X, unset means -P; letters read left to right.
    int leading = 0;
    MultiIndex gaps;  // P-run lengths after each X
    int p_count = 0;
    for (int i = 0; i < n; ++i) {
      const bool is_x = (word >> i) & 1UL;
      if (is_x) {
        gaps.push_back(0);
      } else {
        ++p_count;
        if (gaps.empty())
          ++leading;
        else
          ++gaps.back();
      }
    }
    const Rational sign(p_count % 2 == 0 ? 1 : -1);
    if (gaps.empty()) {
      total.add_term(n, TracePolynomial(sign));
    } else {
      total += engine.moment_recursive(gaps).shift(leading) * sign;
    }
  }
  return total;
}

Rational identity_norm_moment(int k, int r) {
  Rational prod(1);
  for (int l = 0; l < k; ++l) prod *= Rational(r + 2 * l);
  return prod;
}

namespace {
Rational z_value(int n, int j, int r) {
  return Rational(binomial(n, j)) * identity_norm_moment(n - j, r) / Rational(r);
}
}  // namespace

Rational identity_collapse_alternating(int n, int r) {
  Rational total(0);
  for (int j = 0; j <= n; ++j) total += Rational(j % 2 == 0 ? 1 : -1) * z_value(n, j, r);
  return total;
}

Rational identity_collapse_corrected(int n, int r) {
  // Replace the j = n term (-1)^n / r of the alternating sum by (-1)^n.
  return identity_collapse_alternating(n, r) +
         Rational(n % 2 == 0 ? 1 : -1) * (Rational(1) - Rational(1) / Rational(r));
}

}  // namespace wmm
