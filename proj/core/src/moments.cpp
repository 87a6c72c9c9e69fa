#include "wmm/moments.hpp"

#include <algorithm>
#include <stdexcept>

#include "wmm/errors.hpp"

namespace wmm {

const TracePolynomial& TraceArray::at(int k, int l) const {
  auto it = values.find({k, l});
  if (it == values.end()) throw std::out_of_range("trace array: (k,l) outside [0,m]x[0,n]");
  return it->second;
}

MomentEngine::MomentEngine(Caps caps) : caps_(caps) {}

void MomentEngine::guard_word(const MultiIndex& v) const {
  for (int entry : v)
    if (entry < 0) throw std::invalid_argument("moment word: entries must be >= 0");
  const int size = static_cast<int>(v.size()) + weight(v);
  if (size > caps_.word_cap)
    throw CapExceeded("word " + word_to_string(v) + " has length+weight " + std::to_string(size) +
                      " exceeding word_cap=" + std::to_string(caps_.word_cap) +
                      " (raise WMM_WORD_CAP to override)");
}

const MatrixPolynomial& MomentEngine::moment_recursive(const MultiIndex& v) {
  auto it = memo_m_.find(v);
  if (it != memo_m_.end()) return it->second;
  guard_word(v);

  MatrixPolynomial result;
  const int m = static_cast<int>(v.size());
  if (m == 0) {
    result = MatrixPolynomial::power_term(0);
  } else if (m == 1) {
    result = MatrixPolynomial::power_term(1 + v[0]);
  } else {
    const MultiIndex w = word_front(v);
    const int p = v.back();
    MatrixPolynomial bracket;
    bracket.add_term(0, trace_moment(w));
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      MultiIndex child = w;
      child.erase(child.begin() + static_cast<std::ptrdiff_t>(i));
      child.push_back(w[i]);
      bracket += moment_recursive(child) * Rational(2);
    }
    result = bracket.shift(p + 1);
  }
  return memo_m_.emplace(v, std::move(result)).first->second;
}

const TracePolynomial& MomentEngine::trace_moment(const MultiIndex& v) {
  MultiIndex key = v;
  std::sort(key.begin(), key.end());
  auto it = memo_t_.find(key);
  if (it != memo_t_.end()) return it->second;
  TracePolynomial t =
      key.empty() ? TracePolynomial(1) : moment_recursive(key).symbolic_trace();
  return memo_t_.emplace(std::move(key), std::move(t)).first->second;
}

TraceArray MomentEngine::trace_array(const MultiIndex& v) {
  guard_word(v);
  TraceArray out;
  out.v = v;
  out.m = static_cast<int>(v.size());
  out.n = weight(v);
  for (int k = 0; k <= out.m; ++k) {
    const Rational norm = Rational(1) / Rational(falling_factorial(out.m, k));
    std::map<int, TracePolynomial> by_weight;  // l -> sum of t_{v_a}
    for_each_injection(k, out.m, caps_, [&](const std::vector<int>& a) {
      MultiIndex sub;
      sub.reserve(a.size());
      for (int pos : a) sub.push_back(v[static_cast<std::size_t>(pos - 1)]);
      by_weight[weight(sub)] += trace_moment(sub);
    });
    for (int l = 0; l <= out.n; ++l) {
      auto hit = by_weight.find(l);
      out.values[{k, l}] =
          hit == by_weight.end() ? TracePolynomial() : hit->second * norm;
    }
  }
  return out;
}

TracePolynomial MomentEngine::trace_array_entry(const MultiIndex& v, int k, int l) {
  return trace_array(v).at(k, l);
}

namespace {
TracePolynomial rho_m_from_array(const TraceArray& arr, int q) {
  if (q < 0 || q > arr.m + arr.n) throw std::out_of_range("rho^M: q outside [0, m+n]");
  TracePolynomial total;
  for (int k = 0; k <= std::min(q, arr.m); ++k) {
    const int l = q - k;
    if (l > arr.n) continue;
    const Rational weight = Rational(Integer(1) << k) * Rational(falling_factorial(arr.m, k));
    total += arr.at(arr.m - k, arr.n - l) * weight;
  }
  return total;
}
}  // namespace

TracePolynomial MomentEngine::rho_M(const MultiIndex& v, int q) {
  return rho_m_from_array(trace_array(v), q);
}

MatrixPolynomial MomentEngine::moment_polynomial(const MultiIndex& v, int p) {
  if (p < 0) throw std::invalid_argument("moment_polynomial: p must be >= 0");
  const TraceArray arr = trace_array(v);
  MatrixPolynomial out;
  for (int q = 0; q <= arr.m + arr.n; ++q)
    out.add_term(1 + p + q, rho_m_from_array(arr, q));
  return out;
}

AggregateMoments MomentEngine::aggregate_moments(int m, int n) {
  if (m < 1) throw std::invalid_argument("aggregate_moments: m must be >= 1");
  if (n < 0) throw std::invalid_argument("aggregate_moments: n must be >= 0");
  AggregateMoments out;
  for_each_composition(m, n, [&](const MultiIndex& v) {
    const MatrixPolynomial& mv = moment_recursive(v);
    out.T += mv;
    out.W += mv * Rational(1 + v.back());
  });
  out.tau = out.T.symbolic_trace();
  out.varpi = out.W.symbolic_trace();
  return out;
}

TracePolynomial MomentEngine::tau(int m, int n) {
  if (m == 0) return TracePolynomial(n == 0 ? 1 : 0);
  TracePolynomial total;
  for_each_composition(m, n, [&](const MultiIndex& v) { total += trace_moment(v); });
  return total;
}

TracePolynomial MomentEngine::varpi(int m, int n) {
  if (m == 0) return TracePolynomial(n == 0 ? 1 : 0);
  TracePolynomial total;
  for_each_composition(
      m, n, [&](const MultiIndex& v) { total += trace_moment(v) * Rational(1 + v.back()); });
  return total;
}

TracePolynomial MomentEngine::rho_W(int m, int n, int q) {
  if (q < 0 || q > m + n) throw std::out_of_range("rho^W: q outside [0, m+n]");
  TracePolynomial total;
  for (int k = 0; k <= std::min(q, m); ++k) {
    const int l = q - k;
    if (l > n) continue;
    const Rational weight = Rational(Integer(1) << k) * Rational(falling_factorial(m, k)) *
                            Rational(binomial(q + 1, l));
    total += tau(m - k, n - l) * weight;
  }
  return total;
}

const TracePolynomial& MomentEngine::norm_recursion(int n) {
  if (norm_recursion_.empty()) norm_recursion_.push_back(TracePolynomial(1));
  while (static_cast<int>(norm_recursion_.size()) <= n) {
    const int m = static_cast<int>(norm_recursion_.size());
    // E_m = 2^{m-1} (m-1)! sum_{0<=k<m} 2^{-k}/k! E_k t_{m-k}
    TracePolynomial total;
    for (int k = 0; k < m; ++k) {
      const Rational c = Rational(Integer(1) << (m - 1)) * Rational(factorial(m - 1)) /
                         (Rational(Integer(1) << k) * Rational(factorial(k)));
      total += norm_recursion_[static_cast<std::size_t>(k)] *
               TracePolynomial::variable(m - k) * c;
    }
    norm_recursion_.push_back(std::move(total));
  }
  return norm_recursion_[static_cast<std::size_t>(n)];
}

TracePolynomial MomentEngine::norm_moment_symbolic(int n, NormMethod method) {
  if (n < 0) throw std::invalid_argument("norm moment: n must be >= 0");
  switch (method) {
    case NormMethod::recursion:
      return norm_recursion(n);
    case NormMethod::permutation: {
      TracePolynomial total;
      for_each_permutation(n, caps_, [&](const CycleDecomposition& sigma) {
        TraceMonomial mono;
        for (const auto& cycle : sigma.cycles) ++mono[static_cast<int>(cycle.size())];
        total.add_term(mono, Rational(Integer(1) << (n - sigma.cycle_count())));
      });
      return total;
    }
    case NormMethod::bell: {
      // b_k = 2^{k-1} (k-1)! t_k
      std::vector<TracePolynomial> b;
      b.reserve(static_cast<std::size_t>(n));
      for (int k = 1; k <= n; ++k)
        b.push_back(TracePolynomial::variable(k) * Rational(Integer(1) << (k - 1)) *
                    Rational(factorial(k - 1)));
      return complete_bell(b);
    }
  }
  throw std::logic_error("norm moment: unknown method");
}

Rational MomentEngine::norm_moment(const CovarianceContext& ctx, int n, NormMethod method) {
  return ctx.eval(norm_moment_symbolic(n, method));
}

MatrixPolynomial MomentEngine::matrix_power_moment(int n) {
  if (n < 0) throw std::invalid_argument("matrix power moment: n must be >= 0");
  if (n == 0) return MatrixPolynomial::power_term(0);
  MatrixPolynomial out;
  const Rational front = Rational(Integer(1) << n) * Rational(factorial(n)) / Rational(2 * n);
  for (int k = 0; k < n; ++k) {
    const Rational c = front / (Rational(Integer(1) << k) * Rational(factorial(k)));
    out.add_term(n - k, norm_recursion(k) * c);
  }
  return out;
}

MatrixPolynomial MomentEngine::matrix_power_moment_bracket(int n) {
  if (n < 0) throw std::invalid_argument("matrix power moment: n must be >= 0");
  if (n == 0) return MatrixPolynomial::power_term(0);
  MatrixPolynomial out;
  const Rational front = Rational(Integer(1) << n) * Rational(factorial(n)) / Rational(2 * n);
  for (int k = 0; k < n; ++k)
    out.add_term(n - k, increasing_sequence_bracket(k) * front);
  return out;
}

TracePolynomial MomentEngine::increasing_sequence_bracket(int k) {
  if (k < 0) throw std::invalid_argument("increasing-sequence bracket: k must be >= 0");
  if (k == 0) return TracePolynomial(1);
  // Interior points of 0 = k_0 < k_1 < ... < k_p = k range over subsets of
  // {1,...,k-1}; each sequence contributes prod_l t_{d_l} / (2 k_l).
  TracePolynomial total;
  const unsigned long subsets = 1UL << (k - 1);
  for (unsigned long mask = 0; mask < subsets; ++mask) {
    std::vector<int> ks{0};
    for (int j = 1; j < k; ++j)
      if (mask & (1UL << (j - 1))) ks.push_back(j);
    ks.push_back(k);
    TracePolynomial term(1);
    for (std::size_t l = 1; l < ks.size(); ++l)
      term = term * TracePolynomial::variable(ks[l] - ks[l - 1]) *
             (Rational(1) / Rational(2 * ks[l]));
    total += term;
  }
  return total;
}

}  // namespace wmm
