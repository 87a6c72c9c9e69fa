#include "verify.hpp"

#include <cmath>
#include <functional>
#include <map>

#include <wmm/central.hpp>
#include <wmm/checks.hpp>
#include <wmm/combinatorics.hpp>
#include <wmm/oracles.hpp>
#include <wmm/rng.hpp>

namespace wmmtool {

namespace {

using wmm::Caps;
using wmm::CovarianceContext;
using wmm::Integer;
using wmm::MatrixPolynomial;
using wmm::MultiIndex;
using wmm::RatMatrix;
using wmm::Rational;
using wmm::TracePolynomial;

void record(VerifySuiteResult& suite, bool ok, const std::function<ordered_json()>& reproducer) {
  ++suite.instances;
  if (!ok) {
    ++suite.failures;
    if (suite.first_failure.is_null()) {
      suite.first_failure = reproducer();
      suite.first_failure["suite"] = suite.name;
    }
  }
}

ordered_json triangle_repro(const MultiIndex& v, const std::string& ctx_name,
                            const std::string& pair) {
  ordered_json out;
  out["v"] = wmm::word_to_string(v);
  out["P"] = ctx_name;
  out["pair"] = pair;
  return out;
}

// ---- dense double helpers for the float replay of the sample identity ----

using DMat = std::vector<double>;

DMat dzero(int r) { return DMat(static_cast<std::size_t>(r) * r, 0.0); }

DMat didentity(int r) {
  DMat out = dzero(r);
  for (int i = 0; i < r; ++i) out[static_cast<std::size_t>(i) * r + i] = 1.0;
  return out;
}

DMat dmul(const DMat& a, const DMat& b, int r) {
  DMat out = dzero(r);
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < r; ++k) {
      const double aik = a[static_cast<std::size_t>(i) * r + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < r; ++j) {
        out[static_cast<std::size_t>(i) * r + j] += aik * b[static_cast<std::size_t>(k) * r + j];
      }
    }
  }
  return out;
}

void daxpy(DMat& acc, const DMat& a, double w) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * a[i];
}

// lhs (xx'+Q)^{n+1} minus the Xi-expansion rhs, evaluated in doubles.
double binomial_identity_residual(const DMat& q, const std::vector<double>& x, int n, int r) {
  DMat xx = dzero(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) xx[static_cast<std::size_t>(i) * r + j] = x[i] * x[j];
  }
  DMat base = xx;
  daxpy(base, q, 1.0);
  DMat lhs = didentity(r);
  for (int p = 0; p <= n; ++p) lhs = dmul(lhs, base, r);

  // Powers of Q and the s-values s_j = <x, Q^j x>.
  std::vector<DMat> qpow{didentity(r)};
  for (int p = 1; p <= n + 1; ++p) qpow.push_back(dmul(qpow.back(), q, r));
  std::vector<double> s;
  for (int j = 0; j < std::max(1, n); ++j) {
    double acc = 0.0;
    for (int i = 0; i < r; ++i) {
      for (int k = 0; k < r; ++k) acc += x[i] * qpow[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) * r + k] * x[k];
    }
    s.push_back(acc);
  }

  // Backward Xi recursion: Xi^l_{n,n} = 1_{l=n}; Xi^l_{k,n} = sum_j Xi^j_{k+1,n} s_{j-l-1}.
  std::map<std::pair<int, int>, double> xi;
  for (int l = 0; l <= n; ++l) xi[{n, l}] = (l == n) ? 1.0 : 0.0;
  for (int k = n - 1; k >= 0; --k) {
    for (int l = 0; l <= k; ++l) {
      double acc = 0.0;
      for (int j = l + 1; j <= k + 1; ++j) acc += xi[{k + 1, j}] * s[static_cast<std::size_t>(j - l - 1)];
      xi[{k, l}] = acc;
    }
  }

  DMat rhs = qpow[static_cast<std::size_t>(n + 1)];
  for (int l = 0; l <= n; ++l) {
    double weight = 0.0;
    for (int k = l; k <= n; ++k) weight += xi[{k, l}];
    if (weight == 0.0) continue;
    DMat bracket = dzero(r);
    for (int a = 0; a <= l; ++a) {
      const int b = l - a;
      // Q^a x x' Q^b
      std::vector<double> left(static_cast<std::size_t>(r), 0.0);
      std::vector<double> right(static_cast<std::size_t>(r), 0.0);
      for (int i = 0; i < r; ++i) {
        for (int k = 0; k < r; ++k) {
          left[static_cast<std::size_t>(i)] += qpow[static_cast<std::size_t>(a)][static_cast<std::size_t>(i) * r + k] * x[k];
          right[static_cast<std::size_t>(i)] += qpow[static_cast<std::size_t>(b)][static_cast<std::size_t>(k) * r + i] * x[k];
        }
      }
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) bracket[static_cast<std::size_t>(i) * r + j] += left[i] * right[j];
      }
    }
    daxpy(rhs, bracket, weight);
  }

  double worst = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    worst = std::max(worst, std::fabs(lhs[i] - rhs[i]));
    scale = std::max(scale, std::fabs(rhs[i]));
  }
  return worst / scale;
}

VerifySuiteResult run_oracle_triangle(wmm::MomentEngine& engine, const VerifyOptions& options,
                                      const wmm::NamedContexts& ctxs) {
  VerifySuiteResult suite;
  suite.name = "oracle-triangle";
  bool corrupted_once = false;
  for (int m = 1; m <= options.max_m; ++m) {
    for (int n = 0; n <= options.max_weight; ++n) {
      wmm::for_each_composition(m, n, [&](const MultiIndex& v) {
        const MatrixPolynomial& recursion = engine.moment_recursive(v);
        // The closed-form route: rho coefficients of the first m-1 letters,
        // power-shifted by the final letter.
        const MultiIndex prefix(v.begin(), v.end() - 1);
        MatrixPolynomial polynomial = engine.moment_polynomial(prefix, v.back());
        if (options.selftest_corrupt && !corrupted_once) {
          // Negative control: flip one coefficient of the rho route.
          polynomial += MatrixPolynomial::power_term(1, TracePolynomial(1));
          corrupted_once = true;
        }
        record(suite, polynomial == recursion,
               [&] { return triangle_repro(v, "symbolic", "recursion-vs-polynomial"); });
        const MatrixPolynomial oracle = wmm::letac_matrix(v, engine.caps());
        record(suite, oracle == recursion,
               [&] { return triangle_repro(v, "symbolic", "recursion-vs-permutation"); });
        record(suite, wmm::letac_trace(v, engine.caps()) == engine.trace_moment(v),
               [&] { return triangle_repro(v, "symbolic", "trace-vs-permutation"); });
        for (const auto& [name, ctx] : ctxs) {
          record(suite, recursion.eval(ctx) == polynomial.eval(ctx),
                 [&] { return triangle_repro(v, name, "recursion-vs-polynomial"); });
          record(suite, recursion.eval(ctx) == oracle.eval(ctx),
                 [&] { return triangle_repro(v, name, "recursion-vs-permutation"); });
        }
      });
    }
  }
  return suite;
}

VerifySuiteResult run_central_suite(wmm::MomentEngine& engine, const wmm::NamedContexts& ctxs) {
  VerifySuiteResult suite;
  suite.name = "central-binomial";
  for (int n = 0; n <= 6; ++n) {
    const MatrixPolynomial direct = wmm::central_moment(engine, n);
    const MatrixPolynomial words = wmm::central_moment_word_expansion(engine, n);
    record(suite, direct == words, [&] {
      ordered_json out;
      out["n"] = n;
      out["pair"] = "weighted-sum-vs-word-expansion";
      return out;
    });
    for (const auto& [name, ctx] : ctxs) {
      record(suite, direct.eval(ctx) == words.eval(ctx), [&] {
        ordered_json out;
        out["n"] = n;
        out["P"] = name;
        out["pair"] = "weighted-sum-vs-word-expansion";
        return out;
      });
    }
  }
  return suite;
}

VerifySuiteResult run_sample_binomial(const VerifyOptions& options) {
  VerifySuiteResult suite;
  suite.name = "sample-binomial";
  for (int trial = 0; trial < 25; ++trial) {
    const int n = trial % 6;
    const RatMatrix q = wmm::random_rational_symmetric(3, options.seed * 1000 + trial);
    const std::vector<Rational> x = wmm::random_rational_vector(3, options.seed * 2000 + trial);
    const wmm::BinomialSamplePair pair = wmm::noncommutative_binomial_sample(q, x, n);
    record(suite, pair.lhs == pair.rhs, [&] {
      ordered_json out;
      out["trial"] = trial;
      out["n"] = n;
      out["mode"] = "exact";
      return out;
    });
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 7;
    const int r = 3;
    DMat q = dzero(r);
    std::vector<double> x(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
      x[static_cast<std::size_t>(i)] =
          2.0 * wmm::keyed_uniform(options.seed ^ 0x51u, static_cast<std::uint64_t>(trial),
                                   static_cast<std::uint64_t>(100 + i)) - 1.0;
      for (int j = i; j < r; ++j) {
        const double value =
            2.0 * wmm::keyed_uniform(options.seed ^ 0x52u, static_cast<std::uint64_t>(trial),
                                     static_cast<std::uint64_t>(i * r + j)) - 1.0;
        q[static_cast<std::size_t>(i) * r + j] = value;
        q[static_cast<std::size_t>(j) * r + i] = value;
      }
    }
    const double residual = binomial_identity_residual(q, x, n, r);
    record(suite, residual <= 1e-8, [&] {
      ordered_json out;
      out["trial"] = trial;
      out["n"] = n;
      out["mode"] = "float";
      out["residual"] = residual;
      return out;
    });
  }
  return suite;
}

VerifySuiteResult run_series_suite(wmm::MomentEngine& engine, const wmm::NamedContexts& ctxs) {
  VerifySuiteResult suite;
  suite.name = "series-coefficients";

  for (int n = 0; n <= 8; ++n) {
    const TracePolynomial rec = engine.norm_moment_symbolic(n, wmm::NormMethod::recursion);
    record(suite, rec == engine.norm_moment_symbolic(n, wmm::NormMethod::permutation), [&] {
      ordered_json out;
      out["n"] = n;
      out["pair"] = "norm-recursion-vs-permutation";
      return out;
    });
    record(suite, rec == engine.norm_moment_symbolic(n, wmm::NormMethod::bell), [&] {
      ordered_json out;
      out["n"] = n;
      out["pair"] = "norm-recursion-vs-bell";
      return out;
    });
  }

  for (const auto& [name, ctx] : ctxs) {
    const Rational trace = ctx.trace_power(1);
    const Rational t = Rational(1) / (Rational(4) * trace);
    const wmm::LaplaceResult laplace = wmm::laplace_closed_forms(ctx, t, 10);
    for (int n = 0; n <= 10; ++n) {
      const Rational expected =
          ctx.eval(engine.norm_moment_symbolic(n, wmm::NormMethod::recursion)) /
          Rational(wmm::factorial(n));
      record(suite, laplace.scalar_coefficients[static_cast<std::size_t>(n)] == expected, [&] {
        ordered_json out;
        out["n"] = n;
        out["P"] = name;
        out["pair"] = "laplace-scalar-vs-norm-moment";
        return out;
      });
    }
    for (int n = 0; n <= 8; ++n) {
      const RatMatrix expected = engine.matrix_power_moment(n + 1).eval(ctx) *
                                 (Rational(1) / Rational(wmm::factorial(n)));
      record(suite,
             laplace.matrix_coefficients[static_cast<std::size_t>(n)].eval(ctx) == expected,
             [&] {
               ordered_json out;
               out["n"] = n;
               out["P"] = name;
               out["pair"] = "laplace-matrix-vs-power-moment";
               return out;
             });
    }
  }

  const CovarianceContext one(RatMatrix::identity(1), true, engine.caps());
  const wmm::LaplaceResult pinned = wmm::laplace_closed_forms(one, Rational(1, 4), 2);
  record(suite, std::fabs(pinned.mgf - std::sqrt(2.0)) <= 1e-12, [&] {
    ordered_json out;
    out["pair"] = "laplace-mgf-pinned-sqrt2";
    out["value"] = pinned.mgf;
    return out;
  });
  return suite;
}

VerifySuiteResult run_combinatorics_suite(wmm::MomentEngine& engine) {
  VerifySuiteResult suite;
  suite.name = "combinatorial-identities";

  // Complete Bell polynomial vs its classical recursion, on trace variables.
  std::vector<TracePolynomial> b;
  for (int n = 1; n <= 12; ++n) {
    b.push_back(TracePolynomial::variable(n));
    record(suite, wmm::complete_bell(b) == wmm::complete_bell_recursion(b), [&] {
      ordered_json out;
      out["n"] = n;
      out["pair"] = "bell-increasing-sequence-vs-recursion";
      return out;
    });
  }

  // Cycle-count histogram vs the Stirling recurrence.
  std::vector<std::vector<Integer>> stirling(8);
  stirling[0] = {Integer(1)};
  for (int n = 1; n <= 7; ++n) {
    stirling[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, Integer(0));
    for (int k = 1; k <= n; ++k) {
      stirling[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
          stirling[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)];
      if (k < n) {
        stirling[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] +=
            Integer(n - 1) * stirling[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
      }
    }
  }
  for (int n = 1; n <= 7; ++n) {
    std::map<int, Integer> histogram;
    wmm::for_each_permutation(n, engine.caps(),
                              [&](const wmm::CycleDecomposition& sigma) { histogram[sigma.cycle_count()] += 1; });
    bool ok = true;
    for (int k = 1; k <= n; ++k) {
      ok = ok && histogram[k] == stirling[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
    record(suite, ok, [&] {
      ordered_json out;
      out["n"] = n;
      out["pair"] = "cycle-histogram-vs-stirling";
      return out;
    });
  }

  // Extended binomials collapse to binomials for constant weights.
  const std::vector<Rational> ones(13, Rational(1));
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= 6; ++n) {
      const Rational expected =
          (m == 0) ? Rational(n == 0 ? 1 : 0) : Rational(wmm::binomial(n + m - 1, n));
      record(suite, wmm::extended_binomial(ones, m, n) == expected, [&] {
        ordered_json out;
        out["m"] = m;
        out["n"] = n;
        out["pair"] = "extended-binomial-vs-binomial";
        return out;
      });
    }
  }

  // Xi tables vs extended binomials on seeded rational s-values.
  for (int n = 0; n <= 6; ++n) {
    std::vector<Rational> s;
    for (int j = 0; j < std::max(1, n); ++j) {
      // Divide instead of using the two-argument constructor: mpq arithmetic
      // requires canonical operands and the raw pair may share a factor.
      s.push_back(Rational(1 + ((3 * j + n) % 4)) / Rational(1 + (j % 2)));
    }
    const wmm::XiTable table = wmm::xi_table(s, n);
    bool ok = true;
    for (int k = 0; k <= n && ok; ++k) {
      for (int l = 0; l <= k && ok; ++l) {
        ok = table.at(k, l) == wmm::xi_extended_binomial(s, n, k, l);
      }
    }
    record(suite, ok, [&] {
      ordered_json out;
      out["n"] = n;
      out["pair"] = "xi-recursion-vs-extended-binomial";
      return out;
    });
  }
  return suite;
}

}  // namespace

VerifySummary run_verify(wmm::MomentEngine& engine, const VerifyOptions& options) {
  const wmm::NamedContexts ctxs = wmm::standard_contexts(options.seed, engine.caps());
  VerifySummary summary;
  summary.suites.push_back(run_oracle_triangle(engine, options, ctxs));
  summary.suites.push_back(run_central_suite(engine, ctxs));
  summary.suites.push_back(run_sample_binomial(options));
  summary.suites.push_back(run_series_suite(engine, ctxs));
  summary.suites.push_back(run_combinatorics_suite(engine));
  for (const auto& suite : summary.suites) {
    summary.instances += suite.instances;
    summary.failures += suite.failures;
  }
  return summary;
}

ordered_json verify_summary_json(const VerifySummary& summary) {
  ordered_json suites = ordered_json::array();
  ordered_json first_failure;
  for (const auto& suite : summary.suites) {
    ordered_json item;
    item["name"] = suite.name;
    item["instances"] = suite.instances;
    item["failures"] = suite.failures;
    if (!suite.first_failure.is_null()) {
      item["first_failure"] = suite.first_failure;
      if (first_failure.is_null()) first_failure = suite.first_failure;
    }
    suites.push_back(std::move(item));
  }
  ordered_json out;
  out["instances"] = summary.instances;
  out["failures"] = summary.failures;
  out["status"] = summary.failures == 0 ? "pass" : "fail";
  if (!first_failure.is_null()) out["first_failure"] = first_failure;
  out["suites"] = std::move(suites);
  return out;
}

}  // namespace wmmtool
