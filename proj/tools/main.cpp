// Command-line frontend for the Wishart product-moment library: exact
// symbolic moments, central moments, weighted aggregates, norm moments,
// cross-route verification, Monte Carlo spot checks, and the inequality
// suites. All machine output is JSON with a fixed key order so identical
// invocations are byte-identical.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "verify.hpp"

#include <wmm/central.hpp>
#include <wmm/checks.hpp>
#include <wmm/errors.hpp>
#include <wmm/moments.hpp>
#include <wmm/oracles.hpp>

namespace {

using wmmtool::CovarianceSource;
using wmmtool::ordered_json;
using wmmtool::ValueMode;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitOracleMismatch = 4;

struct OracleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string cov = "builtin:I:1";
  std::string mode;  // "", "exact", "float"
  std::string output = "json";
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_cov = true) {
  if (with_cov) {
    cmd->add_option("--cov", opts.cov,
                    "covariance: builtin I:r, diag:a,b,..., random:r:seed (optionally "
                    "prefixed 'builtin:'), or a JSON file path");
  }
  cmd->add_option("--mode", opts.mode, "value mode: exact (default) or float")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--output", opts.output, "output format")
      ->check(CLI::IsMember({"json", "pretty"}));
  cmd->add_option("--seed", opts.seed, "seed for the random covariance/test streams");
}

ValueMode resolve_mode(const CommonOptions& opts, const CovarianceSource& source) {
  if (opts.mode == "exact") return ValueMode::exact;
  if (opts.mode == "float") return ValueMode::floating;
  return source.mode;
}

void emit(const ordered_json& doc, const std::string& output, const std::string& pretty_text) {
  if (output == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << pretty_text;
  }
}

std::string pretty_matrix(const wmm::RatMatrix& m, ValueMode mode) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    out += "  [";
    for (int j = 0; j < m.rows(); ++j) {
      if (j) out += ", ";
      out += mode == ValueMode::exact ? wmm::format_rational(m.at(i, j))
                                      : std::to_string(wmm::to_double(m.at(i, j)));
    }
    out += "]\n";
  }
  return out;
}

int cmd_moment(const CommonOptions& opts, const std::string& v_text, bool oracle,
               const wmm::Caps& caps) {
  const CovarianceSource source = wmmtool::parse_covariance_source(opts.cov, caps);
  const wmm::CovarianceContext ctx(source.matrix, true, caps);
  const wmm::MultiIndex v = wmmtool::parse_multi_index(v_text);
  wmm::MomentEngine engine(caps);

  const wmm::MatrixPolynomial& moment = engine.moment_recursive(v);
  const wmm::RatMatrix value = moment.eval(ctx);

  ordered_json doc = wmmtool::output_envelope("moment");
  doc["parameters"] = {{"cov", source.name},
                       {"v", wmm::word_to_string(v)},
                       {"mode", resolve_mode(opts, source) == ValueMode::exact ? "exact" : "float"},
                       {"oracle", oracle}};
  doc["polynomial"] = wmmtool::matrix_polynomial_json(moment);
  doc["trace"] = wmmtool::trace_polynomial_json(engine.trace_moment(v));
  doc["evaluated"] = wmmtool::matrix_json(value, resolve_mode(opts, source));
  if (oracle) {
    const wmm::MatrixPolynomial reference = wmm::letac_matrix(v, caps);
    const bool match = reference == moment && reference.eval(ctx) == value;
    doc["oracle_match"] = match;
    if (!match) {
      std::cout << doc.dump(2) << "\n";
      throw OracleMismatch("permutation oracle disagrees with the recursion for v=" +
                           wmm::word_to_string(v));
    }
  }
  emit(doc, opts.output,
       "M" + wmm::word_to_string(v) + " = " + moment.to_string() + "\n" +
           pretty_matrix(value, resolve_mode(opts, source)));
  return 0;
}

int cmd_central(const CommonOptions& opts, int n, const wmm::Caps& caps) {
  const CovarianceSource source = wmmtool::parse_covariance_source(opts.cov, caps);
  const wmm::CovarianceContext ctx(source.matrix, true, caps);
  wmm::MomentEngine engine(caps);
  const wmm::MatrixPolynomial central = wmm::central_moment(engine, n);
  const wmm::RatMatrix value = central.eval(ctx);

  ordered_json doc = wmmtool::output_envelope("central");
  doc["parameters"] = {{"cov", source.name}, {"n", n}};
  doc["polynomial"] = wmmtool::matrix_polynomial_json(central);
  doc["evaluated"] = wmmtool::matrix_json(value, resolve_mode(opts, source));
  emit(doc, opts.output,
       "E[(XX' - P)^" + std::to_string(n) + "] = " + central.to_string() + "\n" +
           pretty_matrix(value, resolve_mode(opts, source)));
  return 0;
}

int cmd_weighted(const CommonOptions& opts, int m, int n, const wmm::Caps& caps) {
  const CovarianceSource source = wmmtool::parse_covariance_source(opts.cov, caps);
  const wmm::CovarianceContext ctx(source.matrix, true, caps);
  wmm::MomentEngine engine(caps);
  const wmm::AggregateMoments agg = engine.aggregate_moments(m, n);

  ordered_json doc = wmmtool::output_envelope("weighted");
  doc["parameters"] = {{"cov", source.name}, {"m", m}, {"n", n}};
  doc["W"] = wmmtool::matrix_polynomial_json(agg.W);
  doc["T"] = wmmtool::matrix_polynomial_json(agg.T);
  doc["tau"] = wmmtool::trace_polynomial_json(agg.tau);
  doc["varpi"] = wmmtool::trace_polynomial_json(agg.varpi);
  const ValueMode mode = resolve_mode(opts, source);
  doc["evaluated"] = ordered_json::object();
  doc["evaluated"]["W"] = wmmtool::matrix_json(agg.W.eval(ctx), mode);
  doc["evaluated"]["T"] = wmmtool::matrix_json(agg.T.eval(ctx), mode);
  doc["evaluated"]["tau"] = wmm::format_rational(ctx.eval(agg.tau));
  doc["evaluated"]["varpi"] = wmm::format_rational(ctx.eval(agg.varpi));
  emit(doc, opts.output,
       "W(" + std::to_string(m) + "," + std::to_string(n) + ") = " + agg.W.to_string() +
           "\nT = " + agg.T.to_string() + "\ntau = " + agg.tau.to_string() +
           "\nvarpi = " + agg.varpi.to_string() + "\n");
  return 0;
}

int cmd_bell(const CommonOptions& opts, int n, const std::string& method,
             const wmm::Caps& caps) {
  const CovarianceSource source = wmmtool::parse_covariance_source(opts.cov, caps);
  const wmm::CovarianceContext ctx(source.matrix, true, caps);
  wmm::MomentEngine engine(caps);
  wmm::NormMethod nm = wmm::NormMethod::bell;
  if (method == "recursion") nm = wmm::NormMethod::recursion;
  if (method == "permutation") nm = wmm::NormMethod::permutation;
  const wmm::TracePolynomial poly = engine.norm_moment_symbolic(n, nm);
  const wmm::Rational value = ctx.eval(poly);

  ordered_json doc = wmmtool::output_envelope("bell");
  doc["parameters"] = {{"cov", source.name}, {"n", n}, {"method", method}};
  doc["polynomial"] = wmmtool::trace_polynomial_json(poly);
  doc["value"] = wmm::format_rational(value);
  emit(doc, opts.output,
       "E<X,X>^" + std::to_string(n) + " = " + poly.to_string() + " = " +
           wmm::format_rational(value) + "\n");
  return 0;
}

int cmd_verify(const CommonOptions& opts, const wmmtool::VerifyOptions& vopts,
               const wmm::Caps& caps) {
  wmm::MomentEngine engine(caps);
  const wmmtool::VerifySummary summary = wmmtool::run_verify(engine, vopts);
  ordered_json doc = wmmtool::output_envelope("verify");
  doc["parameters"] = {{"max_m", vopts.max_m},
                       {"max_weight", vopts.max_weight},
                       {"seed", vopts.seed},
                       {"selftest_corrupt", vopts.selftest_corrupt}};
  doc.update(wmmtool::verify_summary_json(summary));
  std::string pretty = "verify: " + std::to_string(summary.instances) + " instances, " +
                       std::to_string(summary.failures) + " failures\n";
  emit(doc, opts.output, pretty);
  return summary.ok() ? 0 : kExitVerifyFailed;
}

int cmd_mc(const CommonOptions& opts, const std::string& v_text, long samples, long batch,
           int threads, const wmm::Caps& caps) {
  if (opts.mode == "exact") {
    throw wmm::ParseError("mc is a float-mode command (remove --mode exact)");
  }
  const CovarianceSource source = wmmtool::parse_covariance_source(opts.cov, caps);
  const wmm::CovarianceContext ctx(source.matrix, true, caps);
  const wmm::MultiIndex v = wmmtool::parse_multi_index(v_text);
  if (v.empty()) throw wmm::ParseError("mc: --v must be a non-empty multi-index");

  wmm::MCConfig cfg;
  cfg.samples = samples;
  cfg.seed = opts.seed;
  cfg.batch = batch;
  cfg.threads = threads;
  const wmm::MCResult result = wmm::monte_carlo_M(ctx, v, cfg);

  ordered_json doc = wmmtool::output_envelope("mc");
  doc["parameters"] = {{"cov", source.name},
                       {"v", wmm::word_to_string(v)},
                       {"samples", samples},
                       {"seed", opts.seed},
                       {"batch", batch},
                       {"threads", threads}};
  doc.update(wmmtool::mc_result_json(result));

  // Exact reference and z-scores whenever the word is within symbolic caps.
  try {
    wmm::MomentEngine engine(caps);
    const wmm::RatMatrix exact = engine.moment_recursive(v).eval(ctx);
    doc["exact"] = wmmtool::matrix_json(exact, ValueMode::exact);
    ordered_json zs = ordered_json::array();
    for (int i = 0; i < result.r; ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < result.r; ++j) {
        const double se = result.se(i, j);
        const double gap = result.at(i, j) - wmm::to_double(exact.at(i, j));
        row.push_back(se > 0 ? gap / se : 0.0);
      }
      zs.push_back(std::move(row));
    }
    doc["z_scores"] = std::move(zs);
  } catch (const wmm::CapExceeded&) {
    // No exact reference at this size; the estimate block stands alone.
  }
  emit(doc, opts.output, "mc estimate for " + wmm::word_to_string(v) + " done\n");
  return 0;
}

int cmd_inequalities(const CommonOptions& opts, const std::string& suite, int max_m, int max_n,
                     double tol, bool cov_given, const wmm::Caps& caps) {
  wmm::MomentEngine engine(caps);
  wmm::NamedContexts ctxs;
  if (cov_given) {
    const CovarianceSource source = wmmtool::parse_covariance_source(opts.cov, caps);
    ctxs.emplace_back(source.name, wmm::CovarianceContext(source.matrix, true, caps));
  } else {
    ctxs = wmm::standard_contexts(opts.seed, caps);
  }

  std::vector<wmm::CheckReport> reports;
  const bool all = suite == "all";

  if (all || suite == "monotonicity") {
    for (int m = 1; m <= max_m; ++m) {
      for (int n = 0; n <= max_n; ++n) {
        reports.push_back(wmm::check_theorem1_monotonicity(engine, m, n, ctxs, tol));
      }
    }
  }
  if (all || suite == "tau-varpi") {
    for (int m = 1; m <= max_m; ++m) {
      for (int n = 0; n <= max_n; ++n) {
        reports.push_back(wmm::check_tau_varpi(engine, m, n, ctxs));
      }
      // The contraction bound the corrected constants are derived from.
      const wmm::MultiIndex zeros(static_cast<std::size_t>(m) + 1, 0);
      reports.push_back(wmm::check_lower_bound(engine, zeros, ctxs, tol));
    }
  }
  if (all || suite == "central") {
    for (int degree = 1; degree <= std::max(1, max_n); ++degree) {
      reports.push_back(wmm::check_central_estimates(engine, degree, ctxs, tol));
    }
  }
  if (all || suite == "identity-cov") {
    for (int m = 1; m <= max_m; ++m) {
      for (int r : {1, 2, 3, 5}) {
        reports.push_back(wmm::check_identity_covariance_estimates(m, r));
      }
    }
  }
  if (all || suite == "power-bounds") {
    for (int n = 1; n <= std::max(1, max_n); ++n) {
      reports.push_back(wmm::check_power_moment_bounds(engine, n, ctxs, tol));
    }
  }
  if (all || suite == "laplace") {
    for (const auto& [name, ctx] : ctxs) {
      const wmm::Rational t = wmm::Rational(1) / (wmm::Rational(4) * ctx.trace_power(1));
      reports.push_back(wmm::check_laplace_estimates(engine, name, ctx, t, 6, tol));
    }
  }

  bool any_fail = false;
  ordered_json items = ordered_json::array();
  for (const auto& report : reports) {
    any_fail = any_fail || report.failed();
    items.push_back(wmmtool::check_report_json(report));
  }

  ordered_json doc = wmmtool::output_envelope("inequalities");
  doc["parameters"] = {{"suite", suite}, {"max_m", max_m},     {"max_n", max_n},
                       {"tol", tol},     {"seed", opts.seed},  {"contexts", ctxs.size()}};
  doc["reports"] = std::move(items);
  doc["status"] = any_fail ? "fail" : "pass";

  std::string pretty;
  for (const auto& report : reports) {
    pretty += report.name + " ";
    for (const auto& [k, val] : report.parameters) pretty += k + "=" + val + " ";
    pretty += "-> " + report.verdict + "\n";
  }
  emit(doc, opts.output, pretty);
  return any_fail ? kExitVerifyFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact expectations of products of rank-one Wishart matrices: symbolic "
      "moments, weighted sums, central moments, inequality verification, and "
      "seeded Monte Carlo."};
  app.require_subcommand(1);
  const wmm::Caps caps = wmm::Caps::from_env();

  std::function<int()> action;

  // moment
  auto* moment = app.add_subcommand("moment", "compute M(v) = E[(XX'P^v1)...(XX'P^vm)]");
  static CommonOptions moment_opts;
  static std::string moment_v;
  static bool moment_oracle = false;
  add_common(moment, moment_opts);
  moment->add_option("--v", moment_v, "multi-index, e.g. 0,1,2")->required();
  moment->add_flag("--oracle", moment_oracle, "cross-check against the permutation-sum oracle");
  moment->callback([&] { action = [&] { return cmd_moment(moment_opts, moment_v, moment_oracle, caps); }; });

  // central
  auto* central = app.add_subcommand("central", "compute E[(XX'-P)^n]");
  static CommonOptions central_opts;
  static int central_n = 2;
  add_common(central, central_opts);
  central->add_option("--n", central_n, "power n >= 0")->required();
  central->callback([&] { action = [&] { return cmd_central(central_opts, central_n, caps); }; });

  // weighted
  auto* weighted = app.add_subcommand("weighted", "compute W(m,n), T(m,n), tau, varpi");
  static CommonOptions weighted_opts;
  static int weighted_m = 1;
  static int weighted_n = 0;
  add_common(weighted, weighted_opts);
  weighted->add_option("--m", weighted_m, "word length m >= 1")->required();
  weighted->add_option("--n", weighted_n, "total weight n >= 0")->required();
  weighted->callback(
      [&] { action = [&] { return cmd_weighted(weighted_opts, weighted_m, weighted_n, caps); }; });

  // bell
  auto* bell = app.add_subcommand("bell", "compute E<X,X>^n as a trace polynomial");
  static CommonOptions bell_opts;
  static int bell_n = 1;
  static std::string bell_method = "bell";
  add_common(bell, bell_opts);
  bell->add_option("--n", bell_n, "power n >= 0")->required();
  bell->add_option("--method", bell_method, "route: recursion, permutation, or bell")
      ->check(CLI::IsMember({"recursion", "permutation", "bell"}));
  bell->callback([&] { action = [&] { return cmd_bell(bell_opts, bell_n, bell_method, caps); }; });

  // verify
  auto* verify = app.add_subcommand("verify", "cross-validate every dual-route computation");
  static CommonOptions verify_opts;
  static wmmtool::VerifyOptions vopts;
  add_common(verify, verify_opts, /*with_cov=*/false);
  verify->add_option("--max-m", vopts.max_m, "longest word in the oracle-triangle grid");
  verify->add_option("--max-weight", vopts.max_weight, "largest |v| in the grid");
  verify->add_flag("--selftest-corrupt", vopts.selftest_corrupt,
                   "negative control: corrupt one coefficient and expect failure");
  verify->callback([&] {
    action = [&] {
      vopts.seed = verify_opts.seed;
      return cmd_verify(verify_opts, vopts, caps);
    };
  });

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of M(v) with exact reference");
  static CommonOptions mc_opts;
  static std::string mc_v;
  static long mc_samples = 100000;
  static long mc_batch = 4096;
  static int mc_threads = 1;
  add_common(mc, mc_opts);
  mc->add_option("--v", mc_v, "multi-index, e.g. 0,1")->required();
  mc->add_option("--samples", mc_samples, "number of samples");
  mc->add_option("--batch", mc_batch, "scheduling batch size (does not affect results)");
  mc->add_option("--threads", mc_threads, "worker threads (does not affect results)");
  mc->callback([&] {
    action = [&] { return cmd_mc(mc_opts, mc_v, mc_samples, mc_batch, mc_threads, caps); };
  });

  // inequalities
  auto* ineq = app.add_subcommand("inequalities", "run the ordering-claim check suites");
  static CommonOptions ineq_opts;
  static std::string ineq_suite = "all";
  static int ineq_max_m = 3;
  static int ineq_max_n = 3;
  static double ineq_tol = 1e-9;
  add_common(ineq, ineq_opts);
  ineq->add_option("--suite", ineq_suite, "which suite to run")
      ->check(CLI::IsMember(
          {"monotonicity", "tau-varpi", "central", "identity-cov", "power-bounds", "laplace", "all"}));
  ineq->add_option("--max-m", ineq_max_m, "largest m in the grids");
  ineq->add_option("--max-n", ineq_max_n, "largest n / degree in the grids");
  ineq->add_option("--tol", ineq_tol, "relative tolerance for float Loewner checks");
  ineq->callback([&] {
    action = [&] {
      return cmd_inequalities(ineq_opts, ineq_suite, ineq_max_m, ineq_max_n, ineq_tol,
                              ineq->count("--cov") > 0, caps);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParseError;
  }

  try {
    return action ? action() : kExitParseError;
  } catch (const wmm::CapExceeded& e) {
    std::cerr << "error (cap exceeded): " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const OracleMismatch& e) {
    std::cerr << "error (oracle mismatch): " << e.what() << "\n";
    return kExitOracleMismatch;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (bad input): " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  }
}
