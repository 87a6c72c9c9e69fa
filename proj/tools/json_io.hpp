#pragma once

// JSON serialization of the library types (fixed key order, exact "p/q"
// rational strings) and covariance-source parsing for the CLI: builtin
// shorthands (I:r, diag:a,b,..., random:r:seed, with optional "builtin:"
// prefix) or a JSON file {"r": ..., "entries": [[...]], "mode": ...}.

#include <json.hpp>

#include <string>
#include <utility>

#include <wmm/checks.hpp>
#include <wmm/matrix_polynomial.hpp>
#include <wmm/oracles.hpp>
#include <wmm/trace_algebra.hpp>

namespace wmmtool {

using ordered_json = nlohmann::ordered_json;

enum class ValueMode { exact, floating };

struct CovarianceSource {
  std::string name;        // normalized description used in reports
  wmm::RatMatrix matrix;
  ValueMode mode = ValueMode::exact;
};

/// Parse "I:r", "diag:a,b,...", "random:r:seed" (optionally prefixed with
/// "builtin:"), or a path to a covariance JSON file. Throws wmm::ParseError.
CovarianceSource parse_covariance_source(const std::string& spec, const wmm::Caps& caps);

/// Parse a comma-separated multi-index like "0,1,2" (or "" for the empty word).
wmm::MultiIndex parse_multi_index(const std::string& text);

ordered_json matrix_json(const wmm::RatMatrix& m, ValueMode mode);
ordered_json trace_polynomial_json(const wmm::TracePolynomial& p);
ordered_json matrix_polynomial_json(const wmm::MatrixPolynomial& f);
ordered_json check_report_json(const wmm::CheckReport& report);
ordered_json mc_result_json(const wmm::MCResult& result);

/// Common envelope: {"schema": "wmm/<command>/v1", "version": ..., "command": ...}.
ordered_json output_envelope(const std::string& command);

}  // namespace wmmtool
