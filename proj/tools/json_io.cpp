#include "json_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <wmm/errors.hpp>
#include <wmm/rng.hpp>

namespace wmmtool {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(current);
  return out;
}

wmm::RatMatrix builtin_matrix(const std::string& body, const wmm::Caps& caps,
                              std::string& name) {
  const auto parts = split(body, ':');
  if (parts[0] == "I" && parts.size() == 2) {
    int r = 0;
    try {
      r = std::stoi(parts[1]);
    } catch (const std::exception&) {
      throw wmm::ParseError("builtin covariance: bad dimension in '" + body + "'");
    }
    if (r < 1) throw wmm::ParseError("builtin covariance: dimension must be >= 1");
    name = "I" + std::to_string(r);
    return wmm::RatMatrix::identity(r);
  }
  if (parts[0] == "diag" && parts.size() == 2) {
    std::vector<wmm::Rational> entries;
    for (const auto& piece : split(parts[1], ',')) {
      entries.push_back(wmm::parse_rational(piece));
    }
    if (entries.empty()) throw wmm::ParseError("builtin covariance: empty diagonal");
    name = "diag(" + parts[1] + ")";
    return wmm::RatMatrix::diagonal(entries);
  }
  if (parts[0] == "random" && parts.size() == 3) {
    int r = 0;
    unsigned long seed = 0;
    try {
      r = std::stoi(parts[1]);
      seed = std::stoul(parts[2]);
    } catch (const std::exception&) {
      throw wmm::ParseError("builtin covariance: bad random spec '" + body + "'");
    }
    if (r < 1) throw wmm::ParseError("builtin covariance: dimension must be >= 1");
    name = "random-pd-" + std::to_string(r) + "x" + std::to_string(r) + "[" +
           std::to_string(seed) + "]";
    return wmm::random_rational_pd(r, seed);
  }
  (void)caps;
  throw wmm::ParseError("unknown builtin covariance '" + body +
                        "' (expected I:r, diag:a,b,..., or random:r:seed)");
}

wmm::Rational entry_to_rational(const ordered_json& value) {
  if (value.is_string()) return wmm::parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return wmm::Rational(value.get<long>());
  if (value.is_number_float()) {
    wmm::Rational q(value.get<double>());
    q.canonicalize();
    return q;
  }
  throw wmm::ParseError("covariance entries must be strings or numbers");
}

}  // namespace

CovarianceSource parse_covariance_source(const std::string& spec, const wmm::Caps& caps) {
  std::string body = spec;
  if (body.rfind("builtin:", 0) == 0) body = body.substr(8);
  if (body.rfind("I:", 0) == 0 || body.rfind("diag:", 0) == 0 || body.rfind("random:", 0) == 0) {
    CovarianceSource out;
    out.matrix = builtin_matrix(body, caps, out.name);
    out.mode = ValueMode::exact;
    return out;
  }

  std::ifstream in(body);
  if (!in) throw wmm::ParseError("cannot open covariance file '" + body + "'");
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw wmm::ParseError("covariance file '" + body + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("r") || !doc.contains("entries")) {
    throw wmm::ParseError("covariance file '" + body + "': need keys r and entries");
  }
  const int r = doc.at("r").get<int>();
  if (r < 1) throw wmm::ParseError("covariance file: r must be >= 1");
  const auto& rows = doc.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != r) {
    throw wmm::ParseError("covariance file: entries must be an r x r array");
  }
  CovarianceSource out;
  out.matrix = wmm::RatMatrix(r);
  for (int i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != r) {
      throw wmm::ParseError("covariance file: entries must be an r x r array");
    }
    for (int j = 0; j < r; ++j) {
      out.matrix.at(i, j) = entry_to_rational(row[static_cast<std::size_t>(j)]);
    }
  }
  if (doc.contains("mode")) {
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode == "exact") {
      out.mode = ValueMode::exact;
    } else if (mode == "float") {
      out.mode = ValueMode::floating;
    } else {
      throw wmm::ParseError("covariance file: mode must be exact or float");
    }
  }
  out.name = body;
  return out;
}

wmm::MultiIndex parse_multi_index(const std::string& text) {
  wmm::MultiIndex v;
  if (text.empty()) return v;
  for (const auto& piece : split(text, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(piece, &used);
      if (used != piece.size()) throw std::invalid_argument(piece);
      if (value < 0) throw wmm::ParseError("multi-index entries must be >= 0");
      v.push_back(value);
    } catch (const wmm::ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw wmm::ParseError("bad multi-index entry '" + piece + "' in '" + text + "'");
    }
  }
  return v;
}

ordered_json matrix_json(const wmm::RatMatrix& m, ValueMode mode) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.rows(); ++j) {
      if (mode == ValueMode::exact) {
        row.push_back(wmm::format_rational(m.at(i, j)));
      } else {
        row.push_back(wmm::to_double(m.at(i, j)));
      }
    }
    rows.push_back(std::move(row));
  }
  ordered_json out;
  out["r"] = m.rows();
  out["entries"] = std::move(rows);
  return out;
}

ordered_json trace_polynomial_json(const wmm::TracePolynomial& p) {
  ordered_json out = ordered_json::array();
  for (const auto& [monomial, coeff] : p.terms()) {
    ordered_json mono = ordered_json::object();
    for (const auto& [index, mult] : monomial) {
      mono[std::to_string(index)] = mult;
    }
    ordered_json term;
    term["monomial"] = std::move(mono);
    term["coeff"] = wmm::format_rational(coeff);
    out.push_back(std::move(term));
  }
  return out;
}

ordered_json matrix_polynomial_json(const wmm::MatrixPolynomial& f) {
  ordered_json out = ordered_json::array();
  for (const auto& [q, coeff] : f.coefficients()) {
    ordered_json term;
    term["q"] = q;
    term["coeff"] = trace_polynomial_json(coeff);
    out.push_back(std::move(term));
  }
  return out;
}

ordered_json check_report_json(const wmm::CheckReport& report) {
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : report.parameters) {
    params[key] = value;
  }
  ordered_json instances = ordered_json::array();
  for (const auto& inst : report.instances) {
    ordered_json item;
    item["description"] = inst.description;
    item["status"] = inst.status;
    item["margin"] = inst.margin;
    item["margin_value"] = inst.margin_value;
    instances.push_back(std::move(item));
  }
  ordered_json out;
  out["name"] = report.name;
  out["parameters"] = std::move(params);
  out["verdict"] = report.verdict;
  out["margin"] = report.margin;
  out["instances"] = std::move(instances);
  return out;
}

ordered_json mc_result_json(const wmm::MCResult& result) {
  ordered_json estimate = ordered_json::array();
  ordered_json stderrs = ordered_json::array();
  for (int i = 0; i < result.r; ++i) {
    ordered_json erow = ordered_json::array();
    ordered_json srow = ordered_json::array();
    for (int j = 0; j < result.r; ++j) {
      erow.push_back(result.at(i, j));
      srow.push_back(result.se(i, j));
    }
    estimate.push_back(std::move(erow));
    stderrs.push_back(std::move(srow));
  }
  ordered_json out;
  out["r"] = result.r;
  out["samples"] = result.samples;
  out["estimate"] = std::move(estimate);
  out["stderr"] = std::move(stderrs);
  return out;
}

ordered_json output_envelope(const std::string& command) {
  ordered_json out;
  out["schema"] = "wmm/" + command + "/v1";
  out["version"] = "0.1.0";
  out["command"] = command;
  return out;
}

}  // namespace wmmtool
