#pragma once

// File formats: chain, distribution, joint and measure-family JSON inputs;
// balance, verdict and bound report JSON outputs; trace and bound CSV.
//
// Writers are byte-stable: fixed key order, "%.<digits>g" floats, "\n"
// line endings. Chain files use 17 significant digits, reports 12.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "infomono/error.hpp"
#include "infomono/info_measures.hpp"
#include "infomono/markov_core.hpp"
#include "infomono/monotonicity_lab.hpp"
#include "infomono/zz_bounds.hpp"

namespace infomono::io {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

inline constexpr int kChainDigits = 17;
inline constexpr int kReportDigits = 12;

inline std::string format_double(double v, int digits) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

namespace detail {

inline void write_value(std::string& out, const ordered_json& j, int digits, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>(), digits);
      return;
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, val] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + ordered_json(key).dump() + ": ";
        write_value(out, val, digits, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      bool scalar = true;
      for (const auto& e : j) scalar = scalar && !e.is_structured();
      if (scalar) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_value(out, j[i], digits, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad_in;
        write_value(out, j[i], digits, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

/// Serializes with every float printed at `digits` significant digits.
inline std::string dump(const ordered_json& j, int digits) {
  std::string out;
  detail::write_value(out, j, digits, 0);
  out += "\n";
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError("malformed JSON in " + origin + ": " + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& origin) {
  if (!j.is_object() || !j.contains(key)) throw IoError(origin + ": missing field '" + key + "'");
  return j.at(key);
}

inline double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw IoError(what + ": expected a number");
  return j.get<double>();
}

inline std::size_t count(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw IoError(what + ": expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

inline std::vector<double> vector_of(const json& j, const std::string& what) {
  if (!j.is_array()) throw IoError(what + ": expected an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], what + "[" + std::to_string(i) + "]"));
  return v;
}

inline Eigen::MatrixXd matrix_of(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) {
    throw IoError(what + ": expected " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = vector_of(j[r], what + "[" + std::to_string(r) + "]");
    if (row.size() != cols) throw IoError(what + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  return m;
}

inline ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ordered_json vector_json(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace detail

// Chains: { "kind": "discrete" | "continuous", "n": int, "matrix": [[...]], "labels": [...] }

struct ChainFile {
  Chain chain;
  std::vector<std::string> labels;
};

inline ChainFile chain_from_json(const json& j, const std::string& origin = "chain") {
  const auto& kind = detail::field(j, "kind", origin);
  if (!kind.is_string()) throw IoError(origin + ": 'kind' must be a string");
  const std::size_t n = detail::count(detail::field(j, "n", origin), origin + ".n");
  Eigen::MatrixXd m = detail::matrix_of(detail::field(j, "matrix", origin), n, n, origin + ".matrix");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const auto& l = j.at("labels");
    if (!l.is_array() || l.size() != n) throw IoError(origin + ": 'labels' must hold n strings");
    for (const auto& s : l) {
      if (!s.is_string()) throw IoError(origin + ": 'labels' must hold n strings");
      labels.push_back(s.get<std::string>());
    }
  }
  const auto k = kind.get<std::string>();
  if (k == "discrete") return {StochasticMatrix(std::move(m)), std::move(labels)};
  if (k == "continuous") return {RateMatrix(std::move(m)), std::move(labels)};
  throw IoError(origin + ": 'kind' must be \"discrete\" or \"continuous\"");
}

inline ordered_json chain_to_json(const Chain& chain, const std::vector<std::string>& labels = {}) {
  ordered_json j;
  const bool discrete = std::holds_alternative<StochasticMatrix>(chain);
  j["kind"] = discrete ? "discrete" : "continuous";
  j["n"] = chain_size(chain);
  j["matrix"] = detail::matrix_json(std::visit([](const auto& c) -> Eigen::MatrixXd { return c.matrix(); }, chain));
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

inline std::string chain_to_string(const Chain& chain, const std::vector<std::string>& labels = {}) {
  return dump(chain_to_json(chain, labels), kChainDigits);
}

inline ChainFile load_chain(const std::string& path) {
  return chain_from_json(parse_json(read_text_file(path), path), path);
}

// Distributions: { "probs": [...] } or a bare array.

inline Distribution distribution_from_json(const json& j, const std::string& origin = "distribution") {
  if (j.is_array()) return Distribution(detail::vector_of(j, origin));
  return Distribution(detail::vector_of(detail::field(j, "probs", origin), origin + ".probs"));
}

inline ordered_json distribution_to_json(const Distribution& p) {
  ordered_json j;
  j["probs"] = detail::vector_json(p.probs());
  return j;
}

// Joints: { "nx": int, "ny": int, "table": [[...]], "measures": [ [[...]], ... ] }

struct JointFile {
  JointDistribution joint;
  std::vector<PairMeasure> measures;
};

inline JointFile joint_from_json(const json& j, const std::string& origin = "joint") {
  const std::size_t nx = detail::count(detail::field(j, "nx", origin), origin + ".nx");
  const std::size_t ny = detail::count(detail::field(j, "ny", origin), origin + ".ny");
  JointDistribution joint(detail::matrix_of(detail::field(j, "table", origin), nx, ny, origin + ".table"));
  std::vector<PairMeasure> measures;
  if (j.contains("measures")) {
    const auto& ms = j.at("measures");
    if (!ms.is_array()) throw IoError(origin + ": 'measures' must be an array of tables");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      measures.emplace_back(detail::matrix_of(ms[i], nx, ny, origin + ".measures[" + std::to_string(i) + "]"));
    }
  }
  return {std::move(joint), std::move(measures)};
}

inline ordered_json joint_to_json(const JointDistribution& joint, const std::vector<PairMeasure>& measures = {}) {
  ordered_json j;
  j["nx"] = joint.nx();
  j["ny"] = joint.ny();
  j["table"] = detail::matrix_json(joint.table());
  if (!measures.empty()) {
    ordered_json ms = ordered_json::array();
    for (const auto& m : measures) ms.push_back(detail::matrix_json(m.table()));
    j["measures"] = std::move(ms);
  }
  return j;
}

// Measure families: { "n": int, "measures": [[mu0...], [mu1...], ...] }

inline MeasureFamily family_from_json(const json& j, const std::string& origin = "family") {
  const std::size_t n = detail::count(detail::field(j, "n", origin), origin + ".n");
  const auto& ms = detail::field(j, "measures", origin);
  if (!ms.is_array() || ms.empty()) throw IoError(origin + ": 'measures' must be a non-empty array");
  return MeasureFamily(detail::matrix_of(ms, ms.size(), n, origin + ".measures"));
}

inline ordered_json family_to_json(const MeasureFamily& f) {
  ordered_json j;
  j["n"] = f.size();
  j["measures"] = detail::matrix_json(f.matrix());
  return j;
}

// Reports.

inline ordered_json balance_to_json(const BalanceReport& r) {
  ordered_json j;
  j["is_doubly_stochastic"] = r.is_doubly_stochastic;
  j["satisfies_global_balance"] = r.satisfies_global_balance;
  j["satisfies_detailed_balance"] = r.satisfies_detailed_balance;
  j["max_residual"] = r.max_residual;
  j["global_residual"] = r.global_residual;
  j["detailed_residual"] = r.detailed_residual;
  return j;
}

inline ordered_json verdict_to_json(const MonotonicityVerdict& v) {
  ordered_json j;
  j["direction"] = std::string(to_string(v.direction));
  j["holds"] = v.holds;
  j["max_violation"] = v.max_violation;
  j["argmax_step"] = v.argmax_step;
  return j;
}

inline ordered_json bound_report_to_json(const BoundReport& r) {
  ordered_json j;
  j["K"] = r.config.K();
  j["L"] = r.config.L();
  j["theta"] = r.config.theta();
  j["grid"] = detail::vector_json(r.s_grid);
  j["psi"] = detail::vector_json(r.psi_values);
  j["d"] = detail::vector_json(r.d_values);
  j["d_at_zero"] = r.d_at_zero;
  j["d_at_limit"] = r.d_at_limit;
  j["d_classical"] = r.d_classical;
  if (r.best_s) {
    j["best_s"] = *r.best_s;
  } else {
    j["best_s"] = "limit";
  }
  j["best_d"] = r.best_d;
  return j;
}

inline std::string bound_report_csv(const BoundReport& r) {
  std::string out = "s,psi,d\n";
  for (std::size_t i = 0; i < r.s_grid.size(); ++i) {
    out += format_double(r.s_grid[i], kReportDigits) + "," + format_double(r.psi_values[i], kReportDigits) + "," +
           format_double(r.d_values[i], kReportDigits) + "\n";
  }
  return out;
}

inline std::string trace_csv(const TimeSeries& series) {
  std::string out = "t,value\n";
  for (const auto& p : series) {
    out += format_double(p.t, kReportDigits) + "," + format_double(p.value, kReportDigits) + "\n";
  }
  return out;
}

}  // namespace infomono::io
