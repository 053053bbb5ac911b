#pragma once

// Text file formats and JSON reports.
//
// Code file:      LRC1 q=<int> [poly=<int>] n=<int> k=<int>
//                 then k lines of n space-separated field encodings.
// Locality file:  one line per symbol, "<j>: <i1> <i2> ...".
// Family spec:    QUC1 k=<int> n=<int>
//                 then "G<i>: <gen1> <gen2> ..." with 2k-bit strings.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lrc/code.hpp"
#include "lrc/construct.hpp"
#include "lrc/error.hpp"
#include "lrc/quasi_uniform.hpp"
#include "lrc/transforms.hpp"

namespace lrc {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

namespace detail {

inline std::map<std::string, std::string> parse_header(const std::string& line, const std::string& magic) {
  std::istringstream is(line);
  std::string tag;
  is >> tag;
  if (tag != magic) fail(ErrorCode::kParse, "expected '" + magic + "' header, got '" + tag + "'");
  std::map<std::string, std::string> kv;
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) fail(ErrorCode::kParse, "bad header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

inline std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::kParse, "bad integer for " + what + ": '" + s + "'");
  }
}

inline std::uint64_t require(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) fail(ErrorCode::kParse, "header lacks " + key + "=");
  return parse_uint(it->second, key);
}

inline bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace detail

inline void write_code(std::ostream& out, const LinearCode& code) {
  const Matrix& g = code.generator();
  out << "LRC1 " << code.field().describe() << " n=" << g.cols() << " k=" << g.rows() << "\n";
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t c = 0; c < g.cols(); ++c) out << (c ? " " : "") << g.at(i, c);
    out << "\n";
  }
}

inline LinearCode read_code(std::istream& in) {
  std::string line;
  if (!detail::next_content_line(in, line)) fail(ErrorCode::kParse, "empty code file");
  auto kv = detail::parse_header(line, "LRC1");
  std::optional<std::uint64_t> poly;
  if (kv.count("poly")) poly = detail::require(kv, "poly");
  const Field f = Field::from_order(detail::require(kv, "q"), poly);
  const std::size_t n = detail::require(kv, "n"), k = detail::require(kv, "k");
  std::vector<Value> data;
  data.reserve(n * k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!detail::next_content_line(in, line)) fail(ErrorCode::kParse, "code file has fewer than k rows");
    std::istringstream is(line);
    std::string tok;
    std::size_t count = 0;
    while (is >> tok) {
      data.push_back(static_cast<Value>(detail::parse_uint(tok, "matrix entry")));
      ++count;
    }
    if (count != n) fail(ErrorCode::kParse, "row " + std::to_string(i + 1) + " has " + std::to_string(count) + " entries, expected " + std::to_string(n));
  }
  return LinearCode(Matrix(f, k, n, std::move(data)));
}

inline void write_locality(std::ostream& out, const LocalityAssignment& a) {
  for (std::size_t j = 1; j <= a.size(); ++j) {
    out << j << ":";
    for (std::size_t s : a.set_of(j)) out << " " << s;
    out << "\n";
  }
}

inline LocalityAssignment read_locality(std::istream& in) {
  std::vector<std::vector<std::size_t>> sets;
  std::string line;
  while (detail::next_content_line(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail(ErrorCode::kParse, "locality line lacks ':'");
    std::string head = line.substr(0, colon);
    head.erase(0, head.find_first_not_of(" \t"));
    head.erase(head.find_last_not_of(" \t") + 1);
    const std::size_t j = detail::parse_uint(head, "symbol");
    if (j != sets.size() + 1) fail(ErrorCode::kParse, "locality lines must list symbols 1..n in order");
    std::istringstream is(line.substr(colon + 1));
    std::vector<std::size_t> s;
    std::string tok;
    while (is >> tok) s.push_back(detail::parse_uint(tok, "set member"));
    sets.push_back(std::move(s));
  }
  return LocalityAssignment(std::move(sets));
}

inline void write_quasi_spec(std::ostream& out, const QuasiUniformSpec& spec) {
  out << "QUC1 k=" << spec.k() << " n=" << spec.length() << "\n";
  for (std::size_t i = 1; i <= spec.length(); ++i) {
    out << "G" << i << ":";
    for (const auto& s : spec.group(i).basis_strings()) out << " " << s;
    out << "\n";
  }
}

inline QuasiUniformSpec read_quasi_spec(std::istream& in) {
  std::string line;
  if (!detail::next_content_line(in, line)) fail(ErrorCode::kParse, "empty family spec file");
  auto kv = detail::parse_header(line, "QUC1");
  const std::size_t k = detail::require(kv, "k"), n = detail::require(kv, "n");
  std::vector<BinarySubgroup> groups;
  for (std::size_t i = 1; i <= n; ++i) {
    if (!detail::next_content_line(in, line)) fail(ErrorCode::kParse, "family spec has fewer than n subgroups");
    const std::string tag = "G" + std::to_string(i) + ":";
    std::istringstream is(line);
    std::string tok;
    is >> tok;
    if (tok != tag) fail(ErrorCode::kParse, "expected '" + tag + "', got '" + tok + "'");
    std::vector<std::string> gens;
    while (is >> tok) gens.push_back(tok);
    groups.push_back(BinarySubgroup::from_strings(2 * k, gens));
  }
  return QuasiUniformSpec(k, std::move(groups));
}

inline Json to_json(const LocalityReport& rep) {
  Json arr = Json::array();
  for (const auto& e : rep.entries) {
    Json j;
    j["symbol"] = e.symbol;
    j["set"] = e.set;
    j["projected_distance"] = e.projected_distance ? Json(*e.projected_distance) : Json(nullptr);
    j["pass"] = e.pass;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline Json to_json(const VectorLocalityReport& rep) {
  Json arr = Json::array();
  for (const auto& e : rep.entries) arr.push_back(Json{{"symbol", e.symbol}, {"set", e.set}, {"pass", e.pass}});
  return arr;
}

/// The verification report: n, k, q, d, d_opt, gap, label, locality.
inline Json verification_report(const LinearCode& code, const LocalityReport& loc, const Classification& cls, std::size_t r,
                                std::size_t delta) {
  Json j;
  j["schema"] = kReportSchema;
  j["n"] = code.length();
  j["k"] = code.dimension();
  j["q"] = code.field().order();
  if (auto p = code.field().modulus()) j["poly"] = *p;
  j["r"] = r;
  j["delta"] = delta;
  j["d"] = cls.d;
  j["d_opt"] = cls.d_opt;
  j["gap"] = cls.gap;
  j["label"] = to_string(cls.label);
  j["locality_pass"] = loc.all_pass;
  j["locality"] = to_json(loc);
  return j;
}

inline Json to_json(const ConstructionReport& rep) {
  Json j;
  j["schema"] = kReportSchema;
  j["params"] = Json{{"n", rep.n}, {"k", rep.k}, {"r", rep.r}, {"delta", rep.delta}};
  j["field"] = rep.field;
  j["partition"] = rep.partition.sizes();
  j["z"] = rep.floor.z;
  j["floor"] = rep.floor.value;
  j["measured_d"] = rep.measured_d ? Json(*rep.measured_d) : Json(nullptr);
  j["d_opt"] = rep.d_opt;
  j["gap"] = rep.gap ? Json(*rep.gap) : Json(nullptr);
  j["label"] = rep.label ? Json(to_string(*rep.label)) : Json(nullptr);
  j["verified"] = rep.verified;
  j["attempts"] = rep.attempts;
  j["seed"] = rep.seed;
  j["column_permutation"] = rep.permutation;
  return j;
}

inline Json to_json(const EnlargeWitness& w) {
  return Json{{"appended_row", w.appended_row},
              {"circuits_checked", w.circuits_checked},
              {"samples", w.samples},
              {"rejected_by_output_check", w.rejected_by_output_check}};
}

inline Json quasi_report(const QuasiVerification& v) {
  Json j;
  j["schema"] = kReportSchema;
  j["n"] = v.params.n;
  if (v.params.log2_size % 2 == 0) j["k"] = v.params.log2_size / 2;
  else j["k"] = v.params.k_eff;
  j["d"] = v.params.d;
  j["r"] = v.r;
  j["bound_eq2"] = v.bound ? Json(*v.bound) : Json(nullptr);
  j["optimal"] = v.optimal;
  j["degenerate"] = v.params.degenerate;
  j["locality_pass"] = v.locality.all_pass;
  j["per_symbol_locality"] = to_json(v.locality);
  return j;
}

}  // namespace lrc
