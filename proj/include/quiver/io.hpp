#pragma once

// JSON formats.
//
// Quiver file (schema version 1, 1-based vertices):
//
//   { "version": 1,                      optional
//     "n": 2,
//     "edges": [ {"from": 2, "to": 1, "count": 2},
//                {"from": 1, "to": 1, "count": 1} ] }
//
// Every (to, from) pair appears at most once; absent pairs have count 0.
// Infinite multiplicities ("inf") are rejected.
//
// Correspondence element: a list of nonempty blocks
//   [ {"to": 1, "from": 2, "vector": [[re, im], ...]}, ... ]
// with omitted blocks equal to zero.

#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "quiver/correspondence.hpp"
#include "quiver/error.hpp"
#include "quiver/quiver.hpp"

namespace quiver {

using json = nlohmann::json;

inline constexpr int graph_format_version = 1;

namespace detail {

inline std::size_t one_based(const json& v, std::size_t n, const char* field) {
  if (!v.is_number_integer())
    throw parse_error(std::string("'") + field + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < 1 || static_cast<std::size_t>(x) > n)
    throw parse_error(std::string("'") + field + "' out of range 1.." + std::to_string(n));
  return static_cast<std::size_t>(x - 1);
}

}  // namespace detail

inline Quiver parse_quiver(const json& doc) {
  if (!doc.is_object()) throw parse_error("quiver document must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "n" && key != "edges" && key != "version")
      throw parse_error("unknown field '" + key + "'");
  if (doc.contains("version") && doc["version"] != graph_format_version)
    throw parse_error("unsupported graph format version");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw parse_error("'n' must be an integer");
  const auto n = doc["n"].get<long long>();
  if (n < 1) throw parse_error("'n' must be positive");
  Quiver q(static_cast<std::size_t>(n));
  if (!doc.contains("edges")) return q;
  if (!doc["edges"].is_array()) throw parse_error("'edges' must be a list");

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object()) throw parse_error("edge records must be objects");
    for (const auto& [key, _] : e.items())
      if (key != "from" && key != "to" && key != "count")
        throw parse_error("unknown edge field '" + key + "'");
    if (!e.contains("from") || !e.contains("to") || !e.contains("count"))
      throw parse_error("edge record needs 'from', 'to' and 'count'");
    const std::size_t from = detail::one_based(e["from"], q.vertex_count(), "from");
    const std::size_t to = detail::one_based(e["to"], q.vertex_count(), "to");
    const json& c = e["count"];
    if (c.is_string() && (c == "inf" || c == "infinity" || c == "∞"))
      throw parse_error("infinite multiplicities are not supported");
    if (!c.is_number_integer() || c.get<long long>() < 0)
      throw parse_error("'count' must be a nonnegative integer");
    if (!seen.emplace(to, from).second)
      throw parse_error("duplicate edge record (to " + std::to_string(to + 1) + ", from " +
                        std::to_string(from + 1) + ")");
    q.set_count(to, from, c.get<std::size_t>());
  }
  return q;
}

inline Quiver parse_quiver_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_quiver(doc);
}

inline Quiver parse_quiver_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quiver_text(ss.str());
}

inline json to_json(const Quiver& q) {
  json edges = json::array();
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    for (std::size_t j = 0; j < q.vertex_count(); ++j)
      if (q.count(i, j) > 0) edges.push_back({{"from", j + 1}, {"to", i + 1}, {"count", q.count(i, j)}});
  return {{"version", graph_format_version}, {"n", q.vertex_count()}, {"edges", edges}};
}

inline json matrix_json(const Quiver& q) { return q.matrix(); }

inline json to_json(const cvector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
  return out;
}

// Accepts [x, ...] of reals or [[re, im], ...].
inline cvector complex_vector_from_json(const json& doc) {
  if (!doc.is_array()) throw parse_error("complex vector must be a list");
  cvector v(static_cast<Eigen::Index>(doc.size()));
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const json& x = doc[k];
    if (x.is_number()) {
      v(static_cast<Eigen::Index>(k)) = x.get<double>();
    } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
      v(static_cast<Eigen::Index>(k)) = complex(x[0].get<double>(), x[1].get<double>());
    } else {
      throw parse_error("complex entries must be numbers or [re, im] pairs");
    }
  }
  return v;
}

inline json to_json(const CorrespondenceElement& xi) {
  json out = json::array();
  const Quiver& q = xi.quiver();
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    for (std::size_t j = 0; j < q.vertex_count(); ++j)
      if (q.count(i, j) > 0)
        out.push_back({{"to", i + 1}, {"from", j + 1}, {"vector", to_json(xi.block(i, j))}});
  return out;
}

inline CorrespondenceElement correspondence_from_json(const Quiver& q, const json& doc) {
  if (!doc.is_array()) throw parse_error("correspondence element must be a list of blocks");
  CorrespondenceElement xi(q);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& b : doc) {
    if (!b.is_object() || !b.contains("to") || !b.contains("from") || !b.contains("vector"))
      throw parse_error("block records need 'to', 'from' and 'vector'");
    const std::size_t to = detail::one_based(b["to"], q.vertex_count(), "to");
    const std::size_t from = detail::one_based(b["from"], q.vertex_count(), "from");
    if (!seen.emplace(to, from).second) throw parse_error("duplicate block record");
    xi.set_block(to, from, complex_vector_from_json(b["vector"]));
  }
  return xi;
}

}  // namespace quiver
