#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "treeweights/multigraph.hpp"
#include "treeweights/partition.hpp"

namespace treeweights {

using json = nlohmann::json;

namespace detail {

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

inline const json& require_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorCode::ParseError, where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline std::string require_string(const json& value, const std::string& where) {
  if (!value.is_string()) fail(ErrorCode::ParseError, where + ": expected a string");
  return value.get<std::string>();
}

}  // namespace detail

// {"vertices": [...], "edges": [{"id": "l1", "ends": ["v1", "v2"]}, ...]}
inline Multigraph graph_from_json(const json& doc) {
  GraphDescription d;
  const json& vertices = detail::require_field(doc, "vertices", "graph");
  if (!vertices.is_array()) fail(ErrorCode::ParseError, "vertices: expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    d.vertices.push_back(detail::require_string(vertices[i], "vertices[" + std::to_string(i) + "]"));
  }
  const json& edges = detail::require_field(doc, "edges", "graph");
  if (!edges.is_array()) fail(ErrorCode::ParseError, "edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& id = detail::require_field(edges[i], "id", where);
    const json& ends = detail::require_field(edges[i], "ends", where);
    if (!ends.is_array() || ends.size() != 2) fail(ErrorCode::ParseError, where + ".ends: expected two vertex ids");
    d.edges.push_back({detail::require_string(id, where + ".id"), detail::require_string(ends[0], where + ".ends[0]"),
                       detail::require_string(ends[1], where + ".ends[1]")});
  }
  try {
    return Multigraph(d);
  } catch (const Error& e) {
    // Surface validation failures as parse errors of the document.
    if (e.code() == ErrorCode::DanglingEndpoint || e.code() == ErrorCode::DuplicateId) {
      fail(ErrorCode::ParseError, e.what());
    }
    throw;
  }
}

inline Multigraph parse_graph_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, "line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  }
  return graph_from_json(doc);
}

inline Multigraph parse_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_graph_text(buffer.str());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) fail(ErrorCode::ParseError, path + ": " + e.what());
    throw;
  }
}

inline json graph_to_json(const Multigraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id}, {"ends", {g.vertices()[e.a], g.vertices()[e.b]}}});
  }
  return {{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

// "v1|v2|v3,v4": blocks split on '|', members on ','; whitespace ignored.
inline Partition parse_partition(std::string_view spec, const Multigraph& g) {
  std::string compact;
  for (char c : spec) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<bool> seen(g.vertex_count(), false);
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = compact.find('|', start);
    const std::string block = compact.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
    auto& members = blocks.emplace_back();
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = block.find(',', pos);
      const std::string id = block.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (id.empty()) fail(ErrorCode::EmptyBlock, "empty block or member in '" + std::string(spec) + "'");
      auto v = g.find_vertex(id);
      if (!v) fail(ErrorCode::UnknownVertex, "partition names unknown vertex '" + id + "'");
      if (seen[*v]) fail(ErrorCode::DuplicateVertex, "vertex '" + id + "' appears twice in partition");
      seen[*v] = true;
      members.push_back(*v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!seen[v]) fail(ErrorCode::MissingVertex, "vertex '" + g.vertices()[v] + "' is in no block");
  }
  return Partition(g.vertex_count(), std::move(blocks));
}

inline std::string format_partition(const Partition& p, const Multigraph& g) {
  std::string out;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    if (b > 0) out += '|';
    for (std::size_t i = 0; i < p.blocks()[b].size(); ++i) {
      if (i > 0) out += ',';
      out += g.vertices().at(p.blocks()[b][i]);
    }
  }
  return out;
}

// Six significant digits, presentation only.
inline std::string format_decimal(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", r.to_double());
  return buf;
}

}  // namespace treeweights
