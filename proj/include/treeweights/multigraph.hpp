#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "treeweights/error.hpp"
#include "treeweights/rational.hpp"
#include "treeweights/union_find.hpp"

namespace treeweights {

// Unvalidated graph as read from the outside world: plain string labels.
struct GraphDescription {
  struct EdgeSpec {
    std::string id;
    std::string u;
    std::string v;
  };
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
};

struct ValidationReport {
  std::vector<std::string> self_loops;
  // Each class lists ids of edges sharing one endpoint pair (self-loops excluded).
  std::vector<std::vector<std::string>> parallel_classes;
};

// Confirms unique ids and endpoint membership; classifies self-loops and
// parallel-edge classes. Throws DuplicateId or DanglingEndpoint.
inline ValidationReport validate(const GraphDescription& desc) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < desc.vertices.size(); ++i) {
    if (!index.emplace(desc.vertices[i], i).second) {
      fail(ErrorCode::DuplicateId, "vertex id '" + desc.vertices[i] + "' repeated");
    }
  }
  std::unordered_set<std::string_view> edge_ids;
  ValidationReport report;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> keyed;
  for (std::size_t i = 0; i < desc.edges.size(); ++i) {
    const auto& e = desc.edges[i];
    if (!edge_ids.insert(e.id).second) fail(ErrorCode::DuplicateId, "edge id '" + e.id + "' repeated");
    const auto a = index.find(e.u);
    const auto b = index.find(e.v);
    if (a == index.end() || b == index.end()) {
      fail(ErrorCode::DanglingEndpoint, "edge '" + e.id + "' references unknown vertex '" +
                                            (a == index.end() ? e.u : e.v) + "'");
    }
    if (a->second == b->second) {
      report.self_loops.push_back(e.id);
    } else {
      keyed.push_back({std::minmax(a->second, b->second), i});
    }
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
    if (j - i > 1) {
      std::vector<std::string> cls;
      for (std::size_t k = i; k < j; ++k) cls.push_back(desc.edges[keyed[k].second].id);
      report.parallel_classes.push_back(std::move(cls));
    }
    i = j;
  }
  return report;
}

struct Edge {
  std::string id;
  std::size_t a;  // a <= b; endpoint order carries no meaning
  std::size_t b;

  bool is_self_loop() const noexcept { return a == b; }
};

// Sorted indices into Multigraph::edges().
using EdgeSet = std::vector<std::size_t>;

// Immutable labeled multigraph. Ids are strings externally and dense indices
// internally; self-loops and parallel edges are kept as given.
class Multigraph {
 public:
  Multigraph() = default;

  explicit Multigraph(const GraphDescription& desc) {
    validate(desc);
    vertices_ = desc.vertices;
    for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_index_.emplace(vertices_[i], i);
    edges_.reserve(desc.edges.size());
    for (const auto& e : desc.edges) {
      auto [a, b] = std::minmax(vertex_index_.at(e.u), vertex_index_.at(e.v));
      edge_index_.emplace(e.id, edges_.size());
      edges_.push_back(Edge{e.id, a, b});
    }
  }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<std::size_t> find_vertex(std::string_view id) const {
    auto it = vertex_index_.find(std::string(id));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_edge(std::string_view id) const {
    auto it = edge_index_.find(std::string(id));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t vertex_index(std::string_view id) const {
    if (auto i = find_vertex(id)) return *i;
    fail(ErrorCode::UnknownVertex, "no vertex '" + std::string(id) + "'");
  }
  std::size_t edge_index(std::string_view id) const {
    if (auto i = find_edge(id)) return *i;
    fail(ErrorCode::UnknownEdge, "no edge '" + std::string(id) + "'");
  }

  GraphDescription description() const {
    GraphDescription d;
    d.vertices = vertices_;
    for (const auto& e : edges_) d.edges.push_back({e.id, vertices_[e.a], vertices_[e.b]});
    return d;
  }

  friend bool operator==(const Multigraph& x, const Multigraph& y) {
    if (x.vertices_ != y.vertices_ || x.edges_.size() != y.edges_.size()) return false;
    for (std::size_t i = 0; i < x.edges_.size(); ++i) {
      const auto& p = x.edges_[i];
      const auto& q = y.edges_[i];
      if (p.id != q.id || p.a != q.a || p.b != q.b) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
};

// The edges of `g` restricted to `keep`, on the full vertex set.
inline Multigraph edge_subgraph(const Multigraph& g, const EdgeSet& keep) {
  GraphDescription d;
  d.vertices = g.vertices();
  for (std::size_t e : keep) {
    const auto& edge = g.edges().at(e);
    d.edges.push_back({edge.id, g.vertices()[edge.a], g.vertices()[edge.b]});
  }
  return Multigraph(d);
}

inline std::vector<std::string> edge_ids(const Multigraph& g, const EdgeSet& set) {
  std::vector<std::string> ids;
  ids.reserve(set.size());
  for (std::size_t e : set) ids.push_back(g.edges().at(e).id);
  return ids;
}

// Looks up ids and returns them as a sorted index set.
inline EdgeSet edge_set(const Multigraph& g, const std::vector<std::string>& ids) {
  EdgeSet set;
  set.reserve(ids.size());
  for (const auto& id : ids) set.push_back(g.edge_index(id));
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
    fail(ErrorCode::DuplicateId, "edge listed twice in edge set");
  }
  return set;
}

// The empty graph counts as disconnected; a single vertex is connected.
inline bool is_connected(const Multigraph& g) {
  if (g.vertex_count() == 0) return false;
  if (g.vertex_count() == 1) return true;
  detail::UnionFind uf(g.vertex_count());
  for (const auto& e : g.edges()) uf.unite(e.a, e.b);
  return uf.components() == 1;
}

inline void require_connected(const Multigraph& g) {
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
}

// |V|-1 edges, no cycle (self-loops count as cycles), every vertex reached.
inline bool is_spanning_tree(const Multigraph& g, const EdgeSet& set) {
  if (g.vertex_count() == 0 || set.size() != g.vertex_count() - 1) return false;
  detail::UnionFind uf(g.vertex_count());
  for (std::size_t e : set) {
    if (e >= g.edge_count()) return false;
    if (!uf.unite(g.edges()[e].a, g.edges()[e].b)) return false;
  }
  return uf.components() == 1;
}

struct Contraction {
  Multigraph graph;
  // old vertex index -> vertex index in `graph`
  std::vector<std::size_t> vertex_map;
};

// Deterministic id for the vertex produced by merging `x` and `y`.
inline std::string merged_vertex_id(const Multigraph& g, std::string_view x, std::string_view y) {
  auto [lo, hi] = std::minmax(x, y);
  std::string id = std::string(lo) + "+" + std::string(hi);
  while (g.find_vertex(id)) id += "'";
  return id;
}

// Merges the endpoints of `edge` into a fresh vertex appended last and drops
// the edge; its parallels turn into self-loops.
inline Contraction contract(const Multigraph& g, std::size_t edge) {
  if (edge >= g.edge_count()) fail(ErrorCode::UnknownEdge, "edge index out of range");
  const Edge& target = g.edges()[edge];
  if (target.is_self_loop()) {
    fail(ErrorCode::SelfLoopContraction, "edge '" + target.id + "' is a self-loop");
  }
  Contraction out;
  out.vertex_map.resize(g.vertex_count());
  GraphDescription d;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (v == target.a || v == target.b) continue;
    out.vertex_map[v] = d.vertices.size();
    d.vertices.push_back(g.vertices()[v]);
  }
  const std::size_t merged = d.vertices.size();
  out.vertex_map[target.a] = merged;
  out.vertex_map[target.b] = merged;
  d.vertices.push_back(merged_vertex_id(g, g.vertices()[target.a], g.vertices()[target.b]));
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (i == edge) continue;
    const auto& e = g.edges()[i];
    d.edges.push_back({e.id, d.vertices[out.vertex_map[e.a]], d.vertices[out.vertex_map[e.b]]});
  }
  out.graph = Multigraph(d);
  return out;
}

inline Contraction contract(const Multigraph& g, std::string_view edge_id) {
  return contract(g, g.edge_index(edge_id));
}

// All spanning trees, each a sorted edge-index set, in lexicographic order.
// Branches include/exclude over the edge list; an edge is only included when
// it joins two components, and a branch is cut once too few edges remain.
inline std::vector<EdgeSet> spanning_trees(const Multigraph& g) {
  require_connected(g);
  const std::size_t n = g.vertex_count();
  const std::size_t need = n - 1;
  std::vector<EdgeSet> out;
  EdgeSet current;
  std::vector<std::size_t> comp(n);

  auto recurse = [&](auto&& self, std::size_t next) -> void {
    if (current.size() == need) {
      out.push_back(current);
      return;
    }
    if (current.size() + (g.edge_count() - next) < need) return;
    const auto& e = g.edges()[next];
    const std::size_t ca = comp[e.a];
    const std::size_t cb = comp[e.b];
    if (ca != cb) {
      std::vector<std::size_t> saved = comp;
      for (auto& c : comp) {
        if (c == cb) c = ca;
      }
      current.push_back(next);
      self(self, next + 1);
      current.pop_back();
      comp = std::move(saved);
    }
    self(self, next + 1);
  };

  for (std::size_t v = 0; v < n; ++v) comp[v] = v;
  recurse(recurse, 0);
  return out;
}

// Number of spanning trees via the matrix-tree theorem: determinant of a
// reduced Laplacian, computed with fraction-free Bareiss elimination.
inline BigInt complexity(const Multigraph& g) {
  require_connected(g);
  const std::size_t n = g.vertex_count();
  if (n <= 1) return 1;
  const std::size_t m = n - 1;  // drop the last row and column
  std::vector<std::vector<BigInt>> lap(m, std::vector<BigInt>(m, 0));
  for (const auto& e : g.edges()) {
    if (e.is_self_loop()) continue;
    if (e.a < m) lap[e.a][e.a] += 1;
    if (e.b < m) lap[e.b][e.b] += 1;
    if (e.a < m && e.b < m) {
      lap[e.a][e.b] -= 1;
      lap[e.b][e.a] -= 1;
    }
  }
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (lap[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < m && lap[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == m) return 0;
      std::swap(lap[k], lap[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        lap[i][j] = (lap[i][j] * lap[k][k] - lap[i][k] * lap[k][j]) / prev;
      }
    }
    prev = lap[k][k];
  }
  return sign * lap[m - 1][m - 1];
}

}  // namespace treeweights
