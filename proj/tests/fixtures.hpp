#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "treeweights/multigraph.hpp"

namespace treeweights::testing {

inline Multigraph make_graph(std::vector<std::string> vertices,
                             std::vector<GraphDescription::EdgeSpec> edges) {
  return Multigraph(GraphDescription{std::move(vertices), std::move(edges)});
}

// Three vertices, l3 and l4 parallel.
inline Multigraph triangle() {
  return make_graph({"v1", "v2", "v3"},
                    {{"l1", "v1", "v2"}, {"l2", "v1", "v3"}, {"l3", "v2", "v3"}, {"l4", "v2", "v3"}});
}

// Four vertices, l3 and l4 parallel.
inline Multigraph kite() {
  return make_graph({"v1", "v2", "v3", "v4"}, {{"l1", "v1", "v2"},
                                               {"l2", "v2", "v3"},
                                               {"l3", "v1", "v3"},
                                               {"l4", "v1", "v3"},
                                               {"l5", "v1", "v4"},
                                               {"l6", "v3", "v4"}});
}

inline Multigraph single_edge() { return make_graph({"v1", "v2"}, {{"l1", "v1", "v2"}}); }

inline Multigraph double_edge() { return make_graph({"v1", "v2"}, {{"l1", "v1", "v2"}, {"l2", "v1", "v2"}}); }

inline Multigraph lone_loop() { return make_graph({"v1"}, {{"l1", "v1", "v1"}}); }

// Connected multigraph with 1..max_vertices vertices and at most max_edges
// edges; a random spanning tree first, then arbitrary extra edges including
// self-loops and parallels. Edge ids are shuffled relative to structure.
inline Multigraph random_connected(std::mt19937& rng, std::size_t max_vertices, std::size_t max_edges,
                                   std::size_t min_vertices = 1) {
  std::uniform_int_distribution<std::size_t> nv(min_vertices, max_vertices);
  const std::size_t n = nv(rng);
  std::uniform_int_distribution<std::size_t> ne(n - 1, std::max(n - 1, max_edges));
  const std::size_t m = std::max<std::size_t>(ne(rng), n == 1 ? 0 : n - 1);
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < n; ++v) vertices.push_back("v" + std::to_string(v + 1));
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    ends.push_back({parent(rng), v});
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  while (ends.size() < m) ends.push_back({any(rng), any(rng)});
  std::shuffle(ends.begin(), ends.end(), rng);
  std::vector<GraphDescription::EdgeSpec> edges;
  for (std::size_t e = 0; e < ends.size(); ++e) {
    edges.push_back({"e" + std::to_string(e + 1), vertices[ends[e].first], vertices[ends[e].second]});
  }
  std::vector<std::string> shuffled = vertices;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  return make_graph(std::move(shuffled), std::move(edges));
}

// Same graph with vertex ids renamed through `rename` and the vertex list
// shuffled, so internal indices change too (edge order kept).
template <typename Rename>
Multigraph relabel(const Multigraph& g, Rename rename, std::mt19937& rng) {
  GraphDescription d = g.description();
  for (auto& v : d.vertices) v = rename(v);
  std::shuffle(d.vertices.begin(), d.vertices.end(), rng);
  for (auto& e : d.edges) {
    e.u = rename(e.u);
    e.v = rename(e.v);
  }
  return Multigraph(d);
}

}  // namespace treeweights::testing
