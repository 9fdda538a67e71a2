#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "treeweights/multigraph.hpp"
#include "treeweights/rational.hpp"

namespace treeweights {

// A total order of every edge of a graph, as edge indices.
struct HeppSector {
  std::vector<std::size_t> order;

  static HeppSector from_ids(const Multigraph& g, const std::vector<std::string>& ids) {
    HeppSector s;
    for (const auto& id : ids) {
      auto e = g.find_edge(id);
      if (!e) fail(ErrorCode::MalformedSector, "unknown edge '" + id + "' in sector");
      s.order.push_back(*e);
    }
    return s;
  }
};

inline void check_sector(const Multigraph& g, const HeppSector& sector) {
  if (sector.order.size() != g.edge_count()) {
    fail(ErrorCode::MalformedSector, "sector lists " + std::to_string(sector.order.size()) +
                                         " edges, graph has " + std::to_string(g.edge_count()));
  }
  std::vector<bool> seen(g.edge_count(), false);
  for (std::size_t e : sector.order) {
    if (e >= g.edge_count() || seen[e]) fail(ErrorCode::MalformedSector, "sector is not a permutation");
    seen[e] = true;
  }
}

// Kruskal acceptance order: the greedy tree's edges in the order they were kept.
inline std::vector<std::size_t> induced_ordering(const Multigraph& g, const HeppSector& sector) {
  require_connected(g);
  check_sector(g, sector);
  detail::UnionFind uf(g.vertex_count());
  std::vector<std::size_t> accepted;
  for (std::size_t e : sector.order) {
    if (accepted.size() + 1 >= g.vertex_count()) break;
    const auto& edge = g.edges()[e];
    if (uf.unite(edge.a, edge.b)) accepted.push_back(e);
  }
  return accepted;
}

inline EdgeSet leading_tree(const Multigraph& g, const HeppSector& sector) {
  EdgeSet tree = induced_ordering(g, sector);
  std::sort(tree.begin(), tree.end());
  return tree;
}

struct SectorCensus {
  std::map<EdgeSet, std::uint64_t> counts;
  std::uint64_t total = 0;

  Rational weight(const EdgeSet& tree) const {
    auto it = counts.find(tree);
    const std::uint64_t c = it == counts.end() ? 0 : it->second;
    return Rational(BigInt(c), BigInt(total));
  }

  void merge(const SectorCensus& other) {
    for (const auto& [tree, c] : other.counts) counts[tree] += c;
    total += other.total;
  }
};

struct CensusOptions {
  // Largest |E| for which all |E|! sectors are enumerated.
  std::size_t guard = 10;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

// Beyond this |E|! no longer fits the 64-bit counters.
inline constexpr std::size_t kMaxCensusEdges = 20;

namespace detail {

// Counts leading trees over every sector whose first edge is `first`; the
// remaining edges run through all permutations in lexicographic order.
inline void census_chunk(const Multigraph& g, std::size_t first,
                         std::unordered_map<std::uint64_t, std::uint64_t>& counts) {
  const std::size_t m = g.edge_count();
  const std::size_t need = g.vertex_count() - 1;
  std::vector<std::size_t> perm;
  perm.reserve(m);
  perm.push_back(first);
  for (std::size_t e = 0; e < m; ++e) {
    if (e != first) perm.push_back(e);
  }
  std::vector<std::pair<std::size_t, std::size_t>> ends(m);
  for (std::size_t e = 0; e < m; ++e) ends[e] = {g.edges()[e].a, g.edges()[e].b};
  UnionFind uf(g.vertex_count());
  do {
    uf.reset();
    std::uint64_t mask = 0;
    std::size_t kept = 0;
    for (std::size_t pos = 0; pos < m && kept < need; ++pos) {
      const auto [a, b] = ends[perm[pos]];
      if (uf.unite(a, b)) {
        mask |= std::uint64_t{1} << perm[pos];
        ++kept;
      }
    }
    ++counts[mask];
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

inline EdgeSet mask_to_set(std::uint64_t mask) {
  EdgeSet set;
  for (std::size_t e = 0; mask != 0; ++e, mask >>= 1) {
    if (mask & 1U) set.push_back(e);
  }
  return set;
}

}  // namespace detail

// Streams all |E|! Hepp sectors and tallies each leading tree. Chunks keyed
// by the first edge are independent and merged by exact integer addition.
inline SectorCensus sector_census(const Multigraph& g, const CensusOptions& options = {}) {
  require_connected(g);
  const std::size_t m = g.edge_count();
  if (m > options.guard || m > kMaxCensusEdges) {
    fail(ErrorCode::EnumerationGuardExceeded,
         std::to_string(m) + " edges exceeds the enumeration guard of " +
             std::to_string(std::min(options.guard, kMaxCensusEdges)));
  }
  SectorCensus census;
  if (m == 0) {
    census.counts[EdgeSet{}] = 1;
    census.total = 1;
    return census;
  }

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::clamp<unsigned>(threads, 1U, static_cast<unsigned>(m));

  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> partial(threads);
  auto work = [&](unsigned worker) {
    for (std::size_t first = worker; first < m; first += threads) {
      detail::census_chunk(g, first, partial[worker]);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  for (const auto& part : partial) {
    for (const auto& [mask, c] : part) {
      census.counts[detail::mask_to_set(mask)] += c;
      census.total += c;
    }
  }
  return census;
}

inline Rational symmetric_weight(const Multigraph& g, const SectorCensus& census, const EdgeSet& tree) {
  if (!is_spanning_tree(g, tree)) fail(ErrorCode::NotASpanningTree, "edge set is not a spanning tree");
  return census.weight(tree);
}

inline Rational symmetric_weight(const Multigraph& g, const EdgeSet& tree,
                                 const CensusOptions& options = {}) {
  require_connected(g);
  if (!is_spanning_tree(g, tree)) fail(ErrorCode::NotASpanningTree, "edge set is not a spanning tree");
  return sector_census(g, options).weight(tree);
}

}  // namespace treeweights
