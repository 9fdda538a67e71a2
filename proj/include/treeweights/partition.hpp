#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treeweights/multigraph.hpp"
#include "treeweights/rational.hpp"

namespace treeweights {

// Disjoint non-empty blocks covering the vertex indices 0..n-1 of one graph.
// Block order is kept as given; contraction appends the merged singleton last.
class Partition {
 public:
  Partition() = default;

  Partition(std::size_t vertex_count, std::vector<std::vector<std::size_t>> blocks)
      : blocks_(std::move(blocks)), block_of_(vertex_count, kUnassigned) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b].empty()) fail(ErrorCode::EmptyBlock, "block " + std::to_string(b) + " is empty");
      for (std::size_t v : blocks_[b]) {
        if (v >= vertex_count) fail(ErrorCode::BadPartition, "vertex index out of range");
        if (block_of_[v] != kUnassigned) {
          fail(ErrorCode::DuplicateVertex, "vertex " + std::to_string(v) + " in two blocks");
        }
        block_of_[v] = b;
      }
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
      if (block_of_[v] == kUnassigned) {
        fail(ErrorCode::MissingVertex, "vertex " + std::to_string(v) + " in no block");
      }
    }
  }

  static Partition from_ids(const Multigraph& g, const std::vector<std::vector<std::string>>& blocks) {
    std::vector<std::vector<std::size_t>> idx;
    for (const auto& block : blocks) {
      auto& out = idx.emplace_back();
      for (const auto& id : block) out.push_back(g.vertex_index(id));
    }
    return Partition(g.vertex_count(), std::move(idx));
  }

  static Partition singletons(std::size_t vertex_count) {
    std::vector<std::vector<std::size_t>> blocks(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) blocks[v] = {v};
    return Partition(vertex_count, std::move(blocks));
  }

  static Partition trivial(std::size_t vertex_count) {
    std::vector<std::size_t> all(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) all[v] = v;
    return Partition(vertex_count, {std::move(all)});
  }

  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t vertex_count() const noexcept { return block_of_.size(); }
  std::size_t block_of(std::size_t v) const { return block_of_.at(v); }
  bool is_trivial() const noexcept { return blocks_.size() == 1; }
  bool same_block(std::size_t v, std::size_t w) const { return block_of_.at(v) == block_of_.at(w); }

  std::vector<std::vector<std::string>> block_ids(const Multigraph& g) const {
    std::vector<std::vector<std::string>> out;
    for (const auto& block : blocks_) {
      auto& ids = out.emplace_back();
      for (std::size_t v : block) ids.push_back(g.vertices().at(v));
    }
    return out;
  }

  // Same blocks regardless of block or member order.
  friend bool operator==(const Partition& x, const Partition& y) {
    if (x.vertex_count() != y.vertex_count() || x.block_count() != y.block_count()) return false;
    for (std::size_t v = 0; v < x.vertex_count(); ++v) {
      for (std::size_t w = v + 1; w < x.vertex_count(); ++w) {
        if (x.same_block(v, w) != y.same_block(v, w)) return false;
      }
    }
    return true;
  }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

// Every set partition of n vertices, via restricted growth strings; blocks are
// ordered by their smallest vertex.
inline std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  if (n == 0) return out;
  std::vector<std::size_t> rgs(n, 0);
  while (true) {
    std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<std::size_t>> b(blocks);
    for (std::size_t v = 0; v < n; ++v) b[rgs[v]].push_back(v);
    out.emplace_back(n, std::move(b));
    // Next restricted growth string: rgs[i] <= 1 + max(rgs[0..i-1]).
    std::size_t i = n - 1;
    while (i > 0) {
      std::size_t prefix_max = *std::max_element(rgs.begin(), rgs.begin() + static_cast<std::ptrdiff_t>(i));
      if (rgs[i] <= prefix_max) break;
      --i;
    }
    if (i == 0) break;
    ++rgs[i];
    std::fill(rgs.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs.end(), 0);
  }
  return out;
}

inline void check_partition(const Multigraph& g, const Partition& p) {
  if (p.vertex_count() != g.vertex_count()) {
    fail(ErrorCode::BadPartition, "partition covers " + std::to_string(p.vertex_count()) +
                                      " vertices, graph has " + std::to_string(g.vertex_count()));
  }
}

// Self-loops are never trans-block: both ends share a block.
inline bool is_trans_block(const Multigraph& g, const Partition& p, std::size_t edge) {
  check_partition(g, p);
  if (edge >= g.edge_count()) fail(ErrorCode::UnknownEdge, "edge index out of range");
  const auto& e = g.edges()[edge];
  return !p.same_block(e.a, e.b);
}

inline bool is_trans_block(const Multigraph& g, const Partition& p, std::string_view edge_id) {
  return is_trans_block(g, p, g.edge_index(edge_id));
}

// Counts edge ids, so each parallel edge contributes.
inline std::size_t trans_block_count(const Multigraph& g, const Partition& p) {
  check_partition(g, p);
  std::size_t k = 0;
  for (const auto& e : g.edges()) {
    if (!p.same_block(e.a, e.b)) ++k;
  }
  return k;
}

// Partition of the contracted graph given the vertex map produced by
// contract(g, edge): endpoints leave their blocks, emptied blocks vanish and
// the merged vertex forms a new singleton block at the end.
inline Partition contract_partition(const Partition& p, const Multigraph& g, std::size_t edge,
                                    const std::vector<std::size_t>& vertex_map) {
  if (!is_trans_block(g, p, edge)) {
    fail(ErrorCode::NotTransBlock, "edge '" + g.edges()[edge].id + "' is not trans-block");
  }
  const auto& e = g.edges()[edge];
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& block : p.blocks()) {
    std::vector<std::size_t> kept;
    for (std::size_t v : block) {
      if (v != e.a && v != e.b) kept.push_back(vertex_map[v]);
    }
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  blocks.push_back({vertex_map[e.a]});
  return Partition(g.vertex_count() - 1, std::move(blocks));
}

inline Partition contract_partition(const Partition& p, std::string_view edge_id, const Multigraph& g) {
  const std::size_t edge = g.edge_index(edge_id);
  if (!is_trans_block(g, p, edge)) fail(ErrorCode::NotTransBlock, "edge '" + std::string(edge_id) + "' is not trans-block");
  return contract_partition(p, g, edge, contract(g, edge).vertex_map);
}

// A spanning tree together with an order on its edges (indices into G_0).
struct OrderedTree {
  EdgeSet tree;
  std::vector<std::size_t> order;

  static OrderedTree from_order(std::vector<std::size_t> order) {
    OrderedTree t;
    t.tree = order;
    std::sort(t.tree.begin(), t.tree.end());
    t.order = std::move(order);
    return t;
  }

  static OrderedTree from_ids(const Multigraph& g, const std::vector<std::string>& ids) {
    std::vector<std::size_t> order;
    for (const auto& id : ids) order.push_back(g.edge_index(id));
    return from_order(std::move(order));
  }

  friend bool operator==(const OrderedTree&, const OrderedTree&) = default;
  friend auto operator<=>(const OrderedTree&, const OrderedTree&) = default;
};

struct TraceStep {
  Multigraph graph;                     // G_p
  Partition partition;                  // Pi_p
  std::vector<std::size_t> vertex_map;  // vertex of G_0 -> vertex of G_p
};

// The sequence {G_p, Pi_p} obtained by contracting the ordered edges one by one.
struct ContractionTrace {
  std::vector<TraceStep> steps;    // p = 0 .. number of contracted edges
  std::vector<std::size_t> order;  // contracted edge per step, as index into G_0
  std::vector<std::size_t> k;      // trans-block edge count of (G_p, Pi_p) before each contraction

  const Multigraph& original() const { return steps.front().graph; }
  std::size_t vertex_count() const { return original().vertex_count(); }
  std::size_t length() const noexcept { return order.size(); }
  EdgeSet tree() const {
    EdgeSet t = order;
    std::sort(t.begin(), t.end());
    return t;
  }
};

// Contracts `order` edge by edge; every edge must be trans-block at its step.
// Accepts any ordered forest; build_trace additionally demands a spanning tree.
inline ContractionTrace build_forest_trace(const Multigraph& g, const Partition& p,
                                           const std::vector<std::size_t>& order) {
  check_partition(g, p);
  ContractionTrace trace;
  std::vector<std::size_t> identity(g.vertex_count());
  for (std::size_t v = 0; v < identity.size(); ++v) identity[v] = v;
  trace.steps.push_back(TraceStep{g, p, std::move(identity)});
  trace.order.reserve(order.size());
  for (std::size_t step = 0; step < order.size(); ++step) {
    const TraceStep& cur = trace.steps.back();
    if (order[step] >= g.edge_count()) fail(ErrorCode::UnknownEdge, "edge index out of range");
    const std::string& id = g.edges()[order[step]].id;
    auto local = cur.graph.find_edge(id);
    if (!local) throw NotAdmissibleError(step, "edge '" + id + "' was already contracted");
    if (!is_trans_block(cur.graph, cur.partition, *local)) {
      throw NotAdmissibleError(step, "edge '" + id + "' is not trans-block");
    }
    trace.k.push_back(trans_block_count(cur.graph, cur.partition));
    Contraction c = contract(cur.graph, *local);
    Partition next = contract_partition(cur.partition, cur.graph, *local, c.vertex_map);
    std::vector<std::size_t> map(g.vertex_count());
    for (std::size_t v = 0; v < map.size(); ++v) map[v] = c.vertex_map[cur.vertex_map[v]];
    trace.order.push_back(order[step]);
    trace.steps.push_back(TraceStep{std::move(c.graph), std::move(next), std::move(map)});
  }
  return trace;
}

inline ContractionTrace build_trace(const Multigraph& g, const Partition& p, const OrderedTree& t) {
  require_connected(g);
  std::vector<std::size_t> sorted = t.order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != t.tree || !is_spanning_tree(g, t.tree)) {
    fail(ErrorCode::NotASpanningTree, "ordered edges do not form a spanning tree");
  }
  return build_forest_trace(g, p, t.order);
}

namespace detail {

// Contraction state over original vertex indices: reduced-vertex label per
// vertex and block label per reduced vertex. Used where full graph copies
// are not needed.
struct ReducedState {
  std::vector<std::size_t> label;        // original vertex -> reduced vertex label
  std::vector<std::size_t> block;        // reduced vertex label -> block label
  std::size_t next_block = 0;

  ReducedState(const Partition& p) : label(p.vertex_count()), block(p.vertex_count()) {
    for (std::size_t v = 0; v < p.vertex_count(); ++v) {
      label[v] = v;
      block[v] = p.block_of(v);
    }
    next_block = p.block_count();
  }

  bool trans_block(std::size_t a, std::size_t b) const { return block[label[a]] != block[label[b]]; }

  void contract(std::size_t a, std::size_t b) {
    const std::size_t la = label[a];
    const std::size_t lb = label[b];
    const std::size_t merged = block.size();
    block.push_back(next_block++);
    for (auto& l : label) {
      if (l == la || l == lb) l = merged;
    }
  }
};

}  // namespace detail

// Every ordering of `tree` that is trans-block for `p`, found by depth-first
// extension: only tree edges trans-block at the current step are tried.
// Non-tree edges of `g` are never consulted.
inline std::vector<OrderedTree> admissible_orderings(const Multigraph& g, const EdgeSet& tree,
                                                     const Partition& p) {
  check_partition(g, p);
  if (p.is_trivial()) fail(ErrorCode::TrivialPartition, "partition has a single block");
  if (!is_spanning_tree(g, tree)) fail(ErrorCode::NotASpanningTree, "edge set is not a spanning tree");

  std::vector<OrderedTree> out;
  std::vector<std::size_t> order;
  std::vector<bool> used(tree.size(), false);

  auto extend = [&](auto&& self, const detail::ReducedState& state) -> void {
    if (order.size() == tree.size()) {
      out.push_back(OrderedTree{tree, order});
      return;
    }
    for (std::size_t t = 0; t < tree.size(); ++t) {
      if (used[t]) continue;
      const auto& e = g.edges()[tree[t]];
      if (!state.trans_block(e.a, e.b)) continue;
      detail::ReducedState next = state;
      next.contract(e.a, e.b);
      used[t] = true;
      order.push_back(tree[t]);
      self(self, next);
      order.pop_back();
      used[t] = false;
    }
  };
  extend(extend, detail::ReducedState(p));
  return out;
}

struct ContactIndexPair {
  int i;  // first step at which the two vertices sit in different blocks
  int j;  // first step at which they are the same reduced vertex

  friend bool operator==(const ContactIndexPair&, const ContactIndexPair&) = default;
};

// Read off the trace's vertex maps; (-1, 0) when v == w.
inline ContactIndexPair contact_indices(const ContractionTrace& trace, std::size_t v, std::size_t w) {
  const std::size_t n = trace.vertex_count();
  if (v >= n || w >= n) fail(ErrorCode::UnknownVertex, "vertex index out of range");
  if (v == w) return {-1, 0};
  int first = -1;
  int second = -1;
  for (std::size_t p = 0; p < trace.steps.size(); ++p) {
    const auto& step = trace.steps[p];
    const std::size_t rv = step.vertex_map[v];
    const std::size_t rw = step.vertex_map[w];
    if (first < 0 && !step.partition.same_block(rv, rw)) first = static_cast<int>(p);
    if (rv == rw) {
      second = static_cast<int>(p);
      break;
    }
  }
  if (first < 0 || second < 0) {
    fail(ErrorCode::InvariantViolation, "contact indices need a complete trace");
  }
  return {first, second};
}

inline ContactIndexPair contact_indices(const ContractionTrace& trace, std::string_view v, std::string_view w) {
  return contact_indices(trace, trace.original().vertex_index(v), trace.original().vertex_index(w));
}

// Exponents of u_1 .. u_{|V|-1}; exponents[p-1] belongs to u_p.
struct Monomial {
  std::vector<unsigned> exponents;

  // Integral over the unit cube: prod 1/(e_p + 1).
  Rational integral() const {
    BigInt den = 1;
    for (unsigned e : exponents) den *= e + 1;
    return Rational(BigInt(1), den);
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Product of the tree factors (u_k for i < k < j) over tree edges and the
// contact-matrix entries (u_k for i < k <= j) over all other edges.
inline Monomial edge_monomials(const Multigraph& g, const ContractionTrace& trace) {
  const std::size_t n = g.vertex_count();
  if (trace.steps.empty() || trace.vertex_count() != n || trace.length() + 1 != n) {
    fail(ErrorCode::InvariantViolation, "trace does not cover a spanning tree of the graph");
  }
  Monomial m{std::vector<unsigned>(n - 1, 0)};
  std::vector<bool> in_tree(g.edge_count(), false);
  for (std::size_t e : trace.order) in_tree.at(e) = true;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    const auto [i, j] = contact_indices(trace, edge.a, edge.b);
    const int last = in_tree[e] ? j - 1 : j;
    for (int k = std::max(i + 1, 1); k <= last; ++k) ++m.exponents[static_cast<std::size_t>(k - 1)];
  }
  return m;
}

inline Rational k_product_weight(const ContractionTrace& trace) {
  BigInt den = 1;
  for (std::size_t k : trace.k) den *= k;
  return Rational(BigInt(1), den);
}

// prod 1/k_p, cross-checked against the integral of the edge monomial.
inline Rational ordered_weight(const Multigraph& g, const ContractionTrace& trace) {
  Rational by_k = k_product_weight(trace);
  Rational by_integral = edge_monomials(g, trace).integral();
  if (by_k != by_integral) {
    fail(ErrorCode::InvariantViolation, "k-product " + by_k.str() + " differs from monomial integral " +
                                            by_integral.str());
  }
  return by_k;
}

inline Rational ordered_weight(const Multigraph& g, const Partition& p, const OrderedTree& t) {
  return ordered_weight(g, build_trace(g, p, t));
}

struct OrderedContribution {
  std::vector<std::size_t> order;
  std::vector<std::size_t> k;
  Rational weight;
};

struct TreeWeight {
  EdgeSet tree;
  Rational weight;
  std::vector<OrderedContribution> orderings;
};

// Exact weight per spanning tree, ordered by edge set.
struct WeightReport {
  std::vector<TreeWeight> entries;

  Rational total() const {
    Rational sum;
    for (const auto& e : entries) sum += e.weight;
    return sum;
  }

  const TreeWeight* find(const EdgeSet& tree) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), tree,
                               [](const TreeWeight& e, const EdgeSet& t) { return e.tree < t; });
    return it != entries.end() && it->tree == tree ? &*it : nullptr;
  }

  std::size_t ordering_count() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.orderings.size();
    return n;
  }
};

inline TreeWeight tree_weight_detail(const Multigraph& g, const Partition& p, const EdgeSet& tree) {
  TreeWeight out{tree, Rational(0), {}};
  for (const auto& ordered : admissible_orderings(g, tree, p)) {
    ContractionTrace trace = build_trace(g, p, ordered);
    Rational w = ordered_weight(g, trace);
    out.weight += w;
    out.orderings.push_back({ordered.order, trace.k, std::move(w)});
  }
  return out;
}

inline Rational tree_weight(const Multigraph& g, const Partition& p, const EdgeSet& tree) {
  return tree_weight_detail(g, p, tree).weight;
}

inline WeightReport weight_distribution(const Multigraph& g, const Partition& p) {
  require_connected(g);
  check_partition(g, p);
  if (p.is_trivial()) fail(ErrorCode::TrivialPartition, "partition has a single block");
  WeightReport report;
  for (const auto& tree : spanning_trees(g)) report.entries.push_back(tree_weight_detail(g, p, tree));
  return report;
}

// Weights for the all-singletons partition. A single vertex has one empty
// tree of weight 1, matching the sector census.
inline WeightReport symmetric_via_partition(const Multigraph& g) {
  require_connected(g);
  if (g.vertex_count() == 1) {
    WeightReport report;
    report.entries.push_back({EdgeSet{}, Rational(1), {OrderedContribution{{}, {}, Rational(1)}}});
    return report;
  }
  return weight_distribution(g, Partition::singletons(g.vertex_count()));
}

}  // namespace treeweights
