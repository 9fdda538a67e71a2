// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "treeweights/io.hpp"
#include "treeweights/partition.hpp"
#include "treeweights/psd.hpp"
#include "treeweights/sectors.hpp"

namespace tw = treeweights;
using tw::EdgeSet;
using tw::Multigraph;
using tw::OrderedTree;
using tw::Partition;
using tw::Rational;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

// Collects failures for one criterion; `check` records the first few.
class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (messages_.size() < 5) messages_.push_back(what);
    }
  }
  bool passed() const { return failures_ == 0 && checks_ > 0; }
  std::size_t checks() const { return checks_; }
  std::string summary() const {
    std::string s;
    for (const auto& m : messages_) s += "\n      " + m;
    return s;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

// Exponent law and dual weight routes (criterion 6) plus contact-index order
// (criterion 8) on one admissible trace.
struct TraceAudit {
  Criterion exponent_law;
  Criterion contact_order;
  std::size_t traces = 0;

  void audit(const Multigraph& g, const tw::ContractionTrace& t) {
    ++traces;
    const tw::Monomial m = tw::edge_monomials(g, t);
    bool law = m.exponents.size() == t.k.size();
    for (std::size_t p = 0; law && p < m.exponents.size(); ++p) law = m.exponents[p] + 1 == t.k[p];
    exponent_law.check(law, "exponent law broken on order " + describe(g, t.order));
    exponent_law.check(m.integral() == tw::k_product_weight(t),
                       "weight routes differ on order " + describe(g, t.order));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      contact_order.check(tw::contact_indices(t, v, v) == tw::ContactIndexPair{-1, 0}, "v = v' convention");
      for (std::size_t w = v + 1; w < g.vertex_count(); ++w) {
        const auto c = tw::contact_indices(t, v, w);
        contact_order.check(c.i < c.j && c.i >= 0, "i < j violated on order " + describe(g, t.order));
      }
    }
  }

  void audit_report(const Multigraph& g, const Partition& p, const tw::WeightReport& r) {
    for (const auto& entry : r.entries) {
      for (const auto& o : entry.orderings) audit(g, tw::build_trace(g, p, OrderedTree{entry.tree, o.order}));
    }
  }

  static std::string describe(const Multigraph& g, const std::vector<std::size_t>& order) {
    std::string s;
    for (const auto& id : tw::edge_ids(g, order)) s += (s.empty() ? "" : " ") + id;
    return "(" + s + ")";
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int number, const std::string& title, const Criterion& c, const std::string& detail) {
  std::printf("[%s] AC%d %s: %s (%zu checks)%s\n", c.passed() ? "PASS" : "FAIL", number, title.c_str(),
              detail.c_str(), c.checks(), c.summary().c_str());
  if (!c.passed()) ++failures;
}

std::vector<Multigraph> random_graphs(std::uint32_t seed, std::size_t count, std::size_t max_v, std::size_t max_e) {
  std::mt19937 rng(seed);
  std::vector<Multigraph> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(tw::testing::random_connected(rng, max_v, max_e, 2));
  return out;
}

template <typename F>
void guarded(Criterion& c, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  TraceAudit audit;
  const Multigraph triangle = tw::testing::triangle();
  const Multigraph kite = tw::testing::kite();
  const Partition kite_pi = tw::parse_partition("v1|v2|v3,v4", kite);
  const Partition pi1 = tw::parse_partition("v1|v2,v3", triangle);
  const Partition pi2 = tw::parse_partition("v2|v1,v3", triangle);

  // 1. Symmetric weights of kite by sector census.
  {
    Criterion c;
    double elapsed = 0;
    guarded(c, [&] {
      const auto start = Clock::now();
      const tw::SectorCensus census = tw::sector_census(kite);
      elapsed = seconds_since(start);
      c.check(census.total == 720, "total sectors " + std::to_string(census.total));
      const std::vector<std::vector<std::string>> special = {
          {"l1", "l2", "l5"}, {"l1", "l2", "l6"}, {"l1", "l5", "l6"}, {"l2", "l5", "l6"}};
      std::size_t sixteenths = 0, others = 0;
      for (const auto& tree : tw::spanning_trees(kite)) {
        const bool is_special = std::find(special.begin(), special.end(), tw::edge_ids(kite, tree)) != special.end();
        const Rational w = census.weight(tree);
        c.check(w == (is_special ? q("1/15") : q("11/120")), "weight " + w.str());
        (is_special ? sixteenths : others) += 1;
      }
      c.check(sixteenths == 4 && others == 8, "tree classes 4 + 8");
      c.check(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
    });
    char detail[96];
    std::snprintf(detail, sizeof detail, "720 sectors, 1/15 x4 and 11/120 x8, %.3f s", elapsed);
    report(1, "kite symmetric weights", c, detail);
  }

  // 2. Partition weights of kite for [{v1};{v2};{v3,v4}].
  {
    Criterion c;
    double elapsed = 0;
    guarded(c, [&] {
      const auto start = Clock::now();
      const tw::WeightReport r = tw::weight_distribution(kite, kite_pi);
      elapsed = seconds_since(start);
      const std::vector<std::pair<std::vector<std::string>, const char*>> expected = {
          {{"l1", "l3", "l5"}, "47/400"}, {{"l1", "l4", "l5"}, "47/400"}, {{"l2", "l3", "l5"}, "11/100"},
          {{"l2", "l4", "l5"}, "11/100"}, {{"l2", "l3", "l6"}, "2/25"},   {{"l2", "l4", "l6"}, "2/25"},
          {{"l1", "l3", "l6"}, "3/40"},   {{"l1", "l4", "l6"}, "3/40"},   {{"l2", "l5", "l6"}, "1/20"},
          {{"l1", "l2", "l6"}, "11/200"}, {{"l1", "l2", "l5"}, "7/80"},   {{"l1", "l5", "l6"}, "17/400"}};
      c.check(r.entries.size() == expected.size(), "tree count");
      for (const auto& [tree, w] : expected) {
        const tw::TreeWeight* e = r.find(tw::edge_set(kite, tree));
        c.check(e && e->weight == q(w), "weight of " + tree[0] + tree[1] + tree[2]);
      }
      c.check(r.total() == Rational(1), "sum " + r.total().str());

      const tw::TreeWeight* t125 = r.find(tw::edge_set(kite, {"l1", "l2", "l5"}));
      std::vector<Rational> parts;
      for (const auto& o : t125->orderings) parts.push_back(o.weight);
      std::sort(parts.begin(), parts.end());
      std::vector<Rational> want = {q("1/40"), q("1/80"), q("1/50"), q("1/100"), q("1/100"), q("1/100")};
      std::sort(want.begin(), want.end());
      c.check(parts == want, "T125 breakdown");

      const std::vector<std::pair<std::vector<std::vector<std::string>>, std::size_t>> groups = {
          {{{"l1", "l2", "l5"}, {"l1", "l3", "l5"}, {"l1", "l4", "l5"}, {"l2", "l3", "l5"}, {"l2", "l4", "l5"}}, 6},
          {{{"l2", "l3", "l6"}, {"l2", "l4", "l6"}, {"l2", "l5", "l6"}}, 4},
          {{{"l1", "l2", "l6"}, {"l1", "l3", "l6"}, {"l1", "l4", "l6"}, {"l1", "l5", "l6"}}, 3}};
      for (const auto& [trees, count] : groups) {
        for (const auto& t : trees) {
          c.check(r.find(tw::edge_set(kite, t))->orderings.size() == count, "ordering count of " + t[0] + t[1] + t[2]);
        }
      }
      c.check(r.ordering_count() == 54, "54 ordered trees");
      c.check(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
      audit.audit_report(kite, kite_pi, r);
    });
    char detail[96];
    std::snprintf(detail, sizeof detail, "reference table exact, 54 ordered trees, %.3f s", elapsed);
    report(2, "kite partition weights", c, detail);
  }

  // 3. Rooted weights on triangle.
  {
    Criterion c;
    guarded(c, [&] {
      auto ordered = [&](const Partition& p, std::vector<std::string> ids) {
        return tw::ordered_weight(triangle, p, OrderedTree::from_ids(triangle, ids));
      };
      for (auto ids : std::vector<std::vector<std::string>>{
               {"l1", "l2"}, {"l2", "l1"}, {"l1", "l3"}, {"l1", "l4"}, {"l2", "l3"}, {"l2", "l4"}}) {
        c.check(ordered(pi1, ids) == q("1/6"), "Pi1 ordered weight");
      }
      const tw::WeightReport r1 = tw::weight_distribution(triangle, pi1);
      c.check(r1.ordering_count() == 6, "Pi1 has 6 ordered trees");
      c.check(r1.total() == Rational(1), "Pi1 sum");
      audit.audit_report(triangle, pi1, r1);

      for (auto ids : std::vector<std::vector<std::string>>{{"l1", "l2"}, {"l1", "l3"}, {"l1", "l4"}}) {
        c.check(ordered(pi2, ids) == q("1/9"), "Pi2 ordered weight 1/9");
      }
      for (auto ids : std::vector<std::vector<std::string>>{{"l3", "l1"}, {"l4", "l1"}, {"l3", "l2"}, {"l4", "l2"}}) {
        c.check(ordered(pi2, ids) == q("1/6"), "Pi2 ordered weight 1/6");
      }
      const tw::WeightReport r2 = tw::weight_distribution(triangle, pi2);
      c.check(r2.ordering_count() == 7, "Pi2 has 7 ordered trees");
      c.check(r2.total() == Rational(1), "Pi2 sum");
      audit.audit_report(triangle, pi2, r2);
    });
    report(3, "triangle rooted weights", c, "Pi1: 6 ordered trees at 1/6; Pi2: 3 at 1/9, 4 at 1/6; both sum to 1");
  }

  // 4. Sector census equals the all-singletons partition on random graphs.
  {
    Criterion c;
    double elapsed = 0;
    std::size_t self_loops = 0, parallels = 0;
    guarded(c, [&] {
      const auto start = Clock::now();
      std::mt19937 rng(4);
      for (int i = 0; i < 100; ++i) {
        const Multigraph g = tw::testing::random_connected(rng, 4, 7);
        const auto v = tw::validate(g.description());
        self_loops += v.self_loops.size();
        parallels += v.parallel_classes.size();
        const tw::SectorCensus census = tw::sector_census(g);
        const tw::WeightReport r = tw::symmetric_via_partition(g);
        c.check(r.entries.size() == census.counts.size(), "tree sets differ");
        for (const auto& e : r.entries) c.check(e.weight == census.weight(e.tree), "weight mismatch");
        if (g.vertex_count() >= 2) audit.audit_report(g, Partition::singletons(g.vertex_count()), r);
      }
      elapsed = seconds_since(start);
      c.check(elapsed < 120.0, "runtime " + std::to_string(elapsed) + " s");
    });
    char detail[128];
    std::snprintf(detail, sizeof detail, "100 graphs (%zu self-loops, %zu parallel classes), %.2f s", self_loops,
                  parallels, elapsed);
    report(4, "census = all-singletons partition", c, detail);
  }

  // 5. Normalization over partitions on random graphs.
  {
    Criterion c;
    std::size_t partitions_checked = 0;
    guarded(c, [&] {
      std::mt19937 rng(5);
      for (const Multigraph& g : random_graphs(55, 100, 5, 8)) {
        std::vector<Partition> candidates;
        for (auto& p : tw::all_partitions(g.vertex_count())) {
          if (!p.is_trivial()) candidates.push_back(std::move(p));
        }
        // Bell count includes the trivial partition.
        if (candidates.size() + 1 > 50) {
          std::shuffle(candidates.begin(), candidates.end(), rng);
          candidates.resize(50);
        }
        for (const auto& p : candidates) {
          const tw::WeightReport r = tw::weight_distribution(g, p);
          c.check(r.total() == Rational(1), "sum " + r.total().str());
          audit.audit_report(g, p, r);
          ++partitions_checked;
        }
      }
    });
    report(5, "normalization", c, "100 graphs, " + std::to_string(partitions_checked) + " partitions, all sum to 1/1");
  }

  // 7. Positivity of contact matrices on the fixture traces.
  Criterion psd;
  std::size_t psd_traces = 0;
  double worst_eig = 1.0, worst_disc = 0.0;
  guarded(psd, [&] {
    const std::vector<std::pair<const Multigraph*, Partition>> cases = {
        {&triangle, pi1}, {&triangle, pi2}, {&kite, kite_pi}, {&kite, Partition::singletons(4)}};
    std::uint64_t seed = 2024;
    for (const auto& [g, p] : cases) {
      const tw::PsdReport r = tw::verify_constructive(*g, p, 20, 1e-10, seed++);
      psd.check(r.max_discrepancy <= 1e-12, "discrepancy " + std::to_string(r.max_discrepancy));
      psd.check(r.min_eigenvalue >= -1e-10, "eigenvalue " + std::to_string(r.min_eigenvalue));
      for (const auto& t : r.traces) {
        psd.check(t.unit_diagonal, "diagonal not exactly 1");
        psd.check(t.endpoints_exact, "endpoint matrices not exact");
        psd.check(t.samples.size() == 20, "sample count");
        audit.audit(*g, tw::build_trace(*g, p, t.tree));
      }
      for (const auto& n : r.normalizations) psd.check(n.total == Rational(1), "tree measure normalization");
      psd_traces += r.traces.size();
      worst_eig = std::min(worst_eig, r.min_eigenvalue);
      worst_disc = std::max(worst_disc, r.max_discrepancy);
    }
  });

  // 6. Exponent law and dual routes over every trace of criteria 2-5.
  report(6, "exponent law and dual weight routes", audit.exponent_law,
         std::to_string(audit.traces - psd_traces) + " traces from criteria 2-5");

  {
    char detail[160];
    std::snprintf(detail, sizeof detail, "%zu ordered trees x 20 points, min eigenvalue %.3e, max discrepancy %.3e",
                  psd_traces, worst_eig, worst_disc);
    report(7, "contact matrices positive", psd, detail);
  }

  // 8. Contact-index order over every trace of criteria 2-7.
  report(8, "contact indices i < j", audit.contact_order, std::to_string(audit.traces) + " traces");

  // 9. Brute-force oracles for trees and admissible orderings.
  {
    Criterion c;
    std::size_t graphs = 0, orderings = 0;
    guarded(c, [&] {
      std::vector<Multigraph> pool = {triangle, kite, tw::testing::single_edge(), tw::testing::double_edge(),
                                      tw::testing::lone_loop()};
      for (auto& g : random_graphs(99, 100, 5, 8)) pool.push_back(std::move(g));
      for (const auto& g : pool) {
        ++graphs;
        const auto trees = tw::spanning_trees(g);
        c.check(trees == tw::oracle::spanning_trees(g), "spanning trees differ from subset enumeration");
        for (const auto& p : tw::all_partitions(g.vertex_count())) {
          if (p.is_trivial()) continue;
          for (const auto& tree : trees) {
            auto fast = tw::admissible_orderings(g, tree, p);
            std::sort(fast.begin(), fast.end());
            c.check(fast == tw::oracle::admissible_orderings(g, tree, p), "admissible orderings differ");
            orderings += fast.size();
          }
        }
      }
    });
    report(9, "brute-force oracle agreement", c,
           std::to_string(graphs) + " graphs, " + std::to_string(orderings) + " admissible orderings");
  }

  std::printf("%s\n", failures == 0 ? "all acceptance criteria passed" : "acceptance FAILED");
  return failures == 0 ? 0 : 1;
}
