#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "treeweights/partition.hpp"

namespace treeweights {

// |V| x |V| matrix indexed by original vertices, evaluated at one point u.
struct ContactMatrix {
  Eigen::MatrixXd values;
  std::vector<double> u;
};

namespace detail {

inline void check_point(const ContractionTrace& trace, const std::vector<double>& u) {
  const std::size_t n = trace.vertex_count();
  if (trace.length() + 1 != n) fail(ErrorCode::InvariantViolation, "trace is not complete");
  if (u.size() + 1 != n) {
    fail(ErrorCode::BadDimension, "expected " + std::to_string(n - 1) + " interpolation parameters, got " +
                                      std::to_string(u.size()));
  }
  for (double x : u) {
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorCode::OutOfRange, "interpolation parameter outside [0,1]");
  }
}

}  // namespace detail

// Entry (v, w) is the product of u_k over first contact < k <= second contact.
inline ContactMatrix contact_matrix_direct(const ContractionTrace& trace, const std::vector<double>& u) {
  detail::check_point(trace, u);
  const std::size_t n = trace.vertex_count();
  ContactMatrix m{Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), u};
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      const auto [i, j] = contact_indices(trace, v, w);
      double x = 1.0;
      for (int k = std::max(i + 1, 1); k <= j; ++k) x *= u[static_cast<std::size_t>(k - 1)];
      m.values(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) = x;
      m.values(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(v)) = x;
    }
  }
  return m;
}

// X_0 = all ones; X_p = u_p X_{p-1} + (1 - u_p) P_{p-1}(X_{p-1}), where P
// zeroes entries whose vertices lie in different blocks of Pi_{p-1} (vertices
// already merged share a block).
inline ContactMatrix contact_matrix_recursion(const ContractionTrace& trace, const std::vector<double>& u) {
  detail::check_point(trace, u);
  const auto n = static_cast<Eigen::Index>(trace.vertex_count());
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(n, n);
  for (std::size_t p = 1; p <= u.size(); ++p) {
    const TraceStep& prev = trace.steps[p - 1];
    Eigen::MatrixXd projected = x;
    for (Eigen::Index v = 0; v < n; ++v) {
      for (Eigen::Index w = 0; w < n; ++w) {
        const std::size_t rv = prev.vertex_map[static_cast<std::size_t>(v)];
        const std::size_t rw = prev.vertex_map[static_cast<std::size_t>(w)];
        if (rv != rw && !prev.partition.same_block(rv, rw)) projected(v, w) = 0.0;
      }
    }
    // Same as u_p X + (1 - u_p) P(X); entries kept by P stay bit-identical.
    x = projected + u[p - 1] * (x - projected);
  }
  return ContactMatrix{std::move(x), u};
}

inline void require_symmetric(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) fail(ErrorCode::NotSymmetric, "matrix is not square");
  if (m.rows() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > tol) {
    fail(ErrorCode::NotSymmetric, "matrix is not symmetric");
  }
}

inline double min_eigenvalue(const Eigen::MatrixXd& m, double tol = 1e-10) {
  require_symmetric(m, tol);
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

inline bool check_psd(const Eigen::MatrixXd& m, double tol = 1e-10) { return min_eigenvalue(m, tol) >= -tol; }

inline bool check_psd(const ContactMatrix& m, double tol = 1e-10) { return check_psd(m.values, tol); }

struct PsdSample {
  std::vector<double> u;
  double min_eigenvalue = 0.0;
  double discrepancy = 0.0;  // max entrywise |direct - recursion|
};

struct PsdTraceReport {
  OrderedTree tree;
  std::uint64_t seed = 0;
  std::vector<PsdSample> samples;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double max_discrepancy = 0.0;
  bool unit_diagonal = true;
  bool entries_in_unit_interval = true;
  bool endpoints_exact = true;  // u = 1 gives all ones, u = 0 the identity
};

struct TreeNormalization {
  EdgeSet tree;
  Rational total;  // sum over admissible orderings of prod 1/k on G = T
};

struct PsdReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double tolerance = 0.0;
  std::vector<PsdTraceReport> traces;
  std::vector<TreeNormalization> normalizations;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double max_discrepancy = 0.0;

  bool passed() const {
    if (min_eigenvalue < -tolerance || max_discrepancy > tolerance) return false;
    for (const auto& t : traces) {
      if (!t.unit_diagonal || !t.entries_in_unit_interval || !t.endpoints_exact) return false;
    }
    for (const auto& n : normalizations) {
      if (n.total != Rational(1)) return false;
    }
    return true;
  }
};

// Seed of the i-th ordered tree's sampler, derived from the run seed.
inline std::uint64_t trace_seed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline PsdTraceReport verify_trace(const ContractionTrace& trace, std::size_t samples, double tol,
                                   std::uint64_t seed) {
  PsdTraceReport report;
  report.tree = OrderedTree{trace.tree(), trace.order};
  report.seed = seed;
  const std::size_t n = trace.vertex_count();
  const auto dim = static_cast<Eigen::Index>(n);

  const auto ones = contact_matrix_direct(trace, std::vector<double>(n - 1, 1.0));
  const auto zeros = contact_matrix_direct(trace, std::vector<double>(n - 1, 0.0));
  const auto ones_rec = contact_matrix_recursion(trace, std::vector<double>(n - 1, 1.0));
  const auto zeros_rec = contact_matrix_recursion(trace, std::vector<double>(n - 1, 0.0));
  const Eigen::MatrixXd all_ones = Eigen::MatrixXd::Ones(dim, dim);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim, dim);
  report.endpoints_exact = ones.values == all_ones && ones_rec.values == all_ones &&
                           zeros.values == identity && zeros_rec.values == identity;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    PsdSample sample;
    sample.u.resize(n - 1);
    for (auto& x : sample.u) x = unit(rng);
    const auto direct = contact_matrix_direct(trace, sample.u);
    const auto recursive = contact_matrix_recursion(trace, sample.u);
    sample.discrepancy = (direct.values - recursive.values).cwiseAbs().maxCoeff();
    sample.min_eigenvalue = min_eigenvalue(direct.values, tol);
    for (Eigen::Index v = 0; v < dim; ++v) {
      if (direct.values(v, v) != 1.0 || recursive.values(v, v) != 1.0) report.unit_diagonal = false;
    }
    if (direct.values.minCoeff() < 0.0 || direct.values.maxCoeff() > 1.0) {
      report.entries_in_unit_interval = false;
    }
    report.min_eigenvalue = std::min(report.min_eigenvalue, sample.min_eigenvalue);
    report.max_discrepancy = std::max(report.max_discrepancy, sample.discrepancy);
    report.samples.push_back(std::move(sample));
  }
  return report;
}

// Checks both contact-matrix constructions agree and are positive
// semidefinite at `samples` seeded points, for every admissible ordered tree;
// also checks that the tree measure of each T is normalized (G = T).
inline PsdReport verify_constructive(const Multigraph& g, const Partition& p, std::size_t samples, double tol,
                                     std::uint64_t seed = 0) {
  require_connected(g);
  check_partition(g, p);
  if (p.is_trivial()) fail(ErrorCode::TrivialPartition, "partition has a single block");
  PsdReport report;
  report.seed = seed;
  report.samples = samples;
  report.tolerance = tol;
  std::size_t index = 0;
  for (const auto& tree : spanning_trees(g)) {
    for (const auto& ordered : admissible_orderings(g, tree, p)) {
      const ContractionTrace trace = build_trace(g, p, ordered);
      auto tr = verify_trace(trace, samples, tol, trace_seed(seed, index++));
      report.min_eigenvalue = std::min(report.min_eigenvalue, tr.min_eigenvalue);
      report.max_discrepancy = std::max(report.max_discrepancy, tr.max_discrepancy);
      report.traces.push_back(std::move(tr));
    }
    const Multigraph tree_graph = edge_subgraph(g, tree);
    EdgeSet all(tree.size());
    for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
    report.normalizations.push_back({tree, tree_weight(tree_graph, p, all)});
  }
  return report;
}

}  // namespace treeweights
