#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "treeweights/io.hpp"
#include "treeweights/partition.hpp"
#include "treeweights/psd.hpp"
#include "treeweights/sectors.hpp"

namespace treeweights::cli {

enum class Command { Trees, Symmetric, Weights, Verify, Psd };
enum class Format { Table, Json, Csv };

struct RunConfig {
  Command command = Command::Trees;
  std::string graph_path;
  std::optional<std::string> partition;
  Format format = Format::Table;
  std::size_t guard = 10;
  std::uint64_t seed = 0;
  std::size_t samples = 20;
  double tolerance = 1e-10;
  bool breakdown = false;
  unsigned threads = 1;
};

enum ExitCode : int { kOk = 0, kInputError = 2, kCheckFailure = 3, kGuardExceeded = 4 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EnumerationGuardExceeded: return kGuardExceeded;
    case ErrorCode::InvariantViolation:
    case ErrorCode::NotSymmetric: return kCheckFailure;
    default: return kInputError;
  }
}

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string ids_of(const Multigraph& g, const std::vector<std::size_t>& edges) {
  return join(edge_ids(g, edges), " ");
}

inline std::string numbers(const std::vector<std::size_t>& xs) {
  std::vector<std::string> parts;
  for (auto x : xs) parts.push_back(std::to_string(x));
  return join(parts, " ");
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

struct Column {
  std::string header;
  std::vector<std::string> cells;
};

inline void print_table(std::ostream& out, const std::vector<Column>& cols) {
  std::vector<std::size_t> width;
  for (const auto& c : cols) {
    std::size_t w = c.header.size();
    for (const auto& cell : c.cells) w = std::max(w, cell.size());
    width.push_back(w + 2);
  }
  const std::size_t rows = cols.empty() ? 0 : cols.front().cells.size();
  auto line = [&](auto&& cell_of) {
    std::string s;
    for (std::size_t c = 0; c < cols.size(); ++c) s += c + 1 == cols.size() ? cell_of(c) : pad(cell_of(c), width[c]);
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << '\n';
  };
  line([&](std::size_t c) { return cols[c].header; });
  for (std::size_t r = 0; r < rows; ++r) line([&](std::size_t c) { return cols[c].cells[r]; });
}

inline void print_csv(std::ostream& out, const std::vector<Column>& cols) {
  std::vector<std::string> header;
  for (const auto& c : cols) header.push_back(c.header);
  out << join(header, ",") << '\n';
  const std::size_t rows = cols.empty() ? 0 : cols.front().cells.size();
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    for (const auto& c : cols) row.push_back(c.cells[r]);
    out << join(row, ",") << '\n';
  }
}

inline json breakdown_json(const Multigraph& g, const TreeWeight& entry) {
  json arr = json::array();
  for (const auto& o : entry.orderings) {
    arr.push_back({{"order", edge_ids(g, o.order)}, {"k", o.k}, {"weight", o.weight.str()}});
  }
  return arr;
}

// Rows of a weight report; `sectors` adds the census count column.
inline void emit_weights(std::ostream& out, const RunConfig& cfg, const Multigraph& g, const WeightReport& report,
                         const std::string& command, const std::string& partition,
                         const SectorCensus* census) {
  if (cfg.format == Format::Json) {
    json doc{{"format", 1}, {"command", command}, {"partition", partition},
             {"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
    json trees = json::array();
    for (const auto& e : report.entries) {
      json row{{"edges", edge_ids(g, e.tree)},
               {"weight", e.weight.str()},
               {"decimal", std::stod(format_decimal(e.weight))},
               {"orderings", e.orderings.size()}};
      if (census) row["sectors"] = census->counts.count(e.tree) ? census->counts.at(e.tree) : 0;
      if (cfg.breakdown) row["breakdown"] = breakdown_json(g, e);
      trees.push_back(std::move(row));
    }
    doc["trees"] = std::move(trees);
    if (census) doc["sectors_total"] = census->total;
    doc["total"] = report.total().str();
    out << doc.dump(2) << '\n';
    return;
  }

  std::vector<Column> cols;
  if (cfg.breakdown) {
    cols = {{"tree", {}}, {"order", {}}, {"k", {}}, {"weight", {}}, {"decimal", {}}};
    for (const auto& e : report.entries) {
      for (const auto& o : e.orderings) {
        cols[0].cells.push_back(ids_of(g, e.tree));
        cols[1].cells.push_back(ids_of(g, o.order));
        cols[2].cells.push_back(numbers(o.k));
        cols[3].cells.push_back(o.weight.str());
        cols[4].cells.push_back(format_decimal(o.weight));
      }
    }
  }
  std::vector<Column> summary = {{"tree", {}}, {"weight", {}}, {"decimal", {}}, {"orderings", {}}};
  if (census) summary.push_back({"sectors", {}});
  for (const auto& e : report.entries) {
    summary[0].cells.push_back(ids_of(g, e.tree));
    summary[1].cells.push_back(e.weight.str());
    summary[2].cells.push_back(format_decimal(e.weight));
    summary[3].cells.push_back(std::to_string(e.orderings.size()));
    if (census) {
      auto it = census->counts.find(e.tree);
      summary[4].cells.push_back(std::to_string(it == census->counts.end() ? 0 : it->second));
    }
  }
  if (cfg.format == Format::Csv) {
    print_csv(out, cfg.breakdown ? cols : summary);
    return;
  }
  if (!partition.empty()) out << "partition " << partition << '\n';
  print_table(out, summary);
  out << "total " << report.total().str() << '\n';
  if (cfg.breakdown) {
    out << '\n';
    print_table(out, cols);
  }
}

inline int run_trees(std::ostream& out, const RunConfig& cfg, const Multigraph& g) {
  const auto trees = spanning_trees(g);
  const BigInt by_determinant = complexity(g);
  const bool agree = by_determinant == BigInt(trees.size());
  if (cfg.format == Format::Json) {
    json list = json::array();
    for (const auto& t : trees) list.push_back(edge_ids(g, t));
    out << json{{"format", 1}, {"command", "trees"}, {"count", trees.size()},
                {"matrix_tree_count", by_determinant.str()}, {"trees", std::move(list)}}
               .dump(2)
        << '\n';
  } else if (cfg.format == Format::Csv) {
    out << "tree\n";
    for (const auto& t : trees) out << ids_of(g, t) << '\n';
  } else {
    for (const auto& t : trees) out << ids_of(g, t) << '\n';
    out << "count " << trees.size() << " (matrix-tree " << by_determinant.str() << ")\n";
  }
  return agree ? kOk : kCheckFailure;
}

inline int run_symmetric(std::ostream& out, std::ostream& err, const RunConfig& cfg, const Multigraph& g) {
  const SectorCensus census = sector_census(g, CensusOptions{cfg.guard, cfg.threads});
  const WeightReport report = symmetric_via_partition(g);
  bool agree = census.counts.size() == report.entries.size();
  for (const auto& e : report.entries) {
    if (census.weight(e.tree) != e.weight) {
      agree = false;
      err << "mismatch on " << ids_of(g, e.tree) << ": census " << census.weight(e.tree).str() << ", partition "
          << e.weight.str() << '\n';
    }
  }
  emit_weights(out, cfg, g, report, "symmetric", format_partition(Partition::singletons(g.vertex_count()), g),
               &census);
  return agree && report.total() == Rational(1) ? kOk : kCheckFailure;
}

inline int run_weights(std::ostream& out, std::ostream& err, const RunConfig& cfg, const Multigraph& g) {
  if (!cfg.partition) {
    err << "error: BadPartition: --partition is required for weights\n";
    return kInputError;
  }
  const Partition p = parse_partition(*cfg.partition, g);
  const WeightReport report = weight_distribution(g, p);
  emit_weights(out, cfg, g, report, "weights", format_partition(p, g), nullptr);
  if (report.total() != Rational(1)) {
    err << "normalization failed: total " << report.total().str() << '\n';
    return kCheckFailure;
  }
  return kOk;
}

// Normalization of one partition, or of every non-trivial partition when
// none is given.
inline int run_verify(std::ostream& out, const RunConfig& cfg, const Multigraph& g) {
  std::vector<Partition> partitions;
  if (cfg.partition) {
    partitions.push_back(parse_partition(*cfg.partition, g));
    if (partitions.back().is_trivial()) fail(ErrorCode::TrivialPartition, "partition has a single block");
  } else {
    for (auto& p : all_partitions(g.vertex_count())) {
      if (!p.is_trivial()) partitions.push_back(std::move(p));
    }
  }
  bool all_ok = true;
  Column part{"partition", {}}, total{"total", {}}, trees{"trees", {}}, orderings{"orderings", {}},
      status{"status", {}};
  json rows = json::array();
  for (const auto& p : partitions) {
    const WeightReport report = weight_distribution(g, p);
    const bool ok = report.total() == Rational(1);
    all_ok = all_ok && ok;
    part.cells.push_back(format_partition(p, g));
    total.cells.push_back(report.total().str());
    trees.cells.push_back(std::to_string(report.entries.size()));
    orderings.cells.push_back(std::to_string(report.ordering_count()));
    status.cells.push_back(ok ? "ok" : "FAIL");
    rows.push_back({{"partition", part.cells.back()}, {"total", total.cells.back()},
                    {"trees", report.entries.size()}, {"orderings", report.ordering_count()}, {"ok", ok}});
  }
  if (cfg.format == Format::Json) {
    out << json{{"format", 1}, {"command", "verify"}, {"partitions", std::move(rows)}, {"passed", all_ok}}.dump(2)
        << '\n';
  } else if (cfg.format == Format::Csv) {
    print_csv(out, {part, total, trees, orderings, status});
  } else {
    print_table(out, {part, total, trees, orderings, status});
    out << (all_ok ? "all partitions normalized" : "normalization FAILED") << '\n';
  }
  return all_ok ? kOk : kCheckFailure;
}

inline int run_psd(std::ostream& out, const RunConfig& cfg, const Multigraph& g) {
  const Partition p = cfg.partition ? parse_partition(*cfg.partition, g) : Partition::singletons(g.vertex_count());
  const PsdReport report = verify_constructive(g, p, cfg.samples, cfg.tolerance, cfg.seed);
  auto sci = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return std::string(buf);
  };
  if (cfg.format == Format::Json) {
    json traces = json::array();
    for (const auto& t : report.traces) {
      json samples = json::array();
      for (const auto& s : t.samples) {
        samples.push_back({{"u", s.u}, {"min_eigenvalue", s.min_eigenvalue}, {"discrepancy", s.discrepancy}});
      }
      traces.push_back({{"order", edge_ids(g, t.tree.order)}, {"seed", t.seed},
                        {"min_eigenvalue", t.min_eigenvalue}, {"max_discrepancy", t.max_discrepancy},
                        {"unit_diagonal", t.unit_diagonal}, {"endpoints_exact", t.endpoints_exact},
                        {"samples", std::move(samples)}});
    }
    json norms = json::array();
    for (const auto& n : report.normalizations) {
      norms.push_back({{"tree", edge_ids(g, n.tree)}, {"total", n.total.str()}});
    }
    out << json{{"format", 1},
                {"command", "psd"},
                {"partition", format_partition(p, g)},
                {"seed", report.seed},
                {"samples", report.samples},
                {"tolerance", report.tolerance},
                {"min_eigenvalue", report.min_eigenvalue},
                {"max_discrepancy", report.max_discrepancy},
                {"traces", std::move(traces)},
                {"tree_normalization", std::move(norms)},
                {"passed", report.passed()}}
               .dump(2)
        << '\n';
  } else {
    Column order{"order", {}}, seed{"seed", {}}, eig{"min_eigenvalue", {}}, disc{"max_discrepancy", {}},
        flags{"checks", {}};
    for (const auto& t : report.traces) {
      order.cells.push_back(ids_of(g, t.tree.order));
      seed.cells.push_back(std::to_string(t.seed));
      eig.cells.push_back(sci(t.min_eigenvalue));
      disc.cells.push_back(sci(t.max_discrepancy));
      flags.cells.push_back(t.unit_diagonal && t.entries_in_unit_interval && t.endpoints_exact ? "ok" : "FAIL");
    }
    if (cfg.format == Format::Csv) {
      print_csv(out, {order, seed, eig, disc, flags});
    } else {
      out << "partition " << format_partition(p, g) << "  seed " << report.seed << "  samples " << report.samples
          << "  tol " << sci(report.tolerance) << '\n';
      print_table(out, {order, seed, eig, disc, flags});
      bool norm_ok = true;
      for (const auto& n : report.normalizations) norm_ok = norm_ok && n.total == Rational(1);
      out << "ordered trees " << report.traces.size() << "  min eigenvalue " << sci(report.min_eigenvalue)
          << "  max discrepancy " << sci(report.max_discrepancy) << "  tree measures normalized "
          << (norm_ok ? "yes" : "NO") << '\n';
      out << (report.passed() ? "passed" : "FAILED") << '\n';
    }
  }
  return report.passed() ? kOk : kCheckFailure;
}

}  // namespace detail

// Runs one command, writing the report to `out` and diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.guard < 1) fail(ErrorCode::OutOfRange, "--guard must be at least 1");
    const Multigraph g = parse_graph(cfg.graph_path);
    switch (cfg.command) {
      case Command::Trees: return detail::run_trees(out, cfg, g);
      case Command::Symmetric: return detail::run_symmetric(out, err, cfg, g);
      case Command::Weights: return detail::run_weights(out, err, cfg, g);
      case Command::Verify: return detail::run_verify(out, cfg, g);
      case Command::Psd: return detail::run_psd(out, cfg, g);
    }
  } catch (const Error& e) {
    if (cfg.format == Format::Json) {
      out << json{{"format", 1}, {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}
                 .dump(2)
          << '\n';
    }
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kInputError;
}

}  // namespace treeweights::cli
