#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "treeweights/cli.hpp"

int main(int argc, char** argv) {
  using namespace treeweights::cli;

  CLI::App app{"Exact probability measures on the spanning trees of a multigraph"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string partition;
  const std::map<std::string, Format> formats{{"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph_path, "graph JSON file")->required();
    sub->add_option("--partition", partition, "blocks separated by '|', members by ','");
    sub->add_option("--format", cfg.format, "table, json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--guard", cfg.guard, "largest edge count for sector enumeration")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for sampled interpolation points");
    sub->add_option("--samples", cfg.samples, "sampled points per ordered tree");
    sub->add_option("--tol", cfg.tolerance, "numerical tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", cfg.threads, "census worker threads (0 = all cores)");
    sub->add_flag("--breakdown", cfg.breakdown, "include per-ordering contributions");
  };

  const std::map<std::string, Command> commands{{"trees", Command::Trees},
                                                {"symmetric", Command::Symmetric},
                                                {"weights", Command::Weights},
                                                {"verify", Command::Verify},
                                                {"psd", Command::Psd}};
  const std::map<std::string, std::string> help{
      {"trees", "list spanning trees"},
      {"symmetric", "symmetric weights by sector census, cross-checked against the all-singletons partition"},
      {"weights", "partition tree weights"},
      {"verify", "check exact normalization of partition weights"},
      {"psd", "check positivity of contact matrices at sampled points"}};
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    add_common(sub);
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  if (!partition.empty()) cfg.partition = partition;
  return run(cfg, std::cout, std::cerr);
}
