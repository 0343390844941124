#include <iostream>
#include <map>
#include <vector>

#include <CLI11.hpp>

#include "dim/cli.hpp"

int main(int argc, char** argv) {
  using namespace dim::cli;
  CLI::App app{"Dominating induced matching solver"};
  app.set_version_flag("--version", "dim 1.0.0");

  RunConfig cfg;
  std::string mode_name;
  std::vector<dim::Vertex> xy;
  std::string format = "text";
  std::size_t n = 0;
  double p = 0;
  std::uint64_t seed = 0, budget = 0;

  app.add_option("mode", mode_name, "solve | oracle | compare | check-s115 | generate")
      ->required()
      ->check(CLI::IsMember({"solve", "oracle", "compare", "check-s115", "generate"}));
  app.add_option("input", cfg.input_path, "edge-list file; '-' or omitted reads stdin");
  app.add_option("-g,--graph", cfg.inline_graph, "inline edge list, ';' separates lines");
  app.add_flag("--strict", cfg.strict, "report hypothesis violations with a witness (exit 3)");
  app.add_flag("--fallback", cfg.fallback, "run the oracle when the answer is unknown");
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--xy", xy, "require the edge u v in the matching")->expected(2);
  app.add_option("--jobs", cfg.jobs, "candidate edges evaluated concurrently")->check(CLI::PositiveNumber);
  auto* budget_opt = app.add_option("--budget", budget, "oracle node budget (default $DIM_ORACLE_BUDGET or 1e8)");
  auto* n_opt = app.add_option("--n", n, "generate: vertex count");
  auto* p_opt = app.add_option("--p", p, "generate: edge probability")->check(CLI::Range(0.0, 1.0));
  auto* seed_opt = app.add_option("--seed", seed, "generate: seed of the first graph");
  app.add_option("--count", cfg.count, "generate: number of graphs (graph i uses seed + i)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  cfg.mode = *parse_mode(mode_name);
  cfg.format = format == "json" ? Format::Json : Format::Text;
  if (xy.size() == 2) cfg.xy = std::pair{xy[0], xy[1]};
  if (*budget_opt) cfg.budget = budget;
  if (*n_opt) cfg.n = n;
  if (*p_opt) cfg.p = p;
  if (*seed_opt) cfg.seed = seed;
  return run(cfg, std::cin, std::cout, std::cerr);
}
