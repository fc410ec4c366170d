#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "quiver/cli.hpp"

int main(int argc, char** argv) {
  using namespace quiver::cli;

  CLI::App app{"Quiver operator algebras: Fock representations, norms and graph recovery"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", "quiver graph format version " +
                                        std::to_string(quiver::graph_format_version));

  RunConfig cfg;
  std::string output;
  app.add_option("-o,--output", output, "Write the JSON report to this file");

  auto* verify = app.add_subcommand("verify", "Check Fock-space identities on a truncation");
  verify->add_option("--graph", cfg.graphs, "Quiver file")->required()->expected(1);
  verify->add_option("--depth,-N", cfg.depth, "Truncation depth")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  verify->add_option("--tol", cfg.covariance_tolerance, "Covariance tolerance")
      ->capture_default_str();
  verify->add_option("--poly", cfg.polynomials, "Path polynomial whose norm is reported");

  auto* norms = app.add_subcommand("norms", "Closed-form and direct norms of T~_k");
  norms->add_option("--graph", cfg.graphs, "Quiver file")->required()->expected(1);
  norms->add_option("--i", cfg.i, "First vertex (1-based)")->required();
  norms->add_option("--j", cfg.j, "Second vertex (1-based)")->required();
  norms->add_option("--lambda-i", cfg.lambda_i, "JSON list, e.g. [0.5,[0,0.1]]");
  norms->add_option("--lambda-j", cfg.lambda_j, "JSON list");
  norms->add_option("--gamma", cfg.gamma, "JSON list");
  norms->add_option("--k-max", cfg.k_max, "Largest power")->capture_default_str();

  auto* rec = app.add_subcommand("recover", "Scramble a quiver algebra and read the quiver back");
  rec->add_option("--graph", cfg.graphs, "Quiver file")->required()->expected(1);
  rec->add_option("--seed", cfg.seed, "Scramble seed")->capture_default_str();
  rec->add_option("--expect", cfg.expect, "Quiver the result must be isomorphic to");

  auto* iso = app.add_subcommand("iso", "Brute-force quiver isomorphism");
  iso->add_option("graphs", cfg.graphs, "Two quiver files")->required()->expected(2);

  auto* paths = app.add_subcommand("paths", "List paths up to a length");
  paths->add_option("--graph", cfg.graphs, "Quiver file")->required()->expected(1);
  paths->add_option("--max-len", cfg.max_len, "Maximal length")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_validation;
  }

  if (*verify) cfg.command = Command::verify;
  else if (*norms) cfg.command = Command::norms;
  else if (*rec) cfg.command = Command::recover;
  else if (*iso) cfg.command = Command::iso;
  else if (*paths) cfg.command = Command::paths;
  else {
    std::cerr << app.help();
    return exit_validation;
  }

  const RunResult result = run(cfg);
  const std::string text = result.report.dump(2);
  if (output.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write " << output << '\n';
      return exit_validation;
    }
    out << text << '\n';
  }
  std::cerr << result.summary << '\n';
  return result.exit_code;
}
