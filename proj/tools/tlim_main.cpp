// Batch driver: parses an experiment config, dispatches to the verification
// suites and limit experiments, writes CSV artifacts.
//
// Exit codes: 0 all checks hold, 1 at least one check failed,
//             2 configuration error, 3 I/O failure.

#include <CLI11.hpp>
#include <iostream>

#include "tlim/config.hpp"
#include "tlim/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"tlim - thermodynamic-limit laboratory for Coulomb systems"};

  std::string config_path;
  app.add_option("config", config_path, "experiment config file")->required();
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "override the config master seed");
  std::string out_dir;
  auto* out_opt = app.add_option("--out", out_dir, "directory for CSV artifacts");
  unsigned threads = 0;
  auto* threads_opt = app.add_option("--threads", threads, "worker thread count");

  CLI11_PARSE(app, argc, argv);

  const tlim::ParseResult parsed = tlim::parse_config_file(config_path);
  if (!parsed.config) {
    for (const auto& e : parsed.errors) std::cerr << "config error: " << e << "\n";
    return 2;
  }

  tlim::RunOptions opts;
  if (seed_opt->count() > 0) opts.seed_override = seed;
  if (out_opt->count() > 0) opts.out_dir = out_dir;
  if (threads_opt->count() > 0) opts.threads_override = threads;

  const tlim::RunResult result = tlim::run(*parsed.config, opts);

  std::cout << result.summary;
  for (const auto& a : result.artifacts) std::cout << "wrote " << a << "\n";
  if (!result.failures.empty()) {
    std::cerr << "failing checks:\n";
    for (const auto& f : result.failures) std::cerr << "  " << f << "\n";
  }
  return result.exit_code;
}
