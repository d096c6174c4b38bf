// Command-line driver: degeis <command> [--config PATH] [--out PATH]
// [--seed U64] [--samples N] [--threads N].
// Exit status 0 = all checks pass, 1 = a tolerance failed, 2 = bad config.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "degeis/commands.hpp"

int main(int argc, char** argv) {
  using namespace degeis;
  CLI::App app{"Eisenstein series experiments on SL(n, Z)"};
  app.set_version_flag("--version", code_version());
  app.require_subcommand(1);

  std::string config_path, out_path, dump_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> samples;
  std::optional<int> threads;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key = value configuration file");
    sub->add_option("--out", out_path, "CSV output path (default: stdout)");
    sub->add_option("--seed", seed, "base seed");
    sub->add_option("--samples", samples, "Monte Carlo sample count")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", threads, "worker threads (overrides DEGEIS_THREADS)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--dump-config", dump_path, "write the effective configuration to this path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = RunConfig::load(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (!cfg.command.empty() && cfg.command != command) {
    std::cerr << "error: config is for '" << cfg.command << "', not '" << command << "'\n";
    return kExitConfig;
  }
  cfg.command = command;
  if (seed) cfg.seed = *seed;
  if (samples) cfg.samples = *samples;
  if (threads) {
    cfg.threads = *threads;
  } else if (const char* env = std::getenv("DEGEIS_THREADS")) {
    const int v = std::atoi(env);
    if (v <= 0) {
      std::cerr << "error: DEGEIS_THREADS must be a positive integer\n";
      return kExitConfig;
    }
    cfg.threads = v;
  }
  if (!out_path.empty()) cfg.out = out_path;

  if (!dump_path.empty()) {
    std::ofstream d(dump_path);
    if (!d) {
      std::cerr << "error: cannot write '" << dump_path << "'\n";
      return kExitConfig;
    }
    d << cfg.serialize();
  }

  if (cfg.out.empty()) return run_command_safely(cfg, std::cout, std::cerr);
  std::ofstream out(cfg.out);
  if (!out) {
    std::cerr << "error: cannot write '" << cfg.out << "'\n";
    return kExitConfig;
  }
  return run_command_safely(cfg, out, std::cerr);
}
