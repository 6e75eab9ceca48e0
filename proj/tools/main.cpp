#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "suites.hpp"

using namespace slicepi::cli;

namespace {

constexpr int kUsage = 2;

int run_verify(const std::string& which, const RunConfig& cfg) {
  std::vector<std::string> names = which == "all" ? suite_names() : std::vector<std::string>{which};
  bool ok = true;
  for (const std::string& name : names) {
    const SuiteReport r = run_suite(name, cfg);
    write_text((std::filesystem::path(cfg.outdir) / (name + ".csv")).string(), format_csv(r));
    int failed = 0;
    for (const Row& row : r.rows)
      if (!row.pass) {
        ++failed;
        std::printf("  FAIL %s @%d: %.3e > %.3e\n", row.check_id.c_str(), row.resolution, row.error, row.tol);
      }
    std::printf("%-15s %3zu rows, %d failed, %.1f s\n", name.c_str(), r.rows.size(), failed, r.seconds);
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slice Clifford Pi-operator checks and Beltrami solver"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the verb
  std::string config_path, outdir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "key = value run configuration")->check(CLI::ExistingFile);
  app.add_option("--outdir", outdir, "directory for CSV and report files");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides the config)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite and write <outdir>/<suite>.csv");
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  auto* beltrami = app.add_subcommand("solve-beltrami", "fixed-point solve of G w = f Gbar w");
  auto* constants = app.add_subcommand("constants", "print the norm-bound constants and the measured ||Pi||");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(KeyValueFile::load(config_path));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  }
  if (!outdir.empty()) cfg.outdir = outdir;
  if (*seed_opt) cfg.seed = seed;

  try {
    std::filesystem::create_directories(cfg.outdir);
    if (verify->parsed()) {
      if (suite != "all" && !is_suite(suite)) {
        std::cerr << "unknown suite '" << suite << "'; expected one of:";
        for (const auto& n : suite_names()) std::cerr << " " << n;
        std::cerr << " all\n";
        return kUsage;
      }
      return run_verify(suite, cfg);
    }
    if (beltrami->parsed()) return solve_beltrami_cmd(cfg, std::cout);
    if (constants->parsed()) return dump_constants(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
