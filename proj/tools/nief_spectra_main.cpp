#include <string>

#include <CLI11.hpp>

#include "nief/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Steady-state optical response of resonantly driven multilevel atoms"};
  app.require_subcommand(1);

  std::string config_path;
  nief::cli::RunOptions opt;

  CLI::App* run = app.add_subcommand("run", "execute a JSON scenario config");
  run->add_option("config", config_path, "path to the scenario JSON")->required();
  run->add_option("--out-dir", opt.out_dir, "output directory (default .)");
  run->add_option("--threads", opt.threads,
                  "worker threads; falls back to NIEF_SPECTRA_THREADS, then 1");
  run->add_option("--seed", opt.seed, "selftest RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  return nief::cli::run(config_path, opt);
}
