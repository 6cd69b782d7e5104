#pragma once

#include <string>

namespace nief::cli {

struct RunOptions {
  std::string out_dir{"."};
  int threads{0};       // 0: NIEF_SPECTRA_THREADS env var, else 1
  unsigned seed{12345}; // selftest RNG seed
};

/// Executes the scenario described by a JSON config file.  Returns the
/// process exit code: 0 success, 2 config/validation error, 3 numerical
/// error.  Every failure is also written as a machine-readable JSON record
/// (error.json in the output directory).
int run(const std::string& config_path, const RunOptions& opt);

}  // namespace nief::cli
