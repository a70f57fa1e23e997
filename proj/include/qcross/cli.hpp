#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcross {

struct RunConfig {
  std::string subcommand;
  long q = 2;
  long n = 4;
  long k = 2;
  long l = 2;
  /// "auto" or "p/r".
  std::string lambda = "auto";
  /// Empty means standard output.
  std::string output;
  unsigned refine_bits = 0;
  double budget = 60.0;
  /// Dense-entry guard for lattice work; unset means QCROSS_MAX_ENTRIES or the default.
  std::optional<std::size_t> guard;

  // sweep
  std::vector<long> qs{2, 3, 4, 5, 7, 8, 9};
  long n_min = 2;
  long n_max = 14;
  unsigned jobs = 1;
  bool structure = false;

  // verify
  std::string input;
};

/// Exit codes.
enum : int { kExitOk = 0, kExitFail = 1, kExitError = 2 };

/// Runs one subcommand and writes its JSON document to `out` (or to
/// config.output).  Errors produce {"error", "params"} and exit code 2.
int run(const RunConfig& config, std::ostream& out);

/// Parses argv with CLI11 and dispatches to run().
int main_entry(int argc, char** argv);

}  // namespace qcross
