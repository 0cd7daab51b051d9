#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace orthosym {

inline constexpr const char* kLibraryVersion = "1.0.0";

// Exit statuses of the command-line frontend.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDisagreement = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSingular = 3;

// Seed used when neither --seed nor ORTHOSYM_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct RunConfig {
  std::string command;
  std::string family;
  std::optional<int> m;
  std::optional<int> n;
  std::string x_eigs;
  std::string y_eigs;
  double gamma = 0.5;
  std::string x_pts;
  std::string y_pts;
  std::string class_selector = "all";
  std::int64_t samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  double z_threshold = 4.0;
  int r = 1;
  int r_max = 3;
  int shards = 8;
  int threads = 8;
  bool timing = false;
};

// Parses argv, runs the subcommand and writes the JSON report to --out or to
// `out`; diagnostics go to `err`. Returns one of the kExit* statuses.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace orthosym
