#pragma once

// Command-line workflows. Each command produces a single JSON report; the
// process exit code is 0 on success or a solution, 1 on a certified negative
// outcome, 2 on input errors and 3 when a numerical routine breaks down.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "conelcp/instance.hpp"

namespace conelcp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

struct RunOptions {
  double tol = 1e-9;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
};

struct CommandResult {
  Json report;
  int exit_code = kExitOk;
  std::string summary;  // human-readable, for --verbose
};

/// Flags override values from the instance file, which override defaults.
RunOptions resolve_options(const InstanceFile& inst, std::optional<double> tol,
                           std::optional<std::size_t> samples, std::optional<std::uint64_t> seed);

CommandResult cmd_classify(const InstanceFile& inst, const RunOptions& opt);
CommandResult cmd_solve(const InstanceFile& inst, const RunOptions& opt);
CommandResult cmd_witness(const InstanceFile& inst, const RunOptions& opt);
CommandResult cmd_oracle(const InstanceFile& inst, const RunOptions& opt);

enum class GenKind { Pd, Indefinite, Skew, PMatrix, Positive };
bool parse_gen_kind(const std::string& name, GenKind& kind);

inline constexpr std::size_t kMaxGenDim = 12;
/// Deterministic random instance (matrix plus a unit-normal q).
InstanceFile cmd_gen(GenKind kind, std::size_t dim, std::uint64_t seed);

/// Full front end: parses args (without the program name), runs the command
/// and writes the report to out, diagnostics to err. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Removes the wall-time field so reports can be compared byte for byte.
Json mask_wall_time(Json report);

}  // namespace conelcp
