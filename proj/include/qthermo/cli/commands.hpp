#pragma once

// Subcommands of the qthermo tool. Exit codes: 0 success, 1 invariant or
// tolerance failure (or unwritable output), 2 configuration error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qthermo/cli/config.hpp"

namespace qthermo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

struct Invocation {
  Mode mode = Mode::Run;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::vector<std::string> tolerance_overrides;  // "name=value"
};

/// Loads the config, applies overrides and runs the subcommand. Reports go to
/// `out` (or to the --out file), diagnostics to `err`.
int execute(const Invocation& call, std::ostream& out, std::ostream& err);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_audit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qthermo::cli
