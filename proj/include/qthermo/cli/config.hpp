#pragma once

// Run configuration for the qthermo command-line tool, read from JSON.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qthermo/errors.hpp"
#include "qthermo/quench.hpp"
#include "qthermo/two_spin_oracle.hpp"

namespace qthermo::cli {

/// Malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Mode { Run, Sweep, Audit, Compare };
enum class Model { TwoSpin, CustomMatrix };

struct SweepAxis {
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

/// Grid points start + i (stop - start) / (count - 1); the last is exactly stop.
std::vector<double> grid_points(const SweepAxis& axis);

struct AuditSettings {
  int quenches = 200;
  int samples = 100;  // draws per auxiliary suite
  std::size_t max_d_r = 4;
  double beta_min = 0.3;
  double beta_max = 2.0;
  double coupling_scale = 1.0;
};

using Tolerances = std::map<std::string, double, std::less<>>;

/// Named tolerances and their defaults; --tol may only override these names.
const Tolerances& default_tolerances();

struct RunConfig {
  std::optional<Mode> mode;
  Model model = Model::TwoSpin;
  QuenchKind quench = QuenchKind::SystemQuench;
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::map<std::string, double> parameters;
  std::optional<SweepAxis> sweep;
  std::string output;
  Tolerances tolerances = default_tolerances();
  FinalMode final_mode = Equilibrated{};
  std::optional<QuenchSpec> custom;  // built from the matrices section
  AuditSettings audit;

  double tol(std::string_view name) const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Applies "name=value"; throws ConfigError for unknown names or bad values.
void apply_tolerance_override(RunConfig& config, const std::string& assignment);

/// Parameter names a two-spin quench of `kind` requires.
const std::vector<std::string>& two_spin_parameter_names(QuenchKind kind);

/// Engine spec and oracle ledger for one full two-spin parameter map.
QuenchSpec two_spin_spec(const RunConfig& config, const std::map<std::string, double>& values);
two_spin::OracleLedger two_spin_oracle(const RunConfig& config,
                                       const std::map<std::string, double>& values);

}  // namespace qthermo::cli
