#pragma once

// Parameter sweeps of the two-spin model with engine and oracle ledgers side
// by side, their CSV form, and the summary derived from it.

#include <array>
#include <string>
#include <vector>

#include "qthermo/cli/config.hpp"
#include "qthermo/cli/ledger_fields.hpp"

namespace qthermo::cli {

/// {w_diff, w_hstar, w_estar, q_diff, q_hstar, q_estar}
using SweepFlags = std::array<bool, 6>;
inline constexpr std::array<std::string_view, 6> kFlagNames{
    "flag_w_diff", "flag_w_hstar", "flag_w_estar", "flag_q_diff", "flag_q_hstar", "flag_q_estar"};

struct SweepTable {
  std::string variable;
  double beta = 1.0;
  std::vector<double> grid;
  std::vector<LedgerFields> engine;
  std::vector<LedgerFields> oracle;
  std::vector<SweepFlags> flags;  // from the engine ledger
};

/// Second-law flags from a flattened ledger: W_x - dF_S >= -tol and
/// dS_x / beta - Q_x >= -tol.
SweepFlags flags_of(const LedgerFields& fields, double beta, double tol);

/// Evaluates every grid point of config.sweep (or the single configured point
/// when there is no sweep), in grid order.
SweepTable run_sweep(const RunConfig& config);

struct Interval {
  double from = 0.0;
  double to = 0.0;
};

struct SweepSummary {
  std::string variable;
  std::size_t points = 0;
  double max_abs_engine_oracle = 0.0;
  std::string worst_field;
  double worst_excess = 0.0;  // |e - o| / max(rel |o|, abs); <= 1 passes
  bool oracle_ok = true;
  std::array<double, 3> min_dissipated{};  // engine, per definition
  double max_work_spread = 0.0;            // max pairwise |W_x - W_y| over the grid
  std::vector<Interval> estar_violations;  // runs where diss_estar < -violation
  SweepFlags all_flags{};                  // flag holds at every point
  bool flags_consistent = true;            // stored flags equal recomputed ones
};

SweepSummary summarize(const SweepTable& table, const RunConfig& config);

/// Header plus one row per grid point; numbers printed with 17 significant digits.
std::string to_csv(const SweepTable& table);
SweepTable parse_csv(const std::string& text);

std::string summary_json(const SweepSummary& summary);

}  // namespace qthermo::cli
