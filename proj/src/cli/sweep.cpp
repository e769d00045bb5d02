#include "qthermo/cli/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace qthermo::cli {
namespace {

constexpr std::size_t kW = 0, kQ = 3, kDiss = 7, kDeltaS = 10;

std::string number(double x) { return fmt::format("{:.17g}", x); }

double parse_number(std::string_view cell) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || end != cell.data() + cell.size()) {
    throw Error("sweep file has a malformed number '" + std::string(cell) + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

std::vector<std::string> header(const std::string& variable) {
  std::vector<std::string> names{variable, "beta"};
  for (auto field : kLedgerFieldNames) {
    names.push_back("engine_" + std::string(field));
    names.push_back("oracle_" + std::string(field));
  }
  for (auto flag : kFlagNames) names.emplace_back(flag);
  return names;
}

}  // namespace

SweepFlags flags_of(const LedgerFields& f, double beta, double tol) {
  SweepFlags flags{};
  for (std::size_t x = 0; x < 3; ++x) {
    flags[x] = f[kDiss + x] >= -tol;
    flags[3 + x] = f[kDeltaS + x] / beta - f[kQ + x] >= -tol;
  }
  return flags;
}

SweepTable run_sweep(const RunConfig& config) {
  if (config.model != Model::TwoSpin) {
    throw ConfigError("sweeps and comparisons need the two_spin model");
  }
  if (!std::holds_alternative<Equilibrated>(config.final_mode)) {
    throw ConfigError("the closed-form oracle covers the equilibrated final mode only");
  }
  SweepTable table;
  table.beta = config.beta;
  table.variable = config.sweep ? config.sweep->variable : "point";
  table.grid = config.sweep ? grid_points(*config.sweep) : std::vector<double>{0.0};

  // Sequential on purpose: rows come out in grid order and runs are reproducible.
  for (double value : table.grid) {
    auto values = config.parameters;
    if (config.sweep) values[config.sweep->variable] = value;
    const auto engine = fields_of(run_quench(two_spin_spec(config, values)));
    table.engine.push_back(engine);
    table.oracle.push_back(fields_of(two_spin_oracle(config, values)));
    table.flags.push_back(flags_of(engine, config.beta, config.tol("second_law")));
  }
  return table;
}

SweepSummary summarize(const SweepTable& table, const RunConfig& config) {
  const double rel = config.tol("oracle_rel");
  const double abs = config.tol("oracle_abs");
  const double violation = config.tol("violation");
  const double flag_tol = config.tol("second_law");

  SweepSummary s;
  s.variable = table.variable;
  s.points = table.grid.size();
  s.min_dissipated = {INFINITY, INFINITY, INFINITY};
  s.all_flags.fill(true);

  std::optional<Interval> open;
  for (std::size_t i = 0; i < table.grid.size(); ++i) {
    const auto& e = table.engine[i];
    const auto& o = table.oracle[i];
    for (std::size_t f = 0; f < kLedgerFieldCount; ++f) {
      s.max_abs_engine_oracle = std::max(s.max_abs_engine_oracle, std::abs(e[f] - o[f]));
    }
    const auto agreement = compare_fields(e, o, rel, abs);
    if (!agreement.ok) s.oracle_ok = false;
    if (s.worst_field.empty() || agreement.worst_excess > s.worst_excess) {
      s.worst_excess = agreement.worst_excess;
      s.worst_field = std::string(kLedgerFieldNames[agreement.worst_field]);
    }

    for (std::size_t x = 0; x < 3; ++x) {
      s.min_dissipated[x] = std::min(s.min_dissipated[x], e[kDiss + x]);
    }
    s.max_work_spread = std::max({s.max_work_spread, std::abs(e[kW] - e[kW + 1]),
                                  std::abs(e[kW] - e[kW + 2]), std::abs(e[kW + 1] - e[kW + 2])});

    const auto flags = flags_of(e, table.beta, flag_tol);
    if (flags != table.flags[i]) s.flags_consistent = false;
    for (std::size_t k = 0; k < flags.size(); ++k) s.all_flags[k] = s.all_flags[k] && flags[k];

    const double x = table.grid[i];
    if (e[kDiss + 2] < -violation) {
      if (open) {
        open->to = x;
      } else {
        open = Interval{x, x};
      }
    } else if (open) {
      s.estar_violations.push_back(*open);
      open.reset();
    }
  }
  if (open) s.estar_violations.push_back(*open);
  return s;
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  const auto names = header(table.variable);
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  out += '\n';
  for (std::size_t i = 0; i < table.grid.size(); ++i) {
    out += number(table.grid[i]) + "," + number(table.beta);
    for (std::size_t f = 0; f < kLedgerFieldCount; ++f) {
      out += "," + number(table.engine[i][f]) + "," + number(table.oracle[i][f]);
    }
    for (bool flag : table.flags[i]) out += flag ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

SweepTable parse_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("sweep file is empty");
  const auto names = split(line);
  if (names.empty() || names != header(names.front())) {
    throw Error("sweep file header does not match the expected columns");
  }
  SweepTable table;
  table.variable = names.front();
  while (std::getline(in, line)) {
    const auto cells = split(line);
    if (cells.size() != names.size()) throw Error("sweep row has the wrong number of cells");
    table.grid.push_back(parse_number(cells[0]));
    table.beta = parse_number(cells[1]);
    LedgerFields engine{}, oracle{};
    for (std::size_t f = 0; f < kLedgerFieldCount; ++f) {
      engine[f] = parse_number(cells[2 + 2 * f]);
      oracle[f] = parse_number(cells[3 + 2 * f]);
    }
    SweepFlags flags{};
    for (std::size_t k = 0; k < flags.size(); ++k) {
      const auto& cell = cells[2 + 2 * kLedgerFieldCount + k];
      if (cell != "0" && cell != "1") throw Error("sweep flag must be 0 or 1");
      flags[k] = cell == "1";
    }
    table.engine.push_back(engine);
    table.oracle.push_back(oracle);
    table.flags.push_back(flags);
  }
  return table;
}

std::string summary_json(const SweepSummary& s) {
  nlohmann::ordered_json j;
  j["variable"] = s.variable;
  j["points"] = s.points;
  j["max_abs_engine_oracle"] = s.max_abs_engine_oracle;
  j["worst_field"] = s.worst_field;
  j["worst_excess"] = s.worst_excess;
  j["oracle_ok"] = s.oracle_ok;
  j["min_diss"] = {{"diff", s.min_dissipated[0]},
                   {"hstar", s.min_dissipated[1]},
                   {"estar", s.min_dissipated[2]}};
  j["max_work_spread"] = s.max_work_spread;
  auto intervals = nlohmann::ordered_json::array();
  for (const auto& iv : s.estar_violations) intervals.push_back({iv.from, iv.to});
  j["estar_violation_intervals"] = intervals;
  nlohmann::ordered_json flags;
  for (std::size_t k = 0; k < kFlagNames.size(); ++k) {
    flags[std::string(kFlagNames[k])] = s.all_flags[k];
  }
  j["all_points"] = flags;
  j["flags_consistent"] = s.flags_consistent;
  return j.dump(2) + "\n";
}

}  // namespace qthermo::cli
