#include "qthermo/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "qthermo/cli/audit.hpp"
#include "qthermo/cli/ledger_fields.hpp"
#include "qthermo/cli/sweep.hpp"

namespace qthermo::cli {
namespace {

using nlohmann::ordered_json;

class WriteError : public Error {
 public:
  using Error::Error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw WriteError("cannot open " + path + " for writing");
  file << content;
  file.close();
  if (!file) throw WriteError("failed writing " + path);
}

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
  if (config.output.empty()) {
    out << content;
  } else {
    write_file(config.output, content);
  }
}

ordered_json per_definition(const PerDefinition& p) {
  return {{"diff", p.diff}, {"hstar", p.hstar}, {"estar", p.estar}};
}

ordered_json flag_set(const DefinitionFlags& f) {
  return {{"diff", f[0]}, {"hstar", f[1]}, {"estar", f[2]}};
}

ordered_json named_fields(const LedgerFields& fields) {
  ordered_json j;
  for (std::size_t i = 0; i < kLedgerFieldCount; ++i) j[std::string(kLedgerFieldNames[i])] = fields[i];
  return j;
}

bool compatible(Mode configured, Mode requested) {
  auto grid = [](Mode m) { return m == Mode::Sweep || m == Mode::Compare; };
  return configured == requested || (grid(configured) && grid(requested));
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const QuenchSpec spec =
      config.custom ? *config.custom : two_spin_spec(config, config.parameters);
  const ThermoLedger ledger = run_quench(spec);
  const SecondLawAudit audit = second_law_audit(ledger, config.tol("second_law"));

  ordered_json j;
  j["beta"] = ledger.beta;
  j["work"] = per_definition(ledger.work);
  j["heat"] = per_definition(ledger.heat);
  j["u_initial"] = per_definition(ledger.u_initial);
  j["u_final"] = per_definition(ledger.u_final);
  j["delta_u"] = per_definition(ledger.delta_u);
  j["delta_f_s"] = ledger.delta_f_s;
  j["dissipated"] = per_definition(ledger.dissipated);
  j["delta_s"] = ledger.delta_s ? per_definition(*ledger.delta_s) : ordered_json();
  j["rel_entropy_global"] = ledger.rel_entropy_global;
  j["rel_entropy_system"] = ledger.rel_entropy_system;
  j["residual_diff"] = audit.residual_diff;
  j["residual_hstar"] = audit.residual_hstar;
  j["second_law_w"] = flag_set(audit.w_flags);
  j["second_law_q"] = audit.q_flags ? flag_set(*audit.q_flags) : ordered_json();

  const double floor = config.tol("diss_floor");
  bool pass = audit.residual_diff <= config.tol("relative_entropy") &&
              audit.residual_hstar <= config.tol("relative_entropy") &&
              ledger.dissipated.diff >= -floor && ledger.dissipated.hstar >= -floor;
  if (ledger.delta_s) {
    const double inv_beta = 1.0 / ledger.beta;
    const double slack = config.tol("heat_bound");
    pass = pass && ledger.heat.diff <= inv_beta * ledger.delta_s->diff + slack &&
           ledger.heat.hstar <= inv_beta * ledger.delta_s->hstar + slack;
  }
  if (!config.custom && std::holds_alternative<Equilibrated>(config.final_mode)) {
    const auto oracle = fields_of(two_spin_oracle(config, config.parameters));
    const auto agreement =
        compare_fields(fields_of(ledger), oracle, config.tol("oracle_rel"), config.tol("oracle_abs"));
    j["oracle"] = named_fields(oracle);
    j["oracle_ok"] = agreement.ok;
    pass = pass && agreement.ok;
  }
  j["pass"] = pass;
  emit(config, j.dump(2) + "\n", out);
  if (!pass) err << "run: invariant check failed\n";
  return pass ? kExitOk : kExitFailure;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.sweep) throw ConfigError("sweep mode needs a sweep section");
  if (config.output.empty()) throw ConfigError("sweep mode needs an output path");
  const SweepTable table = run_sweep(config);
  const SweepSummary summary = summarize(table, config);
  const std::string summary_text = summary_json(summary);
  write_file(config.output, to_csv(table));
  write_file(config.output + ".summary.json", summary_text);
  out << summary_text;
  if (!summary.oracle_ok) {
    err << "sweep: engine and oracle disagree beyond tolerance in " << summary.worst_field << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SweepTable table = run_sweep(config);
  const double rel = config.tol("oracle_rel");
  const double abs = config.tol("oracle_abs");

  ordered_json fields = ordered_json::array();
  bool pass = true;
  for (std::size_t f = 0; f < kLedgerFieldCount; ++f) {
    double max_abs = 0.0, worst_excess = 0.0, worst_at = table.grid.front();
    bool ok = true;
    for (std::size_t i = 0; i < table.grid.size(); ++i) {
      const double e = table.engine[i][f], o = table.oracle[i][f];
      max_abs = std::max(max_abs, std::abs(e - o));
      const double allowed = std::max(rel * std::abs(o), abs);
      const double excess = allowed > 0.0 ? std::abs(e - o) / allowed : (e == o ? 0.0 : INFINITY);
      if (!agrees(e, o, rel, abs)) ok = false;
      if (excess > worst_excess) {
        worst_excess = excess;
        worst_at = table.grid[i];
      }
    }
    pass = pass && ok;
    fields.push_back({{"field", std::string(kLedgerFieldNames[f])},
                      {"max_abs_diff", max_abs},
                      {"worst_excess", std::isfinite(worst_excess) ? ordered_json(worst_excess)
                                                                   : ordered_json("inf")},
                      {"worst_at", worst_at},
                      {"ok", ok}});
  }

  ordered_json j;
  j["variable"] = table.variable;
  j["points"] = table.grid.size();
  j["oracle_rel"] = rel;
  j["oracle_abs"] = abs;
  j["fields"] = fields;
  j["pass"] = pass;
  emit(config, j.dump(2) + "\n", out);
  if (!pass) err << "compare: engine and oracle disagree beyond tolerance\n";
  return pass ? kExitOk : kExitFailure;
}

int cmd_audit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const AuditReport report = run_audit(config);
  const std::string text = report.text();
  if (!config.output.empty()) write_file(config.output, text);
  out << text;
  if (!report.pass()) err << "audit: invariant failure for seed " << config.seed << "\n";
  return report.pass() ? kExitOk : kExitFailure;
}

int execute(const Invocation& call, std::ostream& out, std::ostream& err) {
  try {
    RunConfig config = load_config(call.config_path);
    if (config.mode && !compatible(*config.mode, call.mode)) {
      throw ConfigError("config was written for a different subcommand");
    }
    if (call.seed) config.seed = *call.seed;
    if (call.out) config.output = *call.out;
    for (const auto& assignment : call.tolerance_overrides) {
      apply_tolerance_override(config, assignment);
    }
    switch (call.mode) {
      case Mode::Run:
        return cmd_run(config, out, err);
      case Mode::Sweep:
        return cmd_sweep(config, out, err);
      case Mode::Audit:
        return cmd_audit(config, out, err);
      case Mode::Compare:
        return cmd_compare(config, out, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidSpec& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace qthermo::cli
