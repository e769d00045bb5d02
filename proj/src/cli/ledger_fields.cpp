#include "qthermo/cli/ledger_fields.hpp"

#include <cmath>
#include <limits>

namespace qthermo::cli {

LedgerFields fields_of(const ThermoLedger& l) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const PerDefinition s = l.delta_s.value_or(PerDefinition{nan, nan, nan});
  return {l.work.diff,       l.work.hstar,       l.work.estar,      l.heat.diff, l.heat.hstar,
          l.heat.estar,      l.delta_f_s,        l.dissipated.diff, l.dissipated.hstar,
          l.dissipated.estar, s.diff,            s.hstar,           s.estar};
}

LedgerFields fields_of(const two_spin::OracleLedger& l) {
  return {l.work.diff,        l.work.hstar,      l.work.estar,      l.heat.diff, l.heat.hstar,
          l.heat.estar,       l.delta_f_s,       l.dissipated.diff, l.dissipated.hstar,
          l.dissipated.estar, l.delta_s.diff,    l.delta_s.hstar,   l.delta_s.estar};
}

bool agrees(double engine, double oracle, double rel, double abs) {
  return std::abs(engine - oracle) <= std::max(rel * std::abs(oracle), abs);
}

FieldAgreement compare_fields(const LedgerFields& engine, const LedgerFields& oracle, double rel,
                              double abs) {
  FieldAgreement out;
  for (std::size_t i = 0; i < kLedgerFieldCount; ++i) {
    const double allowed = std::max(rel * std::abs(oracle[i]), abs);
    const double gap = std::abs(engine[i] - oracle[i]);
    // NaN gaps count as failures.
    const double excess = allowed > 0.0 ? gap / allowed
                                        : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    if (!(excess <= 1.0)) out.ok = false;
    if (!(excess <= out.worst_excess)) {
      out.worst_excess = std::isnan(excess) ? std::numeric_limits<double>::infinity() : excess;
      out.worst_field = i;
    }
  }
  return out;
}

}  // namespace qthermo::cli
