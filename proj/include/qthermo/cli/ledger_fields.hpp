#pragma once

// Flat, named view of a quench ledger so engine and oracle results can be
// written side by side and compared field by field.

#include <array>
#include <cstddef>
#include <string_view>

#include "qthermo/quench.hpp"
#include "qthermo/two_spin_oracle.hpp"

namespace qthermo::cli {

inline constexpr std::size_t kLedgerFieldCount = 13;
using LedgerFields = std::array<double, kLedgerFieldCount>;

inline constexpr std::array<std::string_view, kLedgerFieldCount> kLedgerFieldNames{
    "w_diff",     "w_hstar",      "w_estar",       "q_diff",       "q_hstar",
    "q_estar",    "delta_f_s",    "diss_diff",     "diss_hstar",   "diss_estar",
    "delta_s_diff", "delta_s_hstar", "delta_s_estar"};

/// Entropy fields are NaN when the ledger carries none (unitary final mode).
LedgerFields fields_of(const ThermoLedger& ledger);
LedgerFields fields_of(const two_spin::OracleLedger& ledger);

/// |engine - oracle| <= max(rel |oracle|, abs)
bool agrees(double engine, double oracle, double rel, double abs);

struct FieldAgreement {
  std::size_t worst_field = 0;
  double worst_excess = 0.0;  // max over fields of |e - o| / max(rel |o|, abs)
  bool ok = true;
};

FieldAgreement compare_fields(const LedgerFields& engine, const LedgerFields& oracle, double rel,
                              double abs);

}  // namespace qthermo::cli
