#pragma once

// Seeded batch checks of the equilibrium and quench invariants on random
// Hamiltonians. Deterministic for a given seed and configuration.

#include <string>
#include <vector>

#include "qthermo/cli/config.hpp"

namespace qthermo::cli {

struct InvariantResult {
  std::string suite;
  std::string name;
  double worst = 0.0;      // largest residual seen
  double tolerance = 0.0;
  std::string worst_case;  // seed, draw index and parameters of the worst draw
  bool pass() const { return worst <= tolerance; }
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::vector<InvariantResult> results;

  bool pass() const;
  /// One line per invariant; failing ones are followed by their worst case.
  std::string text() const;
};

AuditReport run_audit(const RunConfig& config);

}  // namespace qthermo::cli
