#pragma once

// Operator-level builders for the two-spin model and its gauge-penalty variant.

#include "qthermo/operator.hpp"
#include "qthermo/quench.hpp"
#include "qthermo/two_spin_oracle.hpp"

namespace qthermo::two_spin {

/// (eps/2) sz_S + (alpha/2) sz_R + gamma sz_S sz_R + chi sx_S sx_R, dims {2, 2}.
Operator hamiltonian(double epsilon, double alpha, double gamma, double chi);
Operator hamiltonian(const TwoSpinParams& p);

/// (eps/2) sz
Operator system_hamiltonian(double epsilon);
/// (alpha/2) sz
Operator reservoir_hamiltonian(double alpha);

/// (eps/2) sz_S + (alpha/2) sz_R + chi sx_S sx_R + k (1 - sz_S sz_R).
/// Equals hamiltonian(eps, alpha, -k, chi) + k 1. Throws InvalidSpec if k < 0.
Operator build_lgt_hamiltonian(double epsilon, double alpha, double chi, double k);

/// Engine-side quench matching system_quench_ledger().
QuenchSpec system_quench(const TwoSpinParams& p_a, double epsilon_b);
/// Engine-side quench matching interaction_quench_ledger().
QuenchSpec interaction_quench(double epsilon, double alpha, double gamma_b, double chi_b,
                              double beta);

}  // namespace qthermo::two_spin
