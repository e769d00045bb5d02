#pragma once

// Sudden-quench processes on S (x) R and their work/heat/entropy ledgers.
//
// The global state starts in pi^A = e^{-beta H^A}/Z^A. At t = 0 the
// Hamiltonian jumps to H^B without changing the state; the jump is work. The
// state then relaxes (or evolves) under H^B until t_f; that change is heat.
// Each of the three internal-energy definitions (diff, H*, E*) yields its own
// work and heat.

#include <array>
#include <optional>
#include <variant>

#include "qthermo/operator.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {

/// Absolute tolerance on dissipated work when setting second-law flags.
inline constexpr double kSecondLawTolerance = 1e-9;
/// Dissipated work below -kViolationThreshold is reported as a violation.
inline constexpr double kViolationThreshold = 1e-6;
/// Allowed |W + Q - dU| for each definition.
inline constexpr double kFirstLawTolerance = 1e-9;

enum class QuenchKind { SystemQuench, InteractionQuench, General };

/// Final state is the post-quench global Gibbs state (a weakly coupled
/// super-reservoir is assumed, never modelled).
struct Equilibrated {};
/// Final state is e^{-i H^B t_f} pi^A e^{i H^B t_f}.
struct Unitary {
  double t_f;
};
using FinalMode = std::variant<Equilibrated, Unitary>;

struct QuenchSpec {
  Operator h_sur_a;  // pre-quench global Hamiltonian
  Operator h_sur_b;  // post-quench global Hamiltonian
  Operator h_r;      // bare reservoir Hamiltonian
  InverseTemperature beta;
  QuenchKind kind = QuenchKind::General;
  FinalMode final_mode = Equilibrated{};
  EnergyOperatorOptions energy_options = {};
};

/// H_S (x) 1 + 1 (x) H_R + V, with dims {dS, dR}.
Operator bipartite_hamiltonian(const Operator& h_s, const Operator& h_r, const Operator& v);

QuenchSpec make_system_quench(const Operator& h_s_a, const Operator& h_s_b, const Operator& h_r,
                              const Operator& v, InverseTemperature beta);
QuenchSpec make_interaction_quench(const Operator& h_s, const Operator& h_r, const Operator& v,
                                   InverseTemperature beta);

/// Throws InvalidSpec if dims disagree, inputs are not Hermitian, or the kind
/// tag does not match the structure of the two Hamiltonians.
void validate(const QuenchSpec& spec);

/// One value per internal-energy definition.
struct PerDefinition {
  double diff = 0.0;
  double hstar = 0.0;
  double estar = 0.0;

  std::array<double, 3> as_array() const { return {diff, hstar, estar}; }
};

using DefinitionFlags = std::array<bool, 3>;  // {diff, H*, E*}

struct ThermoLedger {
  double beta = 0.0;
  PerDefinition work;
  PerDefinition heat;
  PerDefinition u_initial;  // U(0^-)
  PerDefinition u_final;    // U(t_f)
  PerDefinition delta_u;
  double delta_f_s = 0.0;
  PerDefinition dissipated;  // W - dF_S
  /// Only reported when the final state is the equilibrium state.
  std::optional<PerDefinition> delta_s;
  double rel_entropy_global = 0.0;  // D(pi^A_SR || pi^B_SR)
  double rel_entropy_system = 0.0;  // D(pi^A_S || pi^B_S)
  DefinitionFlags second_law_w{};
  std::optional<DefinitionFlags> second_law_q;
};

ThermoLedger run_quench(const QuenchSpec& spec);

/// D(rho || sigma) = Tr rho (ln rho - ln sigma).
/// Throws SupportMismatch when sigma vanishes (<= 1e-14) where rho has weight > 1e-10.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

struct SecondLawAudit {
  DefinitionFlags w_flags{};
  /// Absent when the ledger has no equilibrium endpoint (unitary final mode).
  std::optional<DefinitionFlags> q_flags;
  double residual_diff = 0.0;   // |beta (W_diff - dF) - D(pi^A_SR || pi^B_SR)|
  double residual_hstar = 0.0;  // |beta (W_H* - dF) - D(pi^A_S || pi^B_S)|
};

SecondLawAudit second_law_audit(const ThermoLedger& ledger, double tol = kSecondLawTolerance);

/// e^{-iHt} rho e^{iHt}
DensityMatrix evolve_unitary(const DensityMatrix& rho, const Operator& h, double t);

}  // namespace qthermo
