#pragma once

// Equilibrium objects for a bipartite system S (x) R: Gibbs states, partition
// functions, the Hamiltonian of mean force H*, the effective energy operator
// E* = d(beta H*)/d(beta), and the three internal-energy definitions.
//
// k_B = 1 throughout; temperatures enter only through beta.

#include <optional>

#include "qthermo/operator.hpp"

namespace qthermo {

class InverseTemperature {
 public:
  /// Throws InvalidSpec unless beta is finite and positive.
  explicit InverseTemperature(double beta);
  double value() const { return beta_; }

 private:
  double beta_;
};

struct GibbsEnsemble {
  Operator hamiltonian;
  InverseTemperature beta;
  DensityMatrix state;
  double log_partition;  // ln Z
};

/// e^{-beta H} / Z. The spectrum is shifted by its minimum before
/// exponentiating, so ln Z stays finite for large beta ||H||.
GibbsEnsemble gibbs(const Operator& h, InverseTemperature beta);

/// ln Tr e^{-beta H}, shifted as in gibbs().
double log_partition(const Operator& h, InverseTemperature beta);

/// -(1/beta) [ ln Tr_R e^{-beta H_SR} - ln Z_R ].
/// Throws NotPositiveDefinite if Tr_R e^{-beta H_SR} loses positivity.
Operator mean_force_hamiltonian(const Operator& h_sur, const Operator& h_r, InverseTemperature beta);

struct EnergyOperatorOptions {
  /// Central-difference half width; defaults to beta * 1e-4.
  std::optional<double> step;
  /// Combine step and step/2 estimates as (4 D_{h/2} - D_h) / 3.
  bool richardson = true;
};

/// E* = d(beta H*)/d(beta) by central finite differences.
/// Throws StepTooLarge if step >= beta.
Operator effective_energy_operator(const Operator& h_sur, const Operator& h_r,
                                   InverseTemperature beta, EnergyOperatorOptions options = {});

/// Tr_R(H e^{-beta H}) [Tr_R e^{-beta H}]^{-1} - U_R^0.
///
/// Only equal to E* when Tr_R e^{-beta H} commutes with its beta derivative;
/// kept as a cross-check for such models.
Operator effective_energy_operator_quotient(const Operator& h_sur, const Operator& h_r,
                                            InverseTemperature beta);

struct MeanForceBundle {
  Operator h_star;
  Operator e_star;
  double log_z_star;  // ln Tr_S e^{-beta H*}
  double f_s;         // -(1/beta) ln Z*_S
};

MeanForceBundle mean_force_bundle(const Operator& h_sur, const Operator& h_r,
                                  InverseTemperature beta, EnergyOperatorOptions options = {});

/// Tr(H_SR rho_SR) - Tr(H_R pi_R^0), with pi_R^0 the bare reservoir Gibbs state at beta.
double internal_energy_diff(const DensityMatrix& rho_sur, const Operator& h_sur,
                            const Operator& h_r, InverseTemperature beta);

/// Tr_S(H* rho_S)
double internal_energy_hstar(const DensityMatrix& rho_s, const Operator& h_star);

/// Tr_S(E* rho_S)
double internal_energy_estar(const DensityMatrix& rho_s, const Operator& e_star);

/// Tr(H_R pi_R^0)
double reservoir_bare_energy(const Operator& h_r, InverseTemperature beta);

struct FreeEnergies {
  double sur;  // -(1/beta) ln Z_SR
  double s;    // -(1/beta) ln Z*_S
  double r;    // -(1/beta) ln Z_R
};

FreeEnergies free_energies(const Operator& h_sur, const Operator& h_r, InverseTemperature beta);

/// beta (U_S - F_S)
double thermal_entropy(double u_s, double f_s, InverseTemperature beta);

}  // namespace qthermo
