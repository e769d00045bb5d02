#pragma once

// Closed-form thermodynamics of the two-spin model
//
//   H = (eps/2) sz_S + (alpha/2) sz_R + gamma sz_S sz_R + chi sx_S sx_R.
//
// Pure scalar math; shares nothing with the operator engine, so it can serve
// as an independent reference for it.
//
// Spectrum: gamma +- eta_+ and -gamma +- eta_-, with
//   eta_+- = sqrt(a_+-^2 + chi^2),  a_+- = (eps +- alpha) / 2.
// Reduced equilibrium state in the sz_S eigenbasis (up, down) is
// diag(X_-, X_+) / Z with
//   X_+- = e^{-b g} [cosh(b eta_+) +- a_+ sinh(b eta_+)/eta_+]
//        + e^{+b g} [cosh(b eta_-) +- a_- sinh(b eta_-)/eta_-].

#include <array>

namespace qthermo::two_spin {

struct TwoSpinParams {
  double epsilon = 0.0;  // system field
  double alpha = 0.0;    // reservoir field
  double gamma = 0.0;    // zz coupling
  double chi = 0.0;      // xx coupling
  double beta = 1.0;

  /// Throws qthermo::InvalidSpec on non-finite fields or beta <= 0.
  void validate() const;
};

struct Statics {
  double z_sur = 0.0;
  double x_minus = 0.0;  // sz_S = +1 weight
  double x_plus = 0.0;   // sz_S = -1 weight
  double d_beta_x_minus = 0.0;
  double d_beta_x_plus = 0.0;
  std::array<double, 2> h_star{};  // diagonal of H* in the sz_S basis
  std::array<double, 2> e_star{};  // diagonal of E*
};

Statics closed_form_statics(const TwoSpinParams& p);

struct Triple {
  double diff = 0.0;
  double hstar = 0.0;
  double estar = 0.0;
};

struct OracleLedger {
  Triple work;
  Triple heat;
  double delta_f_s = 0.0;
  Triple dissipated;
  Triple delta_s;
  // Post-quench statics.
  double z_sur = 0.0;
  double x_minus = 0.0;
  double x_plus = 0.0;
  double d_beta_x_minus = 0.0;
  double d_beta_x_plus = 0.0;
};

/// eps: p_a.epsilon -> epsilon_b with alpha, gamma, chi, beta fixed; the
/// system ends in the post-quench global Gibbs state.
OracleLedger system_quench_ledger(const TwoSpinParams& p_a, double epsilon_b);

/// (gamma, chi): (0, 0) -> (gamma_b, chi_b) with eps, alpha, beta fixed.
OracleLedger interaction_quench_ledger(double epsilon, double alpha, double gamma_b, double chi_b,
                                       double beta);

}  // namespace qthermo::two_spin
