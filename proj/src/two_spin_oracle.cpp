#include "qthermo/two_spin_oracle.hpp"

#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo::two_spin {
namespace {

// sinh(x)/x, finite at x = 0.
double sinhc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

// One 2x2 block of the Hamiltonian: offset s*gamma + a sz + chi sx, where
// s = +1 couples {up-up, down-down} and s = -1 couples {up-down, down-up}.
struct Block {
  double a;
  double eta;
  double weight;  // e^{-beta s gamma}
  double c;       // cosh(beta eta)
  double sh;      // sinh(beta eta)
  double a_sh_over_eta;  // a sinh(beta eta) / eta
};

struct Spectrum {
  double beta;
  double gamma;
  Block plus;   // s = +1, a_+ = (eps + alpha)/2
  Block minus;  // s = -1, a_- = (eps - alpha)/2
};

Block make_block(double a, double chi, double s, double gamma, double beta) {
  const double eta = std::hypot(a, chi);
  return {a,
          eta,
          std::exp(-beta * s * gamma),
          std::cosh(beta * eta),
          std::sinh(beta * eta),
          a * beta * sinhc(beta * eta)};
}

Spectrum spectrum(double eps, double alpha, double gamma, double chi, double beta) {
  return {beta, gamma, make_block(0.5 * (eps + alpha), chi, +1.0, gamma, beta),
          make_block(0.5 * (eps - alpha), chi, -1.0, gamma, beta)};
}

// X_{sign}: sign = -1 gives X_-, sign = +1 gives X_+.
double x_weight(const Spectrum& sp, double sign) {
  return sp.plus.weight * (sp.plus.c + sign * sp.plus.a_sh_over_eta) +
         sp.minus.weight * (sp.minus.c + sign * sp.minus.a_sh_over_eta);
}

// Term-wise beta derivative of x_weight:
//   d/db [e^{-b s g} cosh(b eta)]       = e^{-b s g} [-s g cosh + eta sinh]
//   d/db [e^{-b s g} a sinh(b eta)/eta] = e^{-b s g} [-s g a sinh/eta + a cosh]
double x_weight_derivative(const Spectrum& sp, double sign) {
  auto term = [&](const Block& b, double s) {
    return b.weight * (-s * sp.gamma * (b.c + sign * b.a_sh_over_eta) + b.eta * b.sh +
                       sign * b.a * b.c);
  };
  return term(sp.plus, +1.0) + term(sp.minus, -1.0);
}

Statics statics_from(const Spectrum& sp, double alpha) {
  Statics st;
  st.x_minus = x_weight(sp, -1.0);
  st.x_plus = x_weight(sp, +1.0);
  st.d_beta_x_minus = x_weight_derivative(sp, -1.0);
  st.d_beta_x_plus = x_weight_derivative(sp, +1.0);
  st.z_sur = 2.0 * sp.plus.weight * sp.plus.c + 2.0 * sp.minus.weight * sp.minus.c;

  const double beta = sp.beta;
  const double z_r = 2.0 * std::cosh(0.5 * beta * alpha);
  const double reservoir_energy_term = 0.5 * alpha * std::tanh(0.5 * beta * alpha);
  st.h_star = {-std::log(st.x_minus / z_r) / beta, -std::log(st.x_plus / z_r) / beta};
  st.e_star = {-st.d_beta_x_minus / st.x_minus + reservoir_energy_term,
               -st.d_beta_x_plus / st.x_plus + reservoir_energy_term};
  return st;
}

void copy_statics(const Statics& st, OracleLedger& out) {
  out.z_sur = st.z_sur;
  out.x_minus = st.x_minus;
  out.x_plus = st.x_plus;
  out.d_beta_x_minus = st.d_beta_x_minus;
  out.d_beta_x_plus = st.d_beta_x_plus;
}

void fill_dissipated(OracleLedger& out) {
  out.dissipated = {out.work.diff - out.delta_f_s, out.work.hstar - out.delta_f_s,
                    out.work.estar - out.delta_f_s};
}

}  // namespace

void TwoSpinParams::validate() const {
  if (!std::isfinite(epsilon) || !std::isfinite(alpha) || !std::isfinite(gamma) ||
      !std::isfinite(chi)) {
    throw InvalidSpec("two-spin parameters must be finite");
  }
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw InvalidSpec("two-spin beta must be finite and positive, got " + std::to_string(beta));
  }
}

Statics closed_form_statics(const TwoSpinParams& p) {
  p.validate();
  return statics_from(spectrum(p.epsilon, p.alpha, p.gamma, p.chi, p.beta), p.alpha);
}

OracleLedger system_quench_ledger(const TwoSpinParams& p_a, double epsilon_b) {
  TwoSpinParams p_b = p_a;
  p_b.epsilon = epsilon_b;
  p_a.validate();
  p_b.validate();

  const double beta = p_a.beta;
  const double g = p_a.gamma;
  const double chi = p_a.chi;
  const Spectrum sa = spectrum(p_a.epsilon, p_a.alpha, g, chi, beta);
  const Spectrum sb = spectrum(p_b.epsilon, p_b.alpha, g, chi, beta);
  const Statics a = statics_from(sa, p_a.alpha);
  const Statics b = statics_from(sb, p_b.alpha);

  OracleLedger out;
  copy_statics(b, out);

  out.work.diff = (p_a.epsilon - epsilon_b) / a.z_sur *
                  (sa.plus.a_sh_over_eta * sa.plus.weight +
                   sa.minus.a_sh_over_eta * sa.minus.weight);
  out.work.hstar = -1.0 / (beta * a.z_sur) *
                   (a.x_minus * std::log(b.x_minus / a.x_minus) +
                    a.x_plus * std::log(b.x_plus / a.x_plus));
  out.work.estar = (a.d_beta_x_minus - a.x_minus / b.x_minus * b.d_beta_x_minus +
                    a.d_beta_x_plus - a.x_plus / b.x_plus * b.d_beta_x_plus) /
                   a.z_sur;

  // Tr(H^B pi^B) - Tr(H^B pi^A)
  const double final_energy =
      (2.0 * g * (sb.plus.weight * sb.plus.c - sb.minus.weight * sb.minus.c) -
       2.0 * sb.plus.eta * sb.plus.weight * sb.plus.sh -
       2.0 * sb.minus.eta * sb.minus.weight * sb.minus.sh) /
      b.z_sur;
  const double cross_plus = (sb.plus.a * sa.plus.a + chi * chi) * beta * sinhc(beta * sa.plus.eta);
  const double cross_minus =
      (sb.minus.a * sa.minus.a + chi * chi) * beta * sinhc(beta * sa.minus.eta);
  const double minus_initial_energy =
      (2.0 * g * (-sa.plus.weight * sa.plus.c + sa.minus.weight * sa.minus.c) +
       2.0 * sa.plus.weight * cross_plus + 2.0 * sa.minus.weight * cross_minus) /
      a.z_sur;
  out.heat.diff = final_energy + minus_initial_energy;

  const double shift_minus = a.x_minus / a.z_sur - b.x_minus / b.z_sur;
  const double shift_plus = a.x_plus / a.z_sur - b.x_plus / b.z_sur;
  out.heat.hstar =
      (shift_minus * std::log(b.x_minus) + shift_plus * std::log(b.x_plus)) / beta;
  out.heat.estar = shift_minus * b.d_beta_x_minus / b.x_minus +
                   shift_plus * b.d_beta_x_plus / b.x_plus;

  out.delta_f_s = -std::log(b.z_sur / a.z_sur) / beta;
  fill_dissipated(out);

  const double s_diff =
      -beta * ((b.d_beta_x_minus + b.d_beta_x_plus) / b.z_sur -
               (a.d_beta_x_minus + a.d_beta_x_plus) / a.z_sur) +
      std::log(b.z_sur / a.z_sur);
  auto mixing = [](double x, double z) { return x / z * std::log(z / x); };
  const double s_hstar = mixing(b.x_minus, b.z_sur) - mixing(a.x_minus, a.z_sur) +
                         mixing(b.x_plus, b.z_sur) - mixing(a.x_plus, a.z_sur);
  out.delta_s = {s_diff, s_hstar, s_diff};
  return out;
}

OracleLedger interaction_quench_ledger(double epsilon, double alpha, double gamma_b, double chi_b,
                                       double beta) {
  TwoSpinParams{epsilon, alpha, gamma_b, chi_b, beta}.validate();
  const double g = gamma_b;
  const Spectrum sb = spectrum(epsilon, alpha, g, chi_b, beta);
  const Statics b = statics_from(sb, alpha);

  OracleLedger out;
  copy_statics(b, out);

  const double half_eps = 0.5 * beta * epsilon;
  const double half_alpha = 0.5 * beta * alpha;
  const double ch_eps = std::cosh(half_eps);
  const double ch_alpha = std::cosh(half_alpha);
  const double sys_energy = 0.5 * epsilon * std::tanh(half_eps);     // -U_S^0
  const double res_energy = 0.5 * alpha * std::tanh(half_alpha);     // -U_R^0
  // Bare populations of sz_S = +1 and -1.
  const double p_up = std::exp(-half_eps) / (2.0 * ch_eps);
  const double p_down = std::exp(half_eps) / (2.0 * ch_eps);

  const double a_p = 0.5 * (epsilon + alpha);
  const double a_m = 0.5 * (epsilon - alpha);
  const double bracket = 2.0 * a_p * std::sinh(beta * a_p) - 2.0 * g * std::cosh(beta * a_p) +
                         2.0 * a_m * std::sinh(beta * a_m) + 2.0 * g * std::cosh(beta * a_m);
  const double bare_norm = 4.0 * ch_eps * ch_alpha;

  out.work.diff = sys_energy + res_energy - bracket / bare_norm;
  out.work.hstar =
      -1.0 / beta * (p_up * std::log(b.x_minus) + p_down * std::log(b.x_plus) -
                     std::log(2.0 * ch_alpha)) +
      sys_energy;
  out.work.estar = sys_energy + res_energy -
                   (p_up * b.d_beta_x_minus / b.x_minus + p_down * b.d_beta_x_plus / b.x_plus);

  out.heat.diff =
      (2.0 * g * (sb.plus.weight * sb.plus.c - sb.minus.weight * sb.minus.c) -
       2.0 * sb.plus.eta * sb.plus.weight * sb.plus.sh -
       2.0 * sb.minus.eta * sb.minus.weight * sb.minus.sh) /
          b.z_sur +
      bracket / bare_norm;
  out.heat.hstar = ((p_up - b.x_minus / b.z_sur) * std::log(b.x_minus) +
                    (p_down - b.x_plus / b.z_sur) * std::log(b.x_plus)) /
                   beta;
  out.heat.estar = (p_up / b.x_minus - 1.0 / b.z_sur) * b.d_beta_x_minus +
                   (p_down / b.x_plus - 1.0 / b.z_sur) * b.d_beta_x_plus;

  out.delta_f_s = -std::log(0.5 * b.z_sur / (2.0 * ch_eps * ch_alpha)) / beta;
  fill_dissipated(out);

  const double log_ratio = std::log(b.z_sur / bare_norm);
  const double s_diff = beta * sys_energy + beta * res_energy -
                        beta / b.z_sur * (b.d_beta_x_minus + b.d_beta_x_plus) + log_ratio;
  const double s_hstar = beta * sys_energy -
                         (b.x_minus * std::log(b.x_minus) + b.x_plus * std::log(b.x_plus)) /
                             b.z_sur +
                         std::log(2.0 * ch_alpha) + log_ratio;
  out.delta_s = {s_diff, s_hstar, s_diff};
  return out;
}

}  // namespace qthermo::two_spin
