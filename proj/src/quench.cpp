#include "qthermo/quench.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {
namespace {

constexpr double kStructureTolerance = 1e-10;
constexpr double kSupportFloor = 1e-14;
constexpr double kWeightFloor = 1e-10;
constexpr double kNegativeClip = -1e-12;

// True if `delta` equals X (x) 1_R for some X.
bool acts_only_on_system(const Operator& delta) {
  const double dr = static_cast<double>(delta.dims()[1]);
  const Operator reduced = partial_trace(delta, Factor::S) * (1.0 / dr);
  const Operator lifted =
      tensor_product(reduced, Operator::identity({delta.dims()[1]}));
  return max_abs_diff(delta, lifted) <= kStructureTolerance * std::max(1.0, delta.max_norm());
}

DensityMatrix reduced_state(const DensityMatrix& rho_sur) {
  return DensityMatrix(partial_trace(rho_sur.op(), Factor::S).hermitian_part());
}

DefinitionFlags flags_at_least(const PerDefinition& values, double tol) {
  return {values.diff >= -tol, values.hstar >= -tol, values.estar >= -tol};
}

}  // namespace

Operator bipartite_hamiltonian(const Operator& h_s, const Operator& h_r, const Operator& v) {
  Operator h = tensor_product(h_s, Operator::identity(h_r.dims())) +
               tensor_product(Operator::identity(h_s.dims()), h_r);
  if (v.side() != h.side()) {
    throw DimensionMismatch("interaction side " + std::to_string(v.side()) +
                            " does not match " + std::to_string(h.side()));
  }
  return {{h_s.side(), h_r.side()}, h.matrix() + v.matrix()};
}

QuenchSpec make_system_quench(const Operator& h_s_a, const Operator& h_s_b, const Operator& h_r,
                              const Operator& v, InverseTemperature beta) {
  QuenchSpec spec{bipartite_hamiltonian(h_s_a, h_r, v), bipartite_hamiltonian(h_s_b, h_r, v), h_r,
                  beta, QuenchKind::SystemQuench};
  validate(spec);
  return spec;
}

QuenchSpec make_interaction_quench(const Operator& h_s, const Operator& h_r, const Operator& v,
                                   InverseTemperature beta) {
  const Operator zero = Operator::zero({h_s.side(), h_r.side()});
  QuenchSpec spec{bipartite_hamiltonian(h_s, h_r, zero), bipartite_hamiltonian(h_s, h_r, v), h_r,
                  beta, QuenchKind::InteractionQuench};
  validate(spec);
  return spec;
}

void validate(const QuenchSpec& spec) {
  const auto& a = spec.h_sur_a;
  const auto& b = spec.h_sur_b;
  if (a.factor_count() != 2 || a.dims() != b.dims()) {
    throw InvalidSpec("pre- and post-quench Hamiltonians must share bipartite dims");
  }
  if (spec.h_r.factor_count() != 1 || spec.h_r.side() != a.dims()[1]) {
    throw InvalidSpec("reservoir Hamiltonian does not match the reservoir factor");
  }
  if (!a.is_hermitian() || !b.is_hermitian() || !spec.h_r.is_hermitian()) {
    throw InvalidSpec("quench Hamiltonians must be Hermitian");
  }
  if (const auto* unitary = std::get_if<Unitary>(&spec.final_mode)) {
    if (!std::isfinite(unitary->t_f)) throw InvalidSpec("t_f must be finite");
  }
  switch (spec.kind) {
    case QuenchKind::SystemQuench:
      if (!acts_only_on_system(b - a)) {
        throw InvalidSpec("system quench changes more than the system Hamiltonian");
      }
      break;
    case QuenchKind::InteractionQuench: {
      const Operator bare_r = tensor_product(Operator::identity({a.dims()[0]}), spec.h_r);
      if (!acts_only_on_system(a - bare_r)) {
        throw InvalidSpec("interaction quench must start from an uncoupled Hamiltonian");
      }
      break;
    }
    case QuenchKind::General:
      break;
  }
}

ThermoLedger run_quench(const QuenchSpec& spec) {
  validate(spec);
  const auto beta = spec.beta;
  const auto& h_a = spec.h_sur_a;
  const auto& h_b = spec.h_sur_b;

  const GibbsEnsemble pi_a = gibbs(h_a, beta);
  const GibbsEnsemble pi_b = gibbs(h_b, beta);
  const MeanForceBundle mf_a = mean_force_bundle(h_a, spec.h_r, beta, spec.energy_options);
  const MeanForceBundle mf_b = mean_force_bundle(h_b, spec.h_r, beta, spec.energy_options);

  const bool equilibrated = std::holds_alternative<Equilibrated>(spec.final_mode);
  const DensityMatrix rho_final =
      equilibrated ? pi_b.state
                   : evolve_unitary(pi_a.state, h_b, std::get<Unitary>(spec.final_mode).t_f);

  const DensityMatrix pi_a_s = reduced_state(pi_a.state);
  const DensityMatrix pi_b_s = reduced_state(pi_b.state);
  const DensityMatrix rho_final_s = reduced_state(rho_final);
  const double u_r0 = reservoir_bare_energy(spec.h_r, beta);

  ThermoLedger ledger;
  ledger.beta = beta.value();

  // U(0^-) and U(t_f) for each definition.
  const PerDefinition u_before{
      expectation(h_a, pi_a.state.op()) - u_r0,
      internal_energy_hstar(pi_a_s, mf_a.h_star),
      internal_energy_estar(pi_a_s, mf_a.e_star)};
  const PerDefinition u_end{
      expectation(h_b, rho_final.op()) - u_r0,
      internal_energy_hstar(rho_final_s, mf_b.h_star),
      internal_energy_estar(rho_final_s, mf_b.e_star)};

  ledger.u_initial = u_before;
  ledger.u_final = u_end;
  ledger.work = {expectation(h_b - h_a, pi_a.state.op()),
                 expectation(mf_b.h_star - mf_a.h_star, pi_a_s.op()),
                 expectation(mf_b.e_star - mf_a.e_star, pi_a_s.op())};
  ledger.heat = {expectation(h_b, rho_final.op() - pi_a.state.op()),
                 expectation(mf_b.h_star, rho_final_s.op() - pi_a_s.op()),
                 expectation(mf_b.e_star, rho_final_s.op() - pi_a_s.op())};
  ledger.delta_u = {u_end.diff - u_before.diff, u_end.hstar - u_before.hstar,
                    u_end.estar - u_before.estar};

  const auto w = ledger.work.as_array();
  const auto q = ledger.heat.as_array();
  const auto du = ledger.delta_u.as_array();
  for (std::size_t i = 0; i < 3; ++i) {
    const double scale = std::max({1.0, std::abs(w[i]), std::abs(q[i])});
    if (std::abs(w[i] + q[i] - du[i]) > kFirstLawTolerance * scale) {
      throw NumericalBreakdown("first-law residual " + std::to_string(w[i] + q[i] - du[i]));
    }
  }

  ledger.delta_f_s = mf_b.f_s - mf_a.f_s;
  ledger.dissipated = {ledger.work.diff - ledger.delta_f_s, ledger.work.hstar - ledger.delta_f_s,
                       ledger.work.estar - ledger.delta_f_s};
  if (equilibrated) {
    const double b = beta.value();
    ledger.delta_s = PerDefinition{b * (ledger.delta_u.diff - ledger.delta_f_s),
                                   b * (ledger.delta_u.hstar - ledger.delta_f_s),
                                   b * (ledger.delta_u.estar - ledger.delta_f_s)};
  }

  ledger.rel_entropy_global = relative_entropy(pi_a.state, pi_b.state);
  ledger.rel_entropy_system = relative_entropy(pi_a_s, pi_b_s);

  const auto audit = second_law_audit(ledger);
  ledger.second_law_w = audit.w_flags;
  ledger.second_law_q = audit.q_flags;
  return ledger;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.op().side() != sigma.op().side()) {
    throw DimensionMismatch("relative entropy of states with different sides");
  }
  const auto rho_eig = hermitian_eig(rho.op());
  double neg_entropy = 0.0;
  for (Eigen::Index i = 0; i < rho_eig.eigenvalues.size(); ++i) {
    const double p = rho_eig.eigenvalues(i);
    if (p > 0.0) neg_entropy += p * std::log(p);
  }

  const auto sigma_eig = hermitian_eig(sigma.op());
  double cross = 0.0;
  for (Eigen::Index j = 0; j < sigma_eig.eigenvalues.size(); ++j) {
    const auto v = sigma_eig.eigenvectors.col(j);
    const double weight = (v.adjoint() * rho.op().matrix() * v)(0, 0).real();
    const double s = sigma_eig.eigenvalues(j);
    if (s <= kSupportFloor) {
      if (weight > kWeightFloor) {
        throw SupportMismatch("sigma vanishes where rho has weight " + std::to_string(weight));
      }
      continue;
    }
    cross += weight * std::log(s);
  }

  const double d = neg_entropy - cross;
  if (d < 0.0) {
    if (d >= kNegativeClip) return 0.0;
    throw NumericalBreakdown("relative entropy evaluated to " + std::to_string(d));
  }
  return d;
}

SecondLawAudit second_law_audit(const ThermoLedger& ledger, double tol) {
  SecondLawAudit audit;
  audit.w_flags = flags_at_least(ledger.dissipated, tol);
  if (ledger.delta_s) {
    const double inv_beta = 1.0 / ledger.beta;
    const PerDefinition slack{inv_beta * ledger.delta_s->diff - ledger.heat.diff,
                              inv_beta * ledger.delta_s->hstar - ledger.heat.hstar,
                              inv_beta * ledger.delta_s->estar - ledger.heat.estar};
    audit.q_flags = flags_at_least(slack, tol);
  }
  audit.residual_diff =
      std::abs(ledger.beta * ledger.dissipated.diff - ledger.rel_entropy_global);
  audit.residual_hstar =
      std::abs(ledger.beta * ledger.dissipated.hstar - ledger.rel_entropy_system);
  return audit;
}

DensityMatrix evolve_unitary(const DensityMatrix& rho, const Operator& h, double t) {
  if (rho.op().side() != h.side()) {
    throw DimensionMismatch("state and Hamiltonian sides differ");
  }
  const auto eig = hermitian_eig(h);
  Eigen::VectorXcd phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -eig.eigenvalues(i) * t);
  }
  const Matrix u = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
  Matrix evolved = u * rho.op().matrix() * u.adjoint();
  return DensityMatrix(Operator(rho.dims(), std::move(evolved)).hermitian_part());
}

}  // namespace qthermo
