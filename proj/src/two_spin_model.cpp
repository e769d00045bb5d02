#include "qthermo/two_spin_model.hpp"

#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo::two_spin {
namespace {

Operator coupling(PauliAxis axis) { return tensor_product(pauli(axis), pauli(axis)); }

}  // namespace

Operator hamiltonian(double epsilon, double alpha, double gamma, double chi) {
  return bipartite_hamiltonian(system_hamiltonian(epsilon), reservoir_hamiltonian(alpha),
                               gamma * coupling(PauliAxis::Z) + chi * coupling(PauliAxis::X));
}

Operator hamiltonian(const TwoSpinParams& p) {
  return hamiltonian(p.epsilon, p.alpha, p.gamma, p.chi);
}

Operator system_hamiltonian(double epsilon) { return 0.5 * epsilon * pauli(PauliAxis::Z); }

Operator reservoir_hamiltonian(double alpha) { return 0.5 * alpha * pauli(PauliAxis::Z); }

Operator build_lgt_hamiltonian(double epsilon, double alpha, double chi, double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw InvalidSpec("gauge penalty k must be finite and non-negative, got " + std::to_string(k));
  }
  const Operator penalty = Operator::identity({2, 2}) - coupling(PauliAxis::Z);
  return hamiltonian(epsilon, alpha, 0.0, chi) + k * penalty;
}

QuenchSpec system_quench(const TwoSpinParams& p_a, double epsilon_b) {
  p_a.validate();
  const Operator v = p_a.gamma * coupling(PauliAxis::Z) + p_a.chi * coupling(PauliAxis::X);
  return make_system_quench(system_hamiltonian(p_a.epsilon), system_hamiltonian(epsilon_b),
                            reservoir_hamiltonian(p_a.alpha), v, InverseTemperature(p_a.beta));
}

QuenchSpec interaction_quench(double epsilon, double alpha, double gamma_b, double chi_b,
                              double beta) {
  const Operator v = gamma_b * coupling(PauliAxis::Z) + chi_b * coupling(PauliAxis::X);
  return make_interaction_quench(system_hamiltonian(epsilon), reservoir_hamiltonian(alpha), v,
                                 InverseTemperature(beta));
}

}  // namespace qthermo::two_spin
