#include "qthermo/thermo.hpp"

#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {
namespace {

void require_bipartite(const Operator& h_sur, const Operator& h_r) {
  if (h_sur.factor_count() != 2) {
    throw BadFactorCount("global Hamiltonian must carry dims {dS, dR}");
  }
  if (h_sur.dims()[1] != h_r.side()) {
    throw DimensionMismatch("reservoir Hamiltonian side " + std::to_string(h_r.side()) +
                            " does not match reservoir factor " + std::to_string(h_sur.dims()[1]));
  }
}

// Tr_R e^{-beta (H - shift)} together with the shift (the minimum eigenvalue).
struct ShiftedReducedWeight {
  Operator weight;
  double shift;
};

ShiftedReducedWeight reduced_weight(const Operator& h_sur, double beta) {
  const auto eig = hermitian_eig(h_sur);
  const double shift = eig.eigenvalues(0);
  auto boltzmann = eig.apply([&](double e) { return std::exp(-beta * (e - shift)); });
  return {partial_trace(boltzmann, Factor::S).hermitian_part(), shift};
}

// beta * H*(beta) = -ln Tr_R e^{-beta H} + ln Z_R(beta).
Operator scaled_mean_force(const Operator& h_sur, const Operator& h_r, double beta) {
  const auto [weight, shift] = reduced_weight(h_sur, beta);
  const auto eig = hermitian_eig(weight);
  if (eig.eigenvalues(0) <= 0.0) {
    throw NotPositiveDefinite("Tr_R e^{-beta H} has eigenvalue " +
                              std::to_string(eig.eigenvalues(0)));
  }
  const double log_z_r = log_partition(h_r, InverseTemperature(beta));
  const double offset = beta * shift + log_z_r;
  return eig.apply([&](double w) { return -std::log(w) + offset; }).hermitian_part();
}

}  // namespace

InverseTemperature::InverseTemperature(double beta) : beta_(beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw InvalidSpec("inverse temperature must be finite and positive, got " +
                      std::to_string(beta));
  }
}

double log_partition(const Operator& h, InverseTemperature beta) {
  const auto eig = hermitian_eig(h);
  const double shift = eig.eigenvalues(0);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    sum += std::exp(-beta.value() * (eig.eigenvalues(i) - shift));
  }
  return std::log(sum) - beta.value() * shift;
}

GibbsEnsemble gibbs(const Operator& h, InverseTemperature beta) {
  const auto eig = hermitian_eig(h);
  const double shift = eig.eigenvalues(0);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    sum += std::exp(-beta.value() * (eig.eigenvalues(i) - shift));
  }
  auto state = eig.apply([&](double e) { return std::exp(-beta.value() * (e - shift)) / sum; });
  return {h, beta, DensityMatrix(state.hermitian_part()), std::log(sum) - beta.value() * shift};
}

Operator mean_force_hamiltonian(const Operator& h_sur, const Operator& h_r,
                                InverseTemperature beta) {
  require_bipartite(h_sur, h_r);
  return scaled_mean_force(h_sur, h_r, beta.value()) * (1.0 / beta.value());
}

Operator effective_energy_operator(const Operator& h_sur, const Operator& h_r,
                                   InverseTemperature beta, EnergyOperatorOptions options) {
  require_bipartite(h_sur, h_r);
  const double b = beta.value();
  const double step = options.step.value_or(b * 1e-4);
  if (!(step > 0.0)) throw StepTooLarge("finite-difference step must be positive");
  if (step >= b) {
    throw StepTooLarge("finite-difference step " + std::to_string(step) +
                       " must be smaller than beta " + std::to_string(b));
  }
  auto central = [&](double h) {
    return (scaled_mean_force(h_sur, h_r, b + h) - scaled_mean_force(h_sur, h_r, b - h)) *
           (1.0 / (2.0 * h));
  };
  if (!options.richardson) return central(step).hermitian_part();
  const Operator coarse = central(step);
  const Operator fine = central(0.5 * step);
  return ((4.0 * fine - coarse) * (1.0 / 3.0)).hermitian_part();
}

Operator effective_energy_operator_quotient(const Operator& h_sur, const Operator& h_r,
                                            InverseTemperature beta) {
  require_bipartite(h_sur, h_r);
  const auto eig = hermitian_eig(h_sur);
  const double shift = eig.eigenvalues(0);
  const auto boltzmann = eig.apply([&](double e) { return std::exp(-beta.value() * (e - shift)); });
  const Operator weight = partial_trace(boltzmann, Factor::S);
  const Operator energy_weight = partial_trace(h_sur * boltzmann, Factor::S);
  Matrix quotient = energy_weight.matrix() * weight.matrix().inverse();
  const double u_r = reservoir_bare_energy(h_r, beta);
  quotient -= u_r * Matrix::Identity(quotient.rows(), quotient.cols());
  return Operator(std::move(quotient));
}

MeanForceBundle mean_force_bundle(const Operator& h_sur, const Operator& h_r,
                                  InverseTemperature beta, EnergyOperatorOptions options) {
  Operator h_star = mean_force_hamiltonian(h_sur, h_r, beta);
  Operator e_star = effective_energy_operator(h_sur, h_r, beta, options);
  const double log_z_star = log_partition(h_star, beta);
  return {std::move(h_star), std::move(e_star), log_z_star, -log_z_star / beta.value()};
}

double reservoir_bare_energy(const Operator& h_r, InverseTemperature beta) {
  return expectation(h_r, gibbs(h_r, beta).state.op());
}

double internal_energy_diff(const DensityMatrix& rho_sur, const Operator& h_sur,
                            const Operator& h_r, InverseTemperature beta) {
  require_bipartite(h_sur, h_r);
  if (rho_sur.op().side() != h_sur.side()) {
    throw DimensionMismatch("state and Hamiltonian sides differ");
  }
  return expectation(h_sur, rho_sur.op()) - reservoir_bare_energy(h_r, beta);
}

double internal_energy_hstar(const DensityMatrix& rho_s, const Operator& h_star) {
  if (rho_s.op().side() != h_star.side()) {
    throw DimensionMismatch("reduced state and H* sides differ");
  }
  return expectation(h_star, rho_s.op());
}

double internal_energy_estar(const DensityMatrix& rho_s, const Operator& e_star) {
  if (rho_s.op().side() != e_star.side()) {
    throw DimensionMismatch("reduced state and E* sides differ");
  }
  return expectation(e_star, rho_s.op());
}

FreeEnergies free_energies(const Operator& h_sur, const Operator& h_r, InverseTemperature beta) {
  require_bipartite(h_sur, h_r);
  const double b = beta.value();
  const double log_z_sur = log_partition(h_sur, beta);
  const double log_z_star = log_partition(mean_force_hamiltonian(h_sur, h_r, beta), beta);
  const double log_z_r = log_partition(h_r, beta);
  return {-log_z_sur / b, -log_z_star / b, -log_z_r / b};
}

double thermal_entropy(double u_s, double f_s, InverseTemperature beta) {
  return beta.value() * (u_s - f_s);
}

}  // namespace qthermo
