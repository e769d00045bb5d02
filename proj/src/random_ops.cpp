#include "qthermo/random_ops.hpp"

namespace qthermo::random {

Rng stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Operator hermitian(Rng& rng, std::size_t dim, double scale) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = uniform(rng, -scale, scale);
      const double im = uniform(rng, -scale, scale);
      g(i, j) = Complex(re, im);
    }
  }
  return Operator(Matrix(0.5 * (g + g.adjoint())));
}

Operator diagonal(Rng& rng, std::size_t dim, double scale) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = uniform(rng, -scale, scale);
  return Operator(std::move(m));
}

Operator block_diagonal_interaction(Rng& rng, std::size_t d_s, std::size_t d_r, double scale) {
  Operator v = Operator::zero({d_s, d_r});
  for (std::size_t k = 0; k < d_s; ++k) {
    Matrix p = Matrix::Zero(static_cast<Eigen::Index>(d_s), static_cast<Eigen::Index>(d_s));
    p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    v += tensor_product(Operator(std::move(p)), hermitian(rng, d_r, scale));
  }
  return v;
}

QuenchSpec quench(Rng& rng, QuenchKind kind, const QuenchDraw& draw) {
  const InverseTemperature beta(draw.beta);
  const Operator h_r = hermitian(rng, draw.d_r, 1.0);
  const Operator h_s_a = hermitian(rng, draw.d_s, 1.0);
  const Operator v_a = hermitian(rng, draw.d_s * draw.d_r, draw.coupling_scale);
  switch (kind) {
    case QuenchKind::SystemQuench: {
      const Operator h_s_b = hermitian(rng, draw.d_s, 1.0);
      return make_system_quench(h_s_a, h_s_b, h_r, v_a, beta);
    }
    case QuenchKind::InteractionQuench:
      return make_interaction_quench(h_s_a, h_r, v_a, beta);
    case QuenchKind::General:
      break;
  }
  const Operator h_s_b = hermitian(rng, draw.d_s, 1.0);
  const Operator v_b = hermitian(rng, draw.d_s * draw.d_r, draw.coupling_scale);
  QuenchSpec spec{bipartite_hamiltonian(h_s_a, h_r, v_a), bipartite_hamiltonian(h_s_b, h_r, v_b),
                  h_r, beta, QuenchKind::General};
  validate(spec);
  return spec;
}

QuenchSpec commuting_system_quench(Rng& rng, const QuenchDraw& draw) {
  const InverseTemperature beta(draw.beta);
  const Operator h_r = hermitian(rng, draw.d_r, 1.0);
  const Operator h_s_a = diagonal(rng, draw.d_s, 1.0);
  const Operator h_s_b = diagonal(rng, draw.d_s, 1.0);
  const Operator v = block_diagonal_interaction(rng, draw.d_s, draw.d_r, draw.coupling_scale);
  return make_system_quench(h_s_a, h_s_b, h_r, v, beta);
}

two_spin::TwoSpinParams two_spin_params(Rng& rng) {
  two_spin::TwoSpinParams p;
  p.epsilon = uniform(rng, -3.0, 3.0);
  p.alpha = uniform(rng, -3.0, 3.0);
  p.gamma = uniform(rng, -2.0, 2.0);
  p.chi = uniform(rng, -2.0, 2.0);
  p.beta = uniform(rng, 0.3, 2.0);
  return p;
}

}  // namespace qthermo::random
