#pragma once

// Seeded random Hamiltonians and quenches for property checks and audits.

#include <cstddef>
#include <cstdint>
#include <random>

#include "qthermo/operator.hpp"
#include "qthermo/quench.hpp"
#include "qthermo/two_spin_oracle.hpp"

namespace qthermo::random {

using Rng = std::mt19937_64;

/// Independent stream for draw `index` of a run seeded with `seed`.
Rng stream(std::uint64_t seed, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);

/// (G + G^dagger)/2 with G entries uniform in [-scale, scale] (real and imaginary parts).
Operator hermitian(Rng& rng, std::size_t dim, double scale);

/// Real diagonal with entries uniform in [-scale, scale].
Operator diagonal(Rng& rng, std::size_t dim, double scale);

/// sum_k |k><k|_S (x) B_k with random Hermitian B_k; commutes with every
/// system operator diagonal in the computational basis.
Operator block_diagonal_interaction(Rng& rng, std::size_t d_s, std::size_t d_r, double scale);

struct QuenchDraw {
  std::size_t d_s;
  std::size_t d_r;
  double beta;
  double coupling_scale;
};

QuenchSpec quench(Rng& rng, QuenchKind kind, const QuenchDraw& draw);

/// System quench whose H_S^A, H_S^B both commute with V.
QuenchSpec commuting_system_quench(Rng& rng, const QuenchDraw& draw);

/// eps, alpha uniform in [-3, 3]; gamma, chi in [-2, 2]; beta in [0.3, 2].
two_spin::TwoSpinParams two_spin_params(Rng& rng);

}  // namespace qthermo::random
