#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qthermo/errors.hpp"
#include "qthermo/operator.hpp"
#include "qthermo/random_ops.hpp"
#include "qthermo/two_spin_model.hpp"

using namespace qthermo;

namespace {

Operator identity2() { return Operator::identity({2}); }

}  // namespace

TEST_CASE("pauli matrices") {
  const Operator z = pauli(PauliAxis::Z);
  CHECK(max_abs_diff(z, Operator::diagonal({1.0, -1.0})) == 0.0);

  const Operator x = pauli(PauliAxis::X);
  CHECK(x(0, 0) == Complex(0.0));
  CHECK(x(0, 1) == Complex(1.0));
  CHECK(x(1, 0) == Complex(1.0));

  for (auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    const Operator p = pauli(axis);
    CHECK(p.is_hermitian(0.0));
    CHECK(max_abs_diff(p * p, identity2()) == 0.0);
  }
}

TEST_CASE("tensor product") {
  CHECK(max_abs_diff(tensor_product(identity2(), identity2()), Operator::identity({4})) == 0.0);

  const Operator zz = tensor_product(pauli(PauliAxis::Z), pauli(PauliAxis::Z));
  CHECK(zz.dims() == Dims{2, 2});
  CHECK(max_abs_diff(zz, Operator::diagonal({1, -1, -1, 1})) == 0.0);

  CHECK(std::abs(tensor_product(pauli(PauliAxis::Z), pauli(PauliAxis::X)).trace()) == 0.0);

  auto rng = random::stream(7, 0);
  const Operator a = random::hermitian(rng, 2, 1.0);
  const Operator b = random::hermitian(rng, 3, 1.0);
  CHECK(std::abs(tensor_product(a, b).trace() - a.trace() * b.trace()) < 1e-14);
}

TEST_CASE("operator construction validates dims") {
  CHECK_THROWS_AS(Operator({2, 2}, Matrix::Zero(3, 3)), DimensionMismatch);
  CHECK_THROWS_AS(Operator({2}, Matrix::Zero(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(Operator({0, 2}, Matrix::Zero(0, 0)), DimensionMismatch);
}

TEST_CASE("hermitian_eig") {
  SUBCASE("diagonal input sorts ascending") {
    const auto eig = hermitian_eig(Operator::diagonal({3.0, 1.0, 2.0}));
    CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(eig.eigenvalues(1) == doctest::Approx(2.0));
    CHECK(eig.eigenvalues(2) == doctest::Approx(3.0));
  }
  SUBCASE("pauli x") {
    const auto eig = hermitian_eig(pauli(PauliAxis::X));
    CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(eig.eigenvalues(1) == doctest::Approx(1.0));
  }
  SUBCASE("two-spin spectrum matches gamma +- eta_+, -gamma +- eta_-") {
    const double eps = 0.7, alpha = 0.8, gamma = 1.2, chi = 1.8;
    const double eta_p = std::hypot(0.5 * eps + 0.5 * alpha, chi);
    const double eta_m = std::hypot(0.5 * eps - 0.5 * alpha, chi);
    std::vector<double> expected{gamma - eta_p, gamma + eta_p, -gamma - eta_m, -gamma + eta_m};
    std::sort(expected.begin(), expected.end());
    const auto eig = hermitian_eig(two_spin::hamiltonian(eps, alpha, gamma, chi));
    for (int i = 0; i < 4; ++i) CHECK(eig.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-13));
  }
  SUBCASE("rejects non-Hermitian input") {
    Matrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(hermitian_eig(Operator(m)), NotHermitian);
  }
  SUBCASE("accepts round-off asymmetry below 1e-12") {
    Matrix m(2, 2);
    m << 1.0, 0.5, 0.5 + 5e-13, -1.0;
    CHECK_NOTHROW(hermitian_eig(Operator(m)));
  }
}

TEST_CASE("hermitian_eig reconstruction over 1000 random matrices") {
  double worst_reconstruction = 0.0;
  double worst_unitarity = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = random::stream(2024, i);
    const auto side = static_cast<std::size_t>(2 + i % 15);
    const Operator a = random::hermitian(rng, side, 3.0);
    const auto eig = hermitian_eig(a);
    const double scale = std::max(1.0, a.max_norm());
    worst_reconstruction = std::max(worst_reconstruction, max_abs_diff(eig.reconstruct(), a) / scale);
    const Matrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    worst_unitarity = std::max(
        worst_unitarity,
        (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff());
    for (Eigen::Index k = 1; k < eig.eigenvalues.size(); ++k) {
      REQUIRE(eig.eigenvalues(k - 1) <= eig.eigenvalues(k));
    }
  }
  CHECK(worst_reconstruction <= 1e-10);
  CHECK(worst_unitarity <= 1e-10);
}

TEST_CASE("func_of_hermitian") {
  auto rng = random::stream(11, 0);
  const Operator a = random::hermitian(rng, 4, 1.0);

  CHECK(max_abs_diff(func_of_hermitian(a, [](double x) { return x; }), a) <= 1e-12);

  const Operator expa = func_of_hermitian(a, [](double x) { return std::exp(x); });
  CHECK(max_abs_diff(log_positive(expa), a) <= 1e-9);
  CHECK(max_abs_diff(expa * a, a * expa) <= 1e-10);

  const Operator ez = func_of_hermitian(pauli(PauliAxis::Z), [](double x) { return std::exp(-x); });
  CHECK(ez(0, 0).real() == doctest::Approx(std::exp(-1.0)));
  CHECK(ez(1, 1).real() == doctest::Approx(std::exp(1.0)));
  CHECK(std::abs(ez(0, 1)) < 1e-15);

  CHECK_THROWS_AS(log_positive(pauli(PauliAxis::Z)), DomainError);
  CHECK_THROWS_AS(func_of_hermitian(pauli(PauliAxis::Z), [](double x) { return std::log(x); }),
                  DomainError);
}

TEST_CASE("exponential of a Hermitian operator is positive definite") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = random::stream(5, i);
    const Operator a = random::hermitian(rng, 2 + i % 7, 5.0);
    const auto eig = hermitian_eig(func_of_hermitian(a, [](double x) { return std::exp(x); }));
    REQUIRE(eig.eigenvalues(0) > 0.0);
  }
}

TEST_CASE("partial_trace") {
  const Operator z_id = tensor_product(pauli(PauliAxis::Z), identity2());
  CHECK(max_abs_diff(partial_trace(z_id, Factor::S), 2.0 * pauli(PauliAxis::Z)) == 0.0);
  CHECK(max_abs_diff(partial_trace(z_id, Factor::R), Operator::zero({2})) == 0.0);

  // |Phi+> = (|00> + |11>)/sqrt 2
  Matrix bell = Matrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  const Operator projector({2, 2}, bell);
  CHECK(max_abs_diff(partial_trace(projector, Factor::S), 0.5 * identity2()) <= 1e-15);
  CHECK(max_abs_diff(partial_trace(projector, Factor::R), 0.5 * identity2()) <= 1e-15);

  CHECK_THROWS_AS(partial_trace(pauli(PauliAxis::X), Factor::S), BadFactorCount);
  const Operator three_factors = tensor_product(z_id, identity2());
  CHECK_THROWS_AS(partial_trace(three_factors, Factor::S), BadFactorCount);
}

TEST_CASE("partial trace of products and trace preservation") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = random::stream(99, i);
    const Operator a = random::hermitian(rng, 2, 1.0);
    const Operator b = random::hermitian(rng, 3, 1.0);
    const Operator ab = tensor_product(a, b);
    REQUIRE(max_abs_diff(partial_trace(ab, Factor::S), b.trace() * a) <= 1e-12);
    REQUIRE(max_abs_diff(partial_trace(ab, Factor::R), a.trace() * b) <= 1e-12);

    const Operator o({2, 3}, random::hermitian(rng, 6, 1.0).matrix());
    REQUIRE(std::abs(partial_trace(o, Factor::S).trace() - o.trace()) <= 1e-12);
    REQUIRE(std::abs(partial_trace(o, Factor::R).trace() - o.trace()) <= 1e-12);
  }
}

TEST_CASE("density matrix validation") {
  CHECK(DensityMatrix(0.5 * identity2()).purity() == doctest::Approx(0.5));
  CHECK_THROWS_AS(DensityMatrix{identity2()}, InvalidState);
  CHECK_THROWS_AS(DensityMatrix(Operator::diagonal({1.5, -0.5})), InvalidState);
  Matrix m(2, 2);
  m << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix(Operator(m)), InvalidState);
}
