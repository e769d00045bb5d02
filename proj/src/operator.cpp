#include "qthermo/operator.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "qthermo/errors.hpp"

namespace qthermo {
namespace {

std::size_t side_of(const Matrix& m) { return static_cast<std::size_t>(m.rows()); }

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_shape(const Dims& dims, const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("operator matrix is not square");
  for (auto d : dims) {
    if (d == 0) throw DimensionMismatch("subsystem dimension must be positive");
  }
  if (dims.empty() || product(dims) != side_of(m)) {
    throw DimensionMismatch("product of dims does not match matrix side");
  }
}

void require_same_side(const Operator& a, const Operator& b, const char* what) {
  if (a.side() != b.side()) {
    throw DimensionMismatch(std::string(what) + ": side " + std::to_string(a.side()) + " vs " +
                            std::to_string(b.side()));
  }
}

}  // namespace

Operator::Operator(Dims dims, Matrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  check_shape(dims_, matrix_);
}

// dims_ is declared before matrix_, so it is initialized before the move.
Operator::Operator(Matrix matrix) : dims_{side_of(matrix)}, matrix_(std::move(matrix)) {
  check_shape(dims_, matrix_);
}

Operator Operator::zero(Dims dims) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  return {std::move(dims), Matrix::Zero(n, n)};
}

Operator Operator::identity(Dims dims) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  return {std::move(dims), Matrix::Identity(n, n)};
}

Operator Operator::diagonal(std::initializer_list<double> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double e : entries) {
    m(i, i) = e;
    ++i;
  }
  return Operator(std::move(m));
}

double Operator::max_norm() const {
  return matrix_.size() == 0 ? 0.0 : matrix_.cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double tol) const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::hermitian_part() const {
  return {dims_, 0.5 * (matrix_ + matrix_.adjoint())};
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_side(*this, other, "operator+");
  matrix_ += other.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_side(*this, other, "operator-");
  matrix_ -= other.matrix_;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  matrix_ *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_side(a, b, "operator*");
  return {a.dims(), a.matrix() * b.matrix()};
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_side(a, b, "max_abs_diff");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

double expectation(const Operator& observable, const Operator& state) {
  require_same_side(observable, state, "expectation");
  // Tr(AB) = sum_ij A_ij B_ji
  return (observable.matrix().cwiseProduct(state.matrix().transpose())).sum().real();
}

Operator pauli(PauliAxis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case PauliAxis::X:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case PauliAxis::Y:
      m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
      break;
    case PauliAxis::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return Operator(std::move(m));
}

Operator tensor_product(const Operator& a, const Operator& b) {
  const auto na = a.matrix().rows();
  const auto nb = b.matrix().rows();
  Matrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return {std::move(dims), std::move(out)};
}

Operator SpectralDecomposition::reconstruct() const {
  return apply([](double x) { return x; });
}

Operator SpectralDecomposition::apply(const std::function<double(double)>& f) const {
  RealVector values(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    values(i) = f(eigenvalues(i));
    if (!std::isfinite(values(i))) {
      throw DomainError("function is not finite at eigenvalue " + std::to_string(eigenvalues(i)));
    }
  }
  Matrix m = eigenvectors * values.asDiagonal() * eigenvectors.adjoint();
  return {dims, std::move(m)};
}

SpectralDecomposition hermitian_eig(const Operator& a) {
  if (!a.is_hermitian()) {
    throw NotHermitian("operator is not Hermitian within " + std::to_string(kHermitianTolerance));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.hermitian_part().matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalBreakdown("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors(), a.dims()};
}

Operator func_of_hermitian(const Operator& a, const std::function<double(double)>& f) {
  return hermitian_eig(a).apply(f).hermitian_part();
}

Operator log_positive(const Operator& a) {
  const auto eig = hermitian_eig(a);
  if (eig.eigenvalues.size() > 0 && eig.eigenvalues(0) <= 0.0) {
    throw DomainError("logarithm of an operator with eigenvalue " +
                      std::to_string(eig.eigenvalues(0)));
  }
  return eig.apply([](double x) { return std::log(x); }).hermitian_part();
}

Operator partial_trace(const Operator& o, Factor keep) {
  if (o.factor_count() != 2) {
    throw BadFactorCount("partial trace needs a bipartite operator, got " +
                         std::to_string(o.factor_count()) + " factors");
  }
  const auto ds = static_cast<Eigen::Index>(o.dims()[0]);
  const auto dr = static_cast<Eigen::Index>(o.dims()[1]);
  const Matrix& m = o.matrix();
  if (keep == Factor::S) {
    Matrix out = Matrix::Zero(ds, ds);
    for (Eigen::Index i = 0; i < ds; ++i) {
      for (Eigen::Index j = 0; j < ds; ++j) {
        out(i, j) = m.block(i * dr, j * dr, dr, dr).trace();
      }
    }
    return Operator(std::move(out));
  }
  Matrix out = Matrix::Zero(dr, dr);
  for (Eigen::Index s = 0; s < ds; ++s) {
    out += m.block(s * dr, s * dr, dr, dr);
  }
  return Operator(std::move(out));
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  if (!op_.is_hermitian()) throw InvalidState("density matrix is not Hermitian");
  const double tr = op_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw InvalidState("density matrix trace is " + std::to_string(tr));
  }
  op_ = op_.hermitian_part();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op_.matrix(), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) < kEigenvalueFloor) {
    throw InvalidState("density matrix has eigenvalue " + std::to_string(solver.eigenvalues()(0)));
  }
}

double DensityMatrix::purity() const { return expectation(op_, op_); }

}  // namespace qthermo
