#pragma once

// Dense operators on small multipartite Hilbert spaces.
//
// Tensor-factor convention: row-major with the first factor leading, so for
// dims {dS, dR} the basis index is s * dR + r.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace qthermo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

/// Max-norm tolerance used to accept an input as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

class Operator {
 public:
  Operator() = default;
  /// Takes a square matrix whose side equals the product of `dims`.
  Operator(Dims dims, Matrix matrix);
  /// Single-factor operator; dims = {rows}.
  explicit Operator(Matrix matrix);

  static Operator zero(Dims dims);
  static Operator identity(Dims dims);
  static Operator diagonal(std::initializer_list<double> entries);

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t side() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t factor_count() const { return dims_.size(); }

  Complex operator()(Eigen::Index row, Eigen::Index col) const { return matrix_(row, col); }

  Complex trace() const { return matrix_.trace(); }
  Operator adjoint() const { return {dims_, matrix_.adjoint()}; }
  /// max |a_ij|
  double max_norm() const;
  bool is_hermitian(double tol = kHermitianTolerance) const;
  /// (A + A^dagger) / 2
  Operator hermitian_part() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= Complex(s, 0.0); }
  friend Operator operator*(double s, Operator a) { return a *= Complex(s, 0.0); }
  /// Matrix product; dims must agree.
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Dims dims_;
  Matrix matrix_;
};

/// Max-norm distance between two operators of equal side.
double max_abs_diff(const Operator& a, const Operator& b);

/// Real part of Tr(a b); the operands are usually Hermitian.
double expectation(const Operator& observable, const Operator& state);

enum class PauliAxis { X, Y, Z };

Operator pauli(PauliAxis axis);

/// Kronecker product with dims = concat(a.dims, b.dims).
Operator tensor_product(const Operator& a, const Operator& b);

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // column i pairs with eigenvalues[i]
  Dims dims;

  Operator reconstruct() const;
  /// U f(Lambda) U^dagger
  Operator apply(const std::function<double(double)>& f) const;
};

/// Throws NotHermitian when ||A - A^dagger||_max exceeds kHermitianTolerance.
/// The matrix is symmetrized before decomposition.
SpectralDecomposition hermitian_eig(const Operator& a);

/// Throws DomainError if f is not finite on some eigenvalue.
Operator func_of_hermitian(const Operator& a, const std::function<double(double)>& f);

/// Matrix logarithm of a positive-definite Hermitian operator.
Operator log_positive(const Operator& a);

enum class Factor { S, R };

/// Traces out one factor of a bipartite operator (dims {dS, dR}).
Operator partial_trace(const Operator& o, Factor keep);

/// Validated density matrix: Hermitian, unit trace, PSD up to -1e-12.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kEigenvalueFloor = -1e-12;

  explicit DensityMatrix(Operator op);

  const Operator& op() const { return op_; }
  const Dims& dims() const { return op_.dims(); }
  double purity() const;

 private:
  Operator op_;
};

}  // namespace qthermo
