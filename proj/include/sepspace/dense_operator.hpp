#ifndef SEPSPACE_DENSE_OPERATOR_HPP
#define SEPSPACE_DENSE_OPERATOR_HPP

#include <complex>

#include <Eigen/Dense>

namespace sepspace {

using Complex = std::complex<double>;
/// Dense d x d complex matrix: the universal carrier for states, basis
/// elements and measurement operators. Dimensions stay small (d <= ~64),
/// so everything is dense double precision.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Relative Hermiticity test: max|X - X^dag| <= 1e-12 * (1 + ||X||_2).
bool is_hermitian(const Matrix& x);

/// Hilbert-Schmidt pairing tr(X Y^dag). Throws std::invalid_argument on
/// dimension mismatch.
Complex hs_inner(const Matrix& x, const Matrix& y);

/// 2-norm sqrt(tr(X X^dag)).
double frobenius_norm(const Matrix& x);

/// Sum of singular values; for Hermitian input computed from eigenvalues.
double trace_norm(const Matrix& x);

/// (||X||_1 - Re tr X) / 2 for Hermitian X: the absolute sum of the
/// negative eigenvalues. Throws std::invalid_argument for non-Hermitian
/// input.
double negativity(const Matrix& x);

/// Kronecker product, dim = x.dim * y.dim.
Matrix tensor_product(const Matrix& x, const Matrix& y);

/// Projector onto (1/sqrt(d)) sum_j |jj>, a d^2 x d^2 matrix with entries
/// 1/d at ((i,i),(j,j)). Throws std::invalid_argument for d < 1.
Matrix maxent_state(int d);

/// Qubit operator (1/2)(I + r . sigma). The Bloch vector may lie outside
/// the unit ball (cube vertices are legal non-quantum operators).
Matrix bloch_operator(const Eigen::Vector3d& r);

/// Eigenvalues of a Hermitian operator, sorted nonincreasing.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& x);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace sepspace

#endif
