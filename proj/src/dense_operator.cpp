#include "sepspace/dense_operator.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace sepspace {

namespace {

void require_square(const Matrix& x, const char* what) {
  if (x.rows() < 1 || x.rows() != x.cols()) {
    throw std::invalid_argument(std::string(what) + ": operator must be a nonempty square matrix");
  }
}

}  // namespace

bool is_hermitian(const Matrix& x) {
  require_square(x, "is_hermitian");
  const double dev = (x - x.adjoint()).cwiseAbs().maxCoeff();
  return dev <= 1e-12 * (1.0 + frobenius_norm(x));
}

Complex hs_inner(const Matrix& x, const Matrix& y) {
  require_square(x, "hs_inner");
  require_square(y, "hs_inner");
  if (x.rows() != y.rows()) {
    throw std::invalid_argument("hs_inner: dimension mismatch");
  }
  return (x * y.adjoint()).trace();
}

double frobenius_norm(const Matrix& x) { return x.norm(); }

double trace_norm(const Matrix& x) {
  require_square(x, "trace_norm");
  if (is_hermitian(x)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double negativity(const Matrix& x) {
  require_square(x, "negativity");
  if (!is_hermitian(x)) {
    throw std::invalid_argument("negativity: input is not Hermitian");
  }
  return 0.5 * (trace_norm(x) - x.trace().real());
}

Matrix tensor_product(const Matrix& x, const Matrix& y) {
  return Eigen::kroneckerProduct(x, y).eval();
}

Matrix maxent_state(int d) {
  if (d < 1) {
    throw std::invalid_argument("maxent_state: dimension must be >= 1");
  }
  Vector phi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    phi(static_cast<Eigen::Index>(j) * d + j) = amp;
  }
  return phi * phi.adjoint();
}

Matrix bloch_operator(const Eigen::Vector3d& r) {
  Matrix rho(2, 2);
  rho << Complex(1.0 + r.z(), 0.0), Complex(r.x(), -r.y()),
         Complex(r.x(), r.y()),     Complex(1.0 - r.z(), 0.0);
  return 0.5 * rho;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& x) {
  require_square(x, "hermitian_eigenvalues");
  if (!is_hermitian(x)) {
    throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace sepspace
