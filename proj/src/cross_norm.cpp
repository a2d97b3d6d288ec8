#include "sepspace/cross_norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "sepspace/decomposition.hpp"

namespace sepspace {

int SchmidtVector::rank(double threshold) const {
  int r = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > threshold) ++r;
  }
  return r;
}

SchmidtVector make_schmidt_vector(const Eigen::VectorXd& values) {
  if (values.size() < 1) {
    throw std::invalid_argument("make_schmidt_vector: empty coefficient list");
  }
  if (values.minCoeff() < 0.0) {
    throw std::invalid_argument("make_schmidt_vector: coefficients must be nonnegative");
  }
  if (std::abs(values.squaredNorm() - 1.0) > 1e-10) {
    throw std::invalid_argument("make_schmidt_vector: sum of squares must be 1 within 1e-10");
  }
  SchmidtVector out;
  out.values = values;
  std::sort(out.values.data(), out.values.data() + out.values.size(), std::greater<double>());
  return out;
}

SchmidtVector schmidt_coefficients(const Vector& state, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1 || state.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw std::invalid_argument("schmidt_coefficients: state length must equal dimA*dimB");
  }
  if (std::abs(state.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("schmidt_coefficients: state must have unit norm within 1e-10");
  }
  Matrix coeff(dim_a, dim_b);
  for (int a = 0; a < dim_a; ++a) {
    for (int b = 0; b < dim_b; ++b) {
      coeff(a, b) = state(static_cast<Eigen::Index>(a) * dim_b + b);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(coeff);
  SchmidtVector out;
  out.values = svd.singularValues();  // nonincreasing by construction
  return out;
}

Matrix schmidt_state(const SchmidtVector& lambda) {
  const int d = static_cast<int>(lambda.values.size());
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    psi(static_cast<Eigen::Index>(i) * d + i) = lambda.values(i);
  }
  return psi * psi.adjoint();
}

double gamma2_pure(const SchmidtVector& lambda) {
  const double s = lambda.values.sum();
  return s * s;
}

CrossNormBound decomposition_cross_bound(const SeparableDecomposition& d) {
  CrossNormBound bound;
  for (int k = 0; k < d.term_count(); ++k) {
    const double prod = frobenius_norm(d.a_ops[static_cast<std::size_t>(k)]) *
                        frobenius_norm(d.b_ops[static_cast<std::size_t>(k)]);
    bound.sum += d.weights(k) * prod;
    bound.max = std::max(bound.max, prod);
  }
  return bound;
}

double product_size(const std::vector<Matrix>& gen_a, const std::vector<Matrix>& gen_b) {
  if (gen_a.empty() || gen_b.empty()) {
    throw std::invalid_argument("product_size: generator lists must be nonempty");
  }
  double max_a = 0.0, max_b = 0.0;
  for (const Matrix& g : gen_a) max_a = std::max(max_a, frobenius_norm(g));
  for (const Matrix& g : gen_b) max_b = std::max(max_b, frobenius_norm(g));
  return max_a * max_b;
}

}  // namespace sepspace
