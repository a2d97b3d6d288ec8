#ifndef SEPSPACE_CROSS_NORM_HPP
#define SEPSPACE_CROSS_NORM_HPP

#include <vector>

#include "sepspace/dense_operator.hpp"

namespace sepspace {

struct SeparableDecomposition;

/// Nonincreasing nonnegative Schmidt coefficients with sum lambda_i^2 = 1.
struct SchmidtVector {
  Eigen::VectorXd values;
  int rank(double threshold = 1e-12) const;
};

/// Validates (nonnegative, normalized within 1e-10) and sorts the entries
/// nonincreasing. Throws std::invalid_argument otherwise.
SchmidtVector make_schmidt_vector(const Eigen::VectorXd& values);

/// Singular values of the dimA x dimB coefficient matrix of a unit-norm
/// pure state (row-major |a,b> layout), sorted nonincreasing.
SchmidtVector schmidt_coefficients(const Vector& state, int dim_a, int dim_b);

/// Projector onto sum_i lambda_i |ii> in C^d x C^d, d = lambda count.
Matrix schmidt_state(const SchmidtVector& lambda);

/// Pure-state projective tensor norm under the 2-norm: (sum_i lambda_i)^2,
/// the minimal product size of local state spaces rendering the state
/// separable.
double gamma2_pure(const SchmidtVector& lambda);

struct CrossNormBound {
  double sum = 0.0;  // sum_k p_k ||A_k||_2 ||B_k||_2
  double max = 0.0;  // max_k ||A_k||_2 ||B_k||_2
};

/// Upper bounds on the cross norm supplied by a concrete decomposition;
/// sum <= max always, and both equal the exact value on the factory
/// decompositions.
CrossNormBound decomposition_cross_bound(const SeparableDecomposition& d);

/// Product size of the convex hulls generated by two operator lists:
/// (max_i ||genA_i||_2) * (max_j ||genB_j||_2). Convexity of the 2-norm
/// makes the generator maximum equal to the set supremum.
double product_size(const std::vector<Matrix>& gen_a, const std::vector<Matrix>& gen_b);

}  // namespace sepspace

#endif
