#ifndef SEPSPACE_DECOMPOSITION_HPP
#define SEPSPACE_DECOMPOSITION_HPP

#include <vector>

#include "sepspace/cross_norm.hpp"
#include "sepspace/dense_operator.hpp"
#include "sepspace/operator_basis.hpp"

namespace sepspace {

/// Convex product decomposition sum_k p_k A_k (x) B_k over generalized
/// (not necessarily positive) local operators. Factories guarantee the
/// invariants p_k >= 0, sum p_k = 1; `verify` and `diagnostics` accept
/// arbitrary field values so that broken inputs can be diagnosed rather
/// than rejected.
struct SeparableDecomposition {
  int dim_a = 0;
  int dim_b = 0;
  Eigen::VectorXd weights;
  std::vector<Matrix> a_ops;
  std::vector<Matrix> b_ops;

  int term_count() const { return static_cast<int>(weights.size()); }
};

/// Exact decomposition of the maximally entangled state over a verified
/// Hermitian basis: d^2 terms, p_k = 1/d^2, A_k = C_k and
/// B_k = C_k^T (transpose, no conjugation). Throws std::invalid_argument
/// if the basis fails verification or is not Hermitian.
SeparableDecomposition maxent_decomposition(const OperatorBasis& b);

/// Minimal decomposition of a bipartite pure state with Schmidt vector
/// lambda (zero coefficients truncated at 1e-12): d^2 terms indexed by
/// (s,t) with p_k = 1/d^2,
///   A_(s,t) = sum_ij sqrt(lambda_i lambda_j) w^(si+tj) |i><j|,
///   B_(s,t) = conj(A_(s,t)),   w = exp(2 pi i / d).
/// Every term has ||A_k||_2 ||B_k||_2 = (sum_i lambda_i)^2.
SeparableDecomposition pure_state_decomposition(const SchmidtVector& lambda);

/// sum_k p_k A_k (x) B_k.
Matrix reconstruct(const SeparableDecomposition& d);

struct VerifyReport {
  bool ok = false;
  double error = 0.0;      // Frobenius distance to the target
  double tolerance = 0.0;
};

/// Frobenius-distance check of the reconstruction against `target`.
VerifyReport verify(const SeparableDecomposition& d, const Matrix& target, double tol);

/// Diagnostics of a decomposition of the maximally entangled state
/// against a Hermitian orthogonal basis: expansion vectors alpha^k (from
/// A_k = sum alpha_i C_i) and beta^k (from B_k = sum (beta_j)* C_j^T),
/// the match matrix d^2 sum_k p_k alpha^k_i (beta^k_j)* compared with the
/// identity, the weighted inner-product sum (1 for an exact
/// decomposition), per-term norm products, and the proportionality
/// residual ||beta||^2 alpha - beta of the extremality argument.
struct DecompositionDiagnostics {
  double reconstruction_error = 0.0;  // vs maxent_state(dim)
  int term_count = 0;
  int distinct_a_count = 0;           // distinct up to 1e-10 Frobenius distance
  int distinct_b_count = 0;
  Eigen::VectorXd norm_products;
  double match_residual = 0.0;
  Complex vectorsep_sum;
  double proportionality_residual = 0.0;
  bool all_terms_extremal = false;    // every norm product = dim within 1e-9
};

DecompositionDiagnostics diagnostics(const SeparableDecomposition& d, const OperatorBasis& b);

/// Equivalent decomposition in which every local operator has 2-norm
/// sqrt(gamma), gamma = sum_k p_k ||A_k|| ||B_k|| of the input, with
/// weights rebalanced to p_k ||A_k|| ||B_k|| / gamma. Zero-weight terms
/// are dropped; a zero-norm operator in a weighted term is an input
/// error.
SeparableDecomposition equalize_norms(const SeparableDecomposition& d);

}  // namespace sepspace

#endif
