#ifndef SEPSPACE_OPERATOR_BASIS_HPP
#define SEPSPACE_OPERATOR_BASIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sepspace/dense_operator.hpp"
#include "sepspace/exec.hpp"

namespace sepspace {

enum class BasisKind {
  gell_mann,
  phase_point,
  unit_trace_random,
  positive_trace_random,
  matrix_unit,
  custom,
};

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

/// Ordered set of d^2 operators C_i with tr(C_i C_j^dag) = d delta_ij and
/// ||C_i||_2 = sqrt(d). Unit-trace kinds additionally have tr(C_i) = 1,
/// positive-trace kinds Re tr(C_i) > 0.
struct OperatorBasis {
  int dim = 0;
  BasisKind kind = BasisKind::custom;
  bool hermitian = false;
  std::vector<Matrix> operators;
};

/// Identity first, then for each index pair (j < k, row-major) the
/// symmetric and antisymmetric generators, then the diagonal generators,
/// all rescaled to 2-norm sqrt(d). At d = 2 this is {I, sx, sy, sz}.
OperatorBasis gell_mann_basis(int d);

/// Discrete Wigner phase-point operators A_(q,p) for prime d, ordered
/// row-major in (q,p): Hermitian, unit trace, tr(A_a A_b) = d delta_ab.
/// Built as A_(q,p) = (1/d) sum_(u,v) w^(vq-up) D_(u,v) where D_(u,v) =
/// tau^(uv) X^u Z^v is the clock/shift displacement with tau =
/// exp(i pi (d^2+1)/d). At d = 2 this reproduces the four Bloch-cube
/// operators rho(1,1,1), rho(-1,-1,1), rho(1,-1,-1), rho(-1,1,-1).
/// Throws std::invalid_argument for composite d.
OperatorBasis phase_point_basis(int d);

/// Hermitian basis with every element of unit trace: the Gell-Mann basis
/// rotated by the orthogonal matrix diag(1,Q) * H, where H is the
/// Householder reflection sending e_1 to the all-(1/d) vector and Q is a
/// seeded random orthogonal matrix on the complement. The top row of the
/// rotation is exactly (1/d, ..., 1/d), which pins every trace to 1.
OperatorBasis unit_trace_basis(int d, std::uint64_t seed);

/// Hermitian basis with Re tr(C_i) > 0 for all i: modified Gram-Schmidt
/// (with re-orthogonalization) on seeded random coefficient vectors,
/// followed by a sign flip of any element whose leading coefficient came
/// out negative. Resamples on rank deficiency; throws std::runtime_error
/// after 10 failed attempts.
OperatorBasis positive_trace_basis(int d, std::uint64_t seed);

/// Non-Hermitian basis C_ij = sqrt(d)|i><j|, row-major in (i,j).
OperatorBasis matrix_unit_basis(int d);

/// Expansion coefficients x_i = tr(X C_i^dag)/d, so X = sum_i x_i C_i.
Vector coefficients(const Matrix& x, const OperatorBasis& b);

/// Inverse of `coefficients`: sum_i coeffs(i) * C_i.
Matrix reconstruct_from_coefficients(const Vector& coeffs, const OperatorBasis& b);

struct BasisVerification {
  double max_gram_residual = 0.0;     // max |tr(C_i C_j^dag) - d delta_ij|
  double max_norm_residual = 0.0;     // max | ||C_i||_2 - sqrt(d) |
  double max_hermiticity_residual = 0.0;
  double max_trace_residual = 0.0;    // unit-trace kinds: max |tr(C_i) - 1|
  double min_real_trace = 0.0;
  bool gram_ok = false;
  bool norm_ok = false;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool pass = false;
};

/// Checks every OperatorBasis invariant at the standard tolerances
/// (1e-10 on Gram, norm and trace residuals). Failures are reported, not
/// thrown.
BasisVerification verify_basis(const OperatorBasis& b);

/// Per-element eigenvalue lists (nonincreasing), for comparing the
/// spectra of different unit-trace constructions. Hermitian bases only.
std::vector<Eigen::VectorXd> basis_spectra(const OperatorBasis& b);

/// True iff the two bases have the same multiset of element spectra
/// within `tol` (a necessary condition for unitary equivalence).
bool spectra_match(const OperatorBasis& a, const OperatorBasis& b, double tol);

struct ConvexityScanResult {
  long long trials = 0;
  double max_identity_residual = 0.0;  // max | ||X||^2 - d sum q_i^2 |
  double max_norm_sq = 0.0;            // over the sampled combinations
  double max_vertex_norm_residual = 0.0;  // vertex controls vs sqrt(d)
};

/// Strict-convexity probe: draws `trials` convex weight vectors q over the
/// basis elements (uniform on the simplex, resampled until max q_i <=
/// max_weight), forms X = sum q_i C_i and records the worst deviation of
/// ||X||_2^2 from d * sum q_i^2 together with the largest norm seen.
/// Also evaluates each vertex q = e_k as a control.
ConvexityScanResult convex_combination_scan(const OperatorBasis& b, long long trials,
                                            std::uint64_t seed, double max_weight, Exec exec);

}  // namespace sepspace

#endif
