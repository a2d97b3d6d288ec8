#ifndef SEPSPACE_DUALITY_HPP
#define SEPSPACE_DUALITY_HPP

#include <cstdint>
#include <vector>

#include "sepspace/dense_operator.hpp"
#include "sepspace/exec.hpp"

namespace sepspace {

/// Finite positive-operator-valued measurement: PSD elements summing to
/// the identity.
struct Povm {
  int dim = 0;
  std::vector<Matrix> elements;
};

/// Validates PSD (min eigenvalue >= -1e-10) and completeness (sum = I
/// within 1e-10); throws std::invalid_argument on violation.
Povm make_povm(std::vector<Matrix> elements);

Povm trivial_povm(int d);

/// Collection of POVMs on the same particle.
struct MeasurementFamily {
  int dim = 0;
  std::vector<Povm> povms;
};

MeasurementFamily make_family(std::vector<Povm> povms);

/// The three projective qubit POVMs {(I + s)/2, (I - s)/2} for
/// s = sigma_x, sigma_y, sigma_z, in that order.
MeasurementFamily pauli_projective_family();

/// Same family with every element transposed (the B-side convention for
/// decompositions built from transposed operators).
MeasurementFamily transpose_family(const MeasurementFamily& f);

/// Dual membership: Re tr(X M) >= -1e-10 for every element of every POVM.
bool is_in_dual(const Matrix& x, const MeasurementFamily& f);

struct DualCheck {
  bool in_dual = false;
  double min_pairing = 0.0;
  int povm_index = -1;     // location of the minimum
  int element_index = -1;
};

DualCheck dual_check(const Matrix& x, const MeasurementFamily& f);

/// Generators of a convex cone of local operators; with `include_quantum`
/// the cone is conic(generators u {density matrices}).
struct GeneratorSet {
  int dim = 0;
  std::vector<Matrix> generators;
  bool include_quantum = false;
};

/// True iff Re tr(M g) >= -1e-10 for every generator and, when the cone
/// includes the quantum states, the Hermitian part of M is PSD within
/// 1e-10 (positivity against all density matrices is equivalent to PSD).
bool measurement_compatible(const Matrix& m, const GeneratorSet& g);

struct ConeMembership {
  bool member = false;
  double residual = 0.0;
  Eigen::VectorXd coefficients;  // the certificate when member
  int iterations = 0;
};

/// Nonnegative-coefficient reconstruction min_{c>=0} ||sum c_i g_i - X||_2
/// by active-set nonnegative least squares; member iff the residual is at
/// most `tol`. Finite generator cones only (include_quantum must be
/// false). Throws std::runtime_error if the solver exceeds its iteration
/// cap of 50 * generator count.
ConeMembership cone_membership(const Matrix& x, const GeneratorSet& g, double tol);

namespace detail {
/// Lawson-Hanson active-set NNLS: argmin_{x>=0} ||a x - b||_2.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations,
                     int* iterations_used = nullptr);
}  // namespace detail

struct ExtremalityReport {
  long long trials = 0;
  double max_mixed_norm_sq = 0.0;    // over off-vertex convex combinations
  double norm_sq_bound = 0.0;        // d * (1 - 1e-3)
  double max_vertex_norm_residual = 0.0;  // vertex controls vs sqrt(d)
  double max_density_norm = 0.0;     // over all sampled density matrices
  bool pass = false;
};

/// Extremality probe for unit-trace cones: samples `trials` elements of
/// conic(W u Q) as convex combinations of the d^2 unit-trace generators
/// and two fresh random density matrices, rejecting near-vertex weight
/// vectors (max weight > 1 - 1e-3), and reports the largest 2-norm seen.
/// Off-vertex combinations must stay below sqrt(d (1 - 1e-3)) + 1e-9;
/// each basis vertex itself hits sqrt(d) and plain density matrices stay
/// below 1. Requires include_quantum and unit-trace generators.
ExtremalityReport unit_trace_extremality_probe(const GeneratorSet& g, long long trials,
                                               std::uint64_t seed, Exec exec);

struct RegionScanResult {
  long long grid_points = 0;
  long long compatible = 0;       // via measurement_compatible
  long long analytic = 0;         // via the closed-form predicate
  long long disagreements = 0;
};

/// Scans Bloch vectors r on an n^3 grid over [-1,1]^3 and compares
/// measurement_compatible(I + r.sigma, tetrahedron + quantum) against the
/// closed-form region {|r| <= 1 and r.c >= -1 for the four tetrahedron
/// vertices}, both at tolerance `tol`.
RegionScanResult qubit_region_scan(int grid_n, double tol, Exec exec);

/// The four Bloch-cube vertices of the qubit phase-point set, in basis
/// order.
std::vector<Eigen::Vector3d> qubit_tetrahedron_vertices();

}  // namespace sepspace

#endif
