#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "sepspace/cross_norm.hpp"
#include "sepspace/decomposition.hpp"
#include "sepspace/dense_operator.hpp"
#include "sepspace/operator_basis.hpp"
#include "test_helpers.hpp"

using namespace sepspace;
using test::close;

namespace {

// the four-term decomposition of |phi_2><phi_2| over Bloch-cube vertices,
// with the B side carrying the transposed vertices (y component flipped)
SeparableDecomposition cube_decomposition() {
  SeparableDecomposition d;
  d.dim_a = 2;
  d.dim_b = 2;
  d.weights = Eigen::VectorXd::Constant(4, 0.25);
  const std::vector<Eigen::Vector3d> a = {{1, 1, 1}, {-1, -1, 1}, {1, -1, -1}, {-1, 1, -1}};
  const std::vector<Eigen::Vector3d> b = {{1, -1, 1}, {-1, 1, 1}, {1, 1, -1}, {-1, -1, -1}};
  for (int k = 0; k < 4; ++k) {
    d.a_ops.push_back(bloch_operator(a[static_cast<std::size_t>(k)]));
    d.b_ops.push_back(bloch_operator(b[static_cast<std::size_t>(k)]));
  }
  return d;
}

}  // namespace

TEST_CASE("maxent_decomposition over the Pauli basis") {
  const SeparableDecomposition d = maxent_decomposition(gell_mann_basis(2));
  REQUIRE(d.term_count() == 4);

  // direct 4x4 oracle: (1/4)(I(x)I + sx(x)sx - sy(x)sy + sz(x)sz), using
  // sy^T = -sy
  Matrix oracle = 0.25 * (tensor_product(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) +
                          tensor_product(pauli_x(), pauli_x()) -
                          tensor_product(pauli_y(), pauli_y()) +
                          tensor_product(pauli_z(), pauli_z()));
  CHECK(close(reconstruct(d), oracle, 1e-14));
  CHECK(close(oracle, maxent_state(2), 1e-14));
}

TEST_CASE("maxent_decomposition over the qubit phase-point basis matches the cube") {
  const SeparableDecomposition d = maxent_decomposition(phase_point_basis(2));
  const SeparableDecomposition golden = cube_decomposition();
  REQUIRE(d.term_count() == 4);
  for (int k = 0; k < 4; ++k) {
    const auto i = static_cast<std::size_t>(k);
    CHECK(close(d.a_ops[i], golden.a_ops[i], 1e-13));
    CHECK(close(d.b_ops[i], golden.b_ops[i], 1e-13));
  }
  CHECK(verify(d, maxent_state(2), 1e-12).ok);
}

TEST_CASE("maxent_decomposition reconstructs across bases and dimensions") {
  for (int dim : {2, 3, 5}) {
    for (const OperatorBasis& b :
         {gell_mann_basis(dim), unit_trace_basis(dim, 4), positive_trace_basis(dim, 4)}) {
      const SeparableDecomposition d = maxent_decomposition(b);
      const VerifyReport r = verify(d, maxent_state(dim), 1e-10);
      CHECK(r.ok);
      CHECK(d.term_count() == dim * dim);
      // every norm product is exactly d, so the cross bound is tight and
      // at least one term reaches d
      const CrossNormBound bound = decomposition_cross_bound(d);
      CHECK(std::abs(bound.sum - dim) < 1e-10);
      CHECK(bound.max >= dim - 1e-9);
    }
  }
}

TEST_CASE("maxent_decomposition input validation") {
  CHECK_THROWS_AS(maxent_decomposition(matrix_unit_basis(2)), std::invalid_argument);
  OperatorBasis broken = gell_mann_basis(2);
  broken.operators[2] = broken.operators[1];
  CHECK_THROWS_AS(maxent_decomposition(broken), std::invalid_argument);
}

TEST_CASE("pure_state_decomposition product state") {
  const SchmidtVector lambda = make_schmidt_vector(Eigen::VectorXd::Ones(1));
  const SeparableDecomposition d = pure_state_decomposition(lambda);
  REQUIRE(d.term_count() == 1);
  CHECK(close(reconstruct(d), Matrix::Ones(1, 1), 1e-14));
  CHECK(std::abs(decomposition_cross_bound(d).max - 1.0) < 1e-12);
}

TEST_CASE("pure_state_decomposition reproduces the EPR pair") {
  Eigen::VectorXd v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const SeparableDecomposition d = pure_state_decomposition(make_schmidt_vector(v));
  REQUIRE(d.term_count() == 4);
  CHECK(verify(d, maxent_state(2), 1e-10).ok);
  for (int k = 0; k < 4; ++k) {
    const auto i = static_cast<std::size_t>(k);
    CHECK(std::abs(frobenius_norm(d.a_ops[i]) * frobenius_norm(d.b_ops[i]) - 2.0) < 1e-10);
  }
}

TEST_CASE("pure_state_decomposition for a skewed Schmidt vector") {
  Eigen::VectorXd v(2);
  v << std::sqrt(0.9), std::sqrt(0.1);
  const SchmidtVector lambda = make_schmidt_vector(v);
  const SeparableDecomposition d = pure_state_decomposition(lambda);
  CHECK(verify(d, schmidt_state(lambda), 1e-10).ok);
  const double expected = std::pow(std::sqrt(0.9) + std::sqrt(0.1), 2.0);
  CHECK(std::abs(expected - 1.6) < 1e-12);
  for (int k = 0; k < d.term_count(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    CHECK(std::abs(frobenius_norm(d.a_ops[i]) * frobenius_norm(d.b_ops[i]) - expected) < 1e-10);
  }
}

TEST_CASE("pure_state_decomposition truncates zero Schmidt coefficients") {
  Eigen::VectorXd v(2);
  v << 1.0, 0.0;
  const SeparableDecomposition d = pure_state_decomposition(make_schmidt_vector(v));
  CHECK(d.term_count() == 1);
  CHECK(d.dim_a == 1);
}

TEST_CASE("pure_state_decomposition rejects unnormalized input") {
  SchmidtVector bad;
  bad.values = Eigen::VectorXd::Ones(2);  // sum of squares = 2
  CHECK_THROWS_AS(pure_state_decomposition(bad), std::invalid_argument);
}

TEST_CASE("verify distinguishes correct and broken decompositions") {
  const Matrix target = maxent_state(2);
  SeparableDecomposition d = cube_decomposition();
  CHECK(verify(d, target, 1e-12).ok);

  SeparableDecomposition perturbed = d;
  perturbed.weights << 0.5, 0.25, 0.125, 0.125;
  CHECK(!verify(perturbed, target, 1e-6).ok);

  // three of the four terms, renormalized: too few operators
  SeparableDecomposition truncated;
  truncated.dim_a = truncated.dim_b = 2;
  truncated.weights = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  for (int k = 0; k < 3; ++k) {
    truncated.a_ops.push_back(d.a_ops[static_cast<std::size_t>(k)]);
    truncated.b_ops.push_back(d.b_ops[static_cast<std::size_t>(k)]);
  }
  CHECK(!verify(truncated, target, 1e-3).ok);

  CHECK_THROWS_AS(verify(d, maxent_state(3), 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(verify(d, target, 0.0), std::invalid_argument);
}

TEST_CASE("diagnostics on factory decompositions") {
  for (int dim : {2, 3}) {
    const OperatorBasis b = gell_mann_basis(dim);
    const SeparableDecomposition d = maxent_decomposition(b);
    const DecompositionDiagnostics g = diagnostics(d, b);
    CHECK(g.match_residual < 1e-10);
    CHECK(std::abs(g.vectorsep_sum - Complex(1, 0)) < 1e-10);
    CHECK(g.reconstruction_error < 1e-10);
    CHECK(g.term_count == dim * dim);
    CHECK(g.distinct_a_count == dim * dim);
    CHECK(g.distinct_b_count == dim * dim);
    CHECK(g.all_terms_extremal);
    CHECK(g.proportionality_residual < 1e-9);
    for (int k = 0; k < g.norm_products.size(); ++k) {
      CHECK(std::abs(g.norm_products(k) - dim) < 1e-10);
    }
  }
}

TEST_CASE("diagnostics works across expansion bases") {
  // a decomposition built from one basis diagnosed against another
  const SeparableDecomposition d = maxent_decomposition(phase_point_basis(3));
  const DecompositionDiagnostics g = diagnostics(d, gell_mann_basis(3));
  CHECK(g.match_residual < 1e-10);
  CHECK(std::abs(g.vectorsep_sum - Complex(1, 0)) < 1e-10);
}

TEST_CASE("diagnostics flags a mutated weight") {
  const OperatorBasis b = gell_mann_basis(2);
  SeparableDecomposition d = maxent_decomposition(b);
  d.weights(0) *= 1.01;
  const DecompositionDiagnostics g = diagnostics(d, b);
  CHECK(g.match_residual >= 1e-3);
}

TEST_CASE("diagnostics input validation") {
  const SeparableDecomposition d = maxent_decomposition(gell_mann_basis(2));
  CHECK_THROWS_AS(diagnostics(d, gell_mann_basis(3)), std::invalid_argument);
  CHECK_THROWS_AS(diagnostics(d, matrix_unit_basis(2)), std::invalid_argument);
}

TEST_CASE("equalize_norms") {
  const SeparableDecomposition d = maxent_decomposition(gell_mann_basis(3));
  const SeparableDecomposition e = equalize_norms(d);
  CHECK((reconstruct(e) - reconstruct(d)).norm() < 1e-12);
  for (int k = 0; k < e.term_count(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    CHECK(std::abs(frobenius_norm(e.a_ops[i]) - std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(frobenius_norm(e.b_ops[i]) - std::sqrt(3.0)) < 1e-12);
  }

  // unbalanced scaling of one term cancels in the product and is restored
  SeparableDecomposition skewed = d;
  skewed.a_ops[0] *= 2.0;
  skewed.b_ops[0] *= 0.5;
  const SeparableDecomposition fixed = equalize_norms(skewed);
  CHECK((reconstruct(fixed) - reconstruct(d)).norm() < 1e-12);
  for (int k = 0; k < fixed.term_count(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    CHECK(std::abs(frobenius_norm(fixed.a_ops[i]) - std::sqrt(3.0)) < 1e-12);
  }

  // pure-state factories are already equalized at sum(lambda)
  Eigen::VectorXd v(3);
  v << std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2);
  const SchmidtVector lambda = make_schmidt_vector(v);
  const SeparableDecomposition p = equalize_norms(pure_state_decomposition(lambda));
  for (int k = 0; k < p.term_count(); ++k) {
    CHECK(std::abs(frobenius_norm(p.a_ops[static_cast<std::size_t>(k)]) - lambda.values.sum()) <
          1e-10);
  }
}

TEST_CASE("equalize_norms error paths and zero weights") {
  SeparableDecomposition d = cube_decomposition();
  d.a_ops[0] = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(equalize_norms(d), std::invalid_argument);

  // zero-weight terms are dropped rather than rescaled
  SeparableDecomposition padded = cube_decomposition();
  padded.weights = Eigen::VectorXd(5);
  padded.weights << 0.25, 0.25, 0.25, 0.25, 0.0;
  padded.a_ops.push_back(Matrix::Zero(2, 2));
  padded.b_ops.push_back(Matrix::Zero(2, 2));
  const SeparableDecomposition cleaned = equalize_norms(padded);
  CHECK(cleaned.term_count() == 4);
  CHECK((reconstruct(cleaned) - maxent_state(2)).norm() < 1e-12);
}
