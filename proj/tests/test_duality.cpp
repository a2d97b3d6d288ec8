#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "sepspace/duality.hpp"
#include "sepspace/operator_basis.hpp"
#include "test_helpers.hpp"

using namespace sepspace;
using test::random_density;

namespace {

GeneratorSet tetrahedron(bool include_quantum) {
  return GeneratorSet{2, phase_point_basis(2).operators, include_quantum};
}

}  // namespace

TEST_CASE("povm validation") {
  CHECK_NOTHROW(pauli_projective_family());
  CHECK(trivial_povm(3).elements.size() == 1);

  // not summing to identity
  CHECK_THROWS_AS(make_povm({0.5 * Matrix::Identity(2, 2)}), std::invalid_argument);
  // not PSD
  CHECK_THROWS_AS(make_povm({1.5 * Matrix::Identity(2, 2), -0.5 * Matrix::Identity(2, 2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_family({}), std::invalid_argument);
}

TEST_CASE("is_in_dual") {
  const MeasurementFamily pauli = pauli_projective_family();
  CHECK(is_in_dual(0.5 * Matrix::Identity(2, 2), pauli));

  // cube vertices pair to (1 +- 1)/2 >= 0 against Pauli projectors
  CHECK(is_in_dual(bloch_operator({1, 1, 1}), pauli));

  // rho(2,0,0) against the mirrored sigma_x element: tr = -1/2
  const MeasurementFamily x_only = make_family({make_povm(
      {0.5 * (Matrix::Identity(2, 2) + pauli_x()), 0.5 * (Matrix::Identity(2, 2) - pauli_x())})});
  const Matrix rho200 = bloch_operator({2, 0, 0});
  const DualCheck c = dual_check(rho200, x_only);
  CHECK(!c.in_dual);
  CHECK(std::abs(c.min_pairing - (-0.5)) < 1e-12);
  CHECK(c.element_index == 1);

  CHECK_THROWS_AS(is_in_dual(Matrix::Identity(3, 3), pauli), std::invalid_argument);
}

TEST_CASE("dual sets are closed under conic combinations") {
  const MeasurementFamily pauli = pauli_projective_family();
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  int used = 0;
  for (int trial = 0; trial < 200 && used < 50; ++trial) {
    const Matrix x = random_density(2, rng);
    const Matrix y = bloch_operator({unif(rng) - 1.5, unif(rng) - 1.5, unif(rng) - 1.5});
    if (!is_in_dual(x, pauli) || !is_in_dual(y, pauli)) continue;
    ++used;
    CHECK(is_in_dual(unif(rng) * x + unif(rng) * y, pauli));
  }
  CHECK(used >= 20);
}

TEST_CASE("measurement_compatible against the tetrahedron cone") {
  const GeneratorSet g = tetrahedron(true);

  auto direction = [](const Eigen::Vector3d& r) -> Matrix {
    return Matrix::Identity(2, 2) + r.x() * pauli_x() + r.y() * pauli_y() + r.z() * pauli_z();
  };

  CHECK(measurement_compatible(direction({-1, 0, 0}), g));  // boundary of the ball
  const double s = 1.0 / std::sqrt(3.0);
  CHECK(!measurement_compatible(direction({-s, -s, -s}), g));  // outside: 1 - sqrt(3) < 0
  CHECK(measurement_compatible(Matrix::Zero(2, 2), g));

  // inside the generator dual but outside the ball: PSD test must reject
  const double t = 1.05 / std::sqrt(3.0);
  CHECK(!measurement_compatible(direction({t, t, t}), g));
  CHECK(measurement_compatible(direction({t, t, t}), tetrahedron(false)));

  CHECK_THROWS_AS(measurement_compatible(Matrix::Identity(3, 3), g), std::invalid_argument);
}

TEST_CASE("nnls solves small systems") {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 0, 0;
  Eigen::VectorXd b(3);
  b << 2, 3, 0;
  const Eigen::VectorXd x = detail::nnls(a, b, 100);
  CHECK(std::abs(x(0) - 2.0) < 1e-12);
  CHECK(std::abs(x(1) - 3.0) < 1e-12);

  // unconstrained optimum has a negative coordinate; NNLS clamps it
  b << -1, 2, 0;
  const Eigen::VectorXd y = detail::nnls(a, b, 100);
  CHECK(std::abs(y(0)) < 1e-12);
  CHECK(std::abs(y(1) - 2.0) < 1e-12);
}

TEST_CASE("cone_membership certificates") {
  const GeneratorSet g = tetrahedron(false);

  const ConeMembership self = cone_membership(g.generators[0], g, 1e-8);
  CHECK(self.member);
  CHECK(std::abs(self.coefficients(0) - 1.0) < 1e-8);
  CHECK(self.coefficients.tail(3).cwiseAbs().maxCoeff() < 1e-8);

  const Matrix scaled = 3.0 * (g.generators[0] + g.generators[1]);
  const ConeMembership sm = cone_membership(scaled, g, 1e-8);
  CHECK(sm.member);
  CHECK(std::abs(sm.coefficients(0) - 3.0) < 1e-8);
  CHECK(std::abs(sm.coefficients(1) - 3.0) < 1e-8);

  // analytic barycentric oracle: rho(0,0,-1) = (1/2) v3 + (1/2) v4
  const ConeMembership down = cone_membership(bloch_operator({0, 0, -1}), g, 1e-8);
  CHECK(down.member);
  CHECK(std::abs(down.coefficients(0)) < 1e-8);
  CHECK(std::abs(down.coefficients(1)) < 1e-8);
  CHECK(std::abs(down.coefficients(2) - 0.5) < 1e-8);
  CHECK(std::abs(down.coefficients(3) - 0.5) < 1e-8);

  // a cube vertex outside the tetrahedron: the unique linear solution has
  // a negative coefficient, so no nonnegative certificate exists
  const ConeMembership out = cone_membership(bloch_operator({1, 1, -1}), g, 1e-8);
  CHECK(!out.member);
  CHECK(out.residual > 1e-3);

  CHECK_THROWS_AS(cone_membership(Matrix::Identity(2, 2), tetrahedron(true), 1e-8),
                  std::invalid_argument);
}

TEST_CASE("unit_trace_extremality_probe") {
  GeneratorSet g = tetrahedron(true);
  const ExtremalityReport s = unit_trace_extremality_probe(g, 2000, 5, Exec::serial);
  const ExtremalityReport p = unit_trace_extremality_probe(g, 2000, 5, Exec::parallel);
  CHECK(s.max_mixed_norm_sq == p.max_mixed_norm_sq);
  CHECK(s.max_density_norm == p.max_density_norm);

  CHECK(s.pass);
  CHECK(s.max_mixed_norm_sq <= 2.0 * (1.0 - 1e-3) + 1e-9);
  CHECK(s.max_vertex_norm_residual <= 1e-10);
  CHECK(s.max_density_norm <= 1.0 + 1e-10);

  GeneratorSet no_quantum = tetrahedron(false);
  CHECK_THROWS_AS(unit_trace_extremality_probe(no_quantum, 10, 5, Exec::serial),
                  std::invalid_argument);
  GeneratorSet traceless{2, gell_mann_basis(2).operators, true};
  CHECK_THROWS_AS(unit_trace_extremality_probe(traceless, 10, 5, Exec::serial),
                  std::invalid_argument);

  GeneratorSet skewed = tetrahedron(true);
  skewed.generators[1] = skewed.generators[0];  // breaks orthogonality, keeps traces
  CHECK_THROWS_AS(unit_trace_extremality_probe(skewed, 10, 5, Exec::serial),
                  std::invalid_argument);
}

TEST_CASE("qubit_region_scan agrees with the closed form") {
  const RegionScanResult r = qubit_region_scan(15, 1e-10, Exec::serial);
  CHECK(r.grid_points == 15LL * 15 * 15);
  CHECK(r.disagreements == 0);
  CHECK(r.compatible == r.analytic);
  CHECK(r.compatible > 0);
  CHECK(r.compatible < r.grid_points);

  const RegionScanResult p = qubit_region_scan(21, 1e-10, Exec::parallel);
  const RegionScanResult sp = qubit_region_scan(21, 1e-10, Exec::serial);
  CHECK(p.compatible == sp.compatible);
  CHECK(p.disagreements == sp.disagreements);
}
