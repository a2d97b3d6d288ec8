#include "sepspace/duality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "sepspace/operator_basis.hpp"

namespace sepspace {

namespace {

constexpr double kDualTol = 1e-10;
constexpr double kPsdTol = 1e-10;

double min_hermitian_part_eigenvalue(const Matrix& m) {
  if (m.rows() == 2) {
    // closed form for the 2x2 Hermitian part; keeps the grid scan free of
    // eigensolver allocations
    const double h00 = m(0, 0).real();
    const double h11 = m(1, 1).real();
    const Complex h01 = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double mean = 0.5 * (h00 + h11);
    const double radius = std::sqrt(0.25 * (h00 - h11) * (h00 - h11) + std::norm(h01));
    return mean - radius;
  }
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// tr(X M) evaluated as an elementwise sum, with no product temporary
double real_pairing(const Matrix& x, const Matrix& m) {
  return x.cwiseProduct(m.transpose()).sum().real();
}

/// Gaussian-induced random density matrix G G^dag / tr(G G^dag).
Matrix random_density_matrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace

Povm make_povm(std::vector<Matrix> elements) {
  if (elements.empty()) {
    throw std::invalid_argument("make_povm: element list must be nonempty");
  }
  const int d = static_cast<int>(elements.front().rows());
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& m : elements) {
    if (m.rows() != d || m.cols() != d) {
      throw std::invalid_argument("make_povm: elements must share one dimension");
    }
    if (min_hermitian_part_eigenvalue(m) < -kPsdTol || !is_hermitian(m)) {
      throw std::invalid_argument("make_povm: element is not PSD within 1e-10");
    }
    sum += m;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("make_povm: elements do not sum to the identity within 1e-10");
  }
  Povm p;
  p.dim = d;
  p.elements = std::move(elements);
  return p;
}

Povm trivial_povm(int d) {
  Povm p;
  p.dim = d;
  p.elements.push_back(Matrix::Identity(d, d));
  return p;
}

MeasurementFamily make_family(std::vector<Povm> povms) {
  if (povms.empty()) {
    throw std::invalid_argument("make_family: family must be nonempty");
  }
  const int d = povms.front().dim;
  for (const Povm& p : povms) {
    if (p.dim != d) {
      throw std::invalid_argument("make_family: POVMs must share one dimension");
    }
  }
  MeasurementFamily f;
  f.dim = d;
  f.povms = std::move(povms);
  return f;
}

MeasurementFamily pauli_projective_family() {
  const Matrix id = Matrix::Identity(2, 2);
  std::vector<Povm> povms;
  for (const Matrix& s : {pauli_x(), pauli_y(), pauli_z()}) {
    povms.push_back(make_povm({0.5 * (id + s), 0.5 * (id - s)}));
  }
  return make_family(std::move(povms));
}

MeasurementFamily transpose_family(const MeasurementFamily& f) {
  MeasurementFamily out;
  out.dim = f.dim;
  for (const Povm& p : f.povms) {
    Povm q;
    q.dim = p.dim;
    for (const Matrix& m : p.elements) q.elements.push_back(m.transpose());
    out.povms.push_back(std::move(q));
  }
  return out;
}

DualCheck dual_check(const Matrix& x, const MeasurementFamily& f) {
  if (x.rows() != f.dim || x.cols() != f.dim) {
    throw std::invalid_argument("dual_check: operator dimension does not match family");
  }
  DualCheck r;
  bool first = true;
  for (std::size_t m = 0; m < f.povms.size(); ++m) {
    const Povm& p = f.povms[m];
    for (std::size_t a = 0; a < p.elements.size(); ++a) {
      const double v = real_pairing(x, p.elements[a]);
      if (first || v < r.min_pairing) {
        first = false;
        r.min_pairing = v;
        r.povm_index = static_cast<int>(m);
        r.element_index = static_cast<int>(a);
      }
    }
  }
  r.in_dual = r.min_pairing >= -kDualTol;
  return r;
}

bool is_in_dual(const Matrix& x, const MeasurementFamily& f) { return dual_check(x, f).in_dual; }

bool measurement_compatible(const Matrix& m, const GeneratorSet& g) {
  if (m.rows() != g.dim || m.cols() != g.dim) {
    throw std::invalid_argument("measurement_compatible: dimension mismatch");
  }
  for (const Matrix& gen : g.generators) {
    if (real_pairing(m, gen) < -kDualTol) return false;
  }
  if (g.include_quantum && min_hermitian_part_eigenvalue(m) < -kPsdTol) return false;
  return true;
}

namespace detail {

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations,
                     int* iterations_used) {
  const int n = static_cast<int>(a.cols());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  int n_passive = 0;
  int iter = 0;

  const double grad_tol = 1e-12 * std::max(1.0, (a.transpose() * b).cwiseAbs().maxCoeff());

  auto solve_passive = [&](Eigen::VectorXd& z) {
    Eigen::MatrixXd ap(a.rows(), n_passive);
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(n_passive));
    for (int i = 0; i < n; ++i) {
      if (passive[static_cast<std::size_t>(i)]) {
        ap.col(static_cast<Eigen::Index>(idx.size())) = a.col(i);
        idx.push_back(i);
      }
    }
    const Eigen::VectorXd zp = ap.colPivHouseholderQr().solve(b);
    z.setZero();
    for (std::size_t k = 0; k < idx.size(); ++k) {
      z(idx[k]) = zp(static_cast<Eigen::Index>(k));
    }
  };

  while (true) {
    const Eigen::VectorXd w = a.transpose() * (b - a * x);
    int best = -1;
    double best_w = grad_tol;
    for (int i = 0; i < n; ++i) {
      if (!passive[static_cast<std::size_t>(i)] && w(i) > best_w) {
        best_w = w(i);
        best = i;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    ++n_passive;

    Eigen::VectorXd z(n);
    while (true) {
      if (++iter > max_iterations) {
        throw std::runtime_error("nnls: iteration cap exceeded");
      }
      solve_passive(z);
      bool feasible = true;
      double alpha = 1.0;
      for (int i = 0; i < n; ++i) {
        if (passive[static_cast<std::size_t>(i)] && z(i) <= 0.0) {
          feasible = false;
          const double step = x(i) / (x(i) - z(i));
          alpha = std::min(alpha, step);
        }
      }
      if (feasible) {
        x = z;
        break;
      }
      x += alpha * (z - x);
      for (int i = 0; i < n; ++i) {
        if (passive[static_cast<std::size_t>(i)] && x(i) <= 1e-14) {
          x(i) = 0.0;
          passive[static_cast<std::size_t>(i)] = false;
          --n_passive;
        }
      }
    }
  }
  if (iterations_used != nullptr) *iterations_used = iter;
  return x;
}

}  // namespace detail

ConeMembership cone_membership(const Matrix& x, const GeneratorSet& g, double tol) {
  if (g.include_quantum) {
    throw std::invalid_argument("cone_membership: finite generator cones only");
  }
  if (g.generators.empty()) {
    throw std::invalid_argument("cone_membership: generator list must be nonempty");
  }
  if (x.rows() != g.dim || x.cols() != g.dim) {
    throw std::invalid_argument("cone_membership: dimension mismatch");
  }
  const int n = static_cast<int>(g.generators.size());
  const Eigen::Index entries = static_cast<Eigen::Index>(g.dim) * g.dim;

  // real embedding: stacking Re and Im parts turns the Frobenius distance
  // into a Euclidean one
  Eigen::MatrixXd a(2 * entries, n);
  for (int i = 0; i < n; ++i) {
    const Matrix& gen = g.generators[static_cast<std::size_t>(i)];
    Eigen::Map<const Eigen::VectorXcd> v(gen.data(), entries);
    a.col(i).head(entries) = v.real();
    a.col(i).tail(entries) = v.imag();
  }
  Eigen::VectorXd b(2 * entries);
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), entries);
  b.head(entries) = xv.real();
  b.tail(entries) = xv.imag();

  ConeMembership r;
  r.coefficients = detail::nnls(a, b, 50 * n, &r.iterations);
  r.residual = (a * r.coefficients - b).norm();
  r.member = r.residual <= tol;
  return r;
}

ExtremalityReport unit_trace_extremality_probe(const GeneratorSet& g, long long trials,
                                               std::uint64_t seed, Exec exec) {
  if (!g.include_quantum) {
    throw std::invalid_argument("unit_trace_extremality_probe: cone must include the quantum states");
  }
  if (g.generators.size() != static_cast<std::size_t>(g.dim) * g.dim) {
    throw std::invalid_argument("unit_trace_extremality_probe: need d^2 generators");
  }
  for (const Matrix& w : g.generators) {
    if (std::abs(w.trace() - Complex(1.0, 0.0)) > 1e-10) {
      throw std::invalid_argument("unit_trace_extremality_probe: generators must have unit trace");
    }
  }
  // the norm bound rests on the coefficient identity ||sum q_i W_i||^2 =
  // d sum q_i^2, which needs tr(W_i W_j^dag) = d delta_ij
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    for (std::size_t j = 0; j < g.generators.size(); ++j) {
      const double target = i == j ? static_cast<double>(g.dim) : 0.0;
      if (std::abs(hs_inner(g.generators[i], g.generators[j]) - target) > 1e-8) {
        throw std::invalid_argument(
            "unit_trace_extremality_probe: generators are not an orthogonal basis");
      }
    }
  }
  if (trials < 1) {
    throw std::invalid_argument("unit_trace_extremality_probe: trials must be >= 1");
  }

  const int n_gen = static_cast<int>(g.generators.size());
  const int n = n_gen + 2;  // two fresh density matrices per trial
  const double d = static_cast<double>(g.dim);
  constexpr double kVertexCap = 1.0 - 1e-3;

  std::vector<double> mixed_norm_sq(static_cast<std::size_t>(trials), 0.0);
  std::vector<double> density_norm(static_cast<std::size_t>(trials), 0.0);

  auto body = [&](long long t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Matrix rho1 = random_density_matrix(g.dim, rng);
    const Matrix rho2 = random_density_matrix(g.dim, rng);
    density_norm[static_cast<std::size_t>(t)] =
        std::max(frobenius_norm(rho1), frobenius_norm(rho2));

    Eigen::VectorXd q(n);
    do {
      for (int i = 0; i < n; ++i) q(i) = -std::log(1.0 - unif(rng));
      q /= q.sum();
    } while (q.maxCoeff() > kVertexCap);

    Matrix x = q(n_gen) * rho1 + q(n_gen + 1) * rho2;
    for (int i = 0; i < n_gen; ++i) x += q(i) * g.generators[static_cast<std::size_t>(i)];
    mixed_norm_sq[static_cast<std::size_t>(t)] = x.squaredNorm();
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < trials; ++t) body(t);
  } else {
    for (long long t = 0; t < trials; ++t) body(t);
  }

  ExtremalityReport r;
  r.trials = trials;
  r.max_mixed_norm_sq = *std::max_element(mixed_norm_sq.begin(), mixed_norm_sq.end());
  r.max_density_norm = *std::max_element(density_norm.begin(), density_norm.end());
  r.norm_sq_bound = d * kVertexCap;
  const double sqrt_d = std::sqrt(d);
  for (const Matrix& w : g.generators) {
    r.max_vertex_norm_residual =
        std::max(r.max_vertex_norm_residual, std::abs(frobenius_norm(w) - sqrt_d));
  }
  r.pass = r.max_mixed_norm_sq <= r.norm_sq_bound + 1e-9 &&
           r.max_vertex_norm_residual <= 1e-10 && r.max_density_norm <= 1.0 + 1e-10;
  return r;
}

std::vector<Eigen::Vector3d> qubit_tetrahedron_vertices() {
  return {{1, 1, 1}, {-1, -1, 1}, {1, -1, -1}, {-1, 1, -1}};
}

RegionScanResult qubit_region_scan(int grid_n, double tol, Exec exec) {
  if (grid_n < 2) {
    throw std::invalid_argument("qubit_region_scan: grid must have at least 2 points per axis");
  }
  GeneratorSet g;
  g.dim = 2;
  g.generators = phase_point_basis(2).operators;
  g.include_quantum = true;
  const auto vertices = qubit_tetrahedron_vertices();

  const long long total = static_cast<long long>(grid_n) * grid_n * grid_n;
  std::vector<unsigned char> numeric(static_cast<std::size_t>(total));
  std::vector<unsigned char> analytic(static_cast<std::size_t>(total));

  auto coord = [grid_n](int i) { return -1.0 + 2.0 * i / (grid_n - 1); };

  // blocked so that the scratch matrix is reused across points; the body
  // itself is allocation-free
  constexpr long long kBlock = 4096;
  const long long blocks = (total + kBlock - 1) / kBlock;
  auto body = [&](long long blk) {
    Matrix m(2, 2);
    const long long begin = blk * kBlock;
    const long long end = std::min(total, begin + kBlock);
    for (long long idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx / (static_cast<long long>(grid_n) * grid_n));
      const int j = static_cast<int>((idx / grid_n) % grid_n);
      const int k = static_cast<int>(idx % grid_n);
      const Eigen::Vector3d r(coord(i), coord(j), coord(k));

      // I + r.sigma
      m(0, 0) = Complex(1.0 + r.z(), 0.0);
      m(0, 1) = Complex(r.x(), -r.y());
      m(1, 0) = Complex(r.x(), r.y());
      m(1, 1) = Complex(1.0 - r.z(), 0.0);
      numeric[static_cast<std::size_t>(idx)] = measurement_compatible(m, g) ? 1 : 0;

      bool inside = 1.0 - r.norm() >= -tol;
      for (const Eigen::Vector3d& c : vertices) {
        inside = inside && (1.0 + r.dot(c) >= -tol);
      }
      analytic[static_cast<std::size_t>(idx)] = inside ? 1 : 0;
    }
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long blk = 0; blk < blocks; ++blk) body(blk);
  } else {
    for (long long blk = 0; blk < blocks; ++blk) body(blk);
  }

  RegionScanResult r;
  r.grid_points = total;
  for (long long idx = 0; idx < total; ++idx) {
    r.compatible += numeric[static_cast<std::size_t>(idx)];
    r.analytic += analytic[static_cast<std::size_t>(idx)];
    r.disagreements += numeric[static_cast<std::size_t>(idx)] != analytic[static_cast<std::size_t>(idx)];
  }
  return r;
}

}  // namespace sepspace
