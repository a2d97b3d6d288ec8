#include "sepspace/operator_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/QR>

namespace sepspace {

namespace {

constexpr double kGramTol = 1e-10;
constexpr double kNormTol = 1e-10;
constexpr double kTraceTol = 1e-10;

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

Matrix basis_element_from_coefficients(const Eigen::VectorXd& col,
                                       const std::vector<Matrix>& ops) {
  Matrix out = Matrix::Zero(ops[0].rows(), ops[0].cols());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    out += col(static_cast<Eigen::Index>(i)) * ops[i];
  }
  return out;
}

/// Rotate a Hermitian basis by a real orthogonal matrix acting on the
/// coefficient space; columns of `o` are the new coefficient vectors.
std::vector<Matrix> rotate_basis(const std::vector<Matrix>& ops, const Eigen::MatrixXd& o) {
  std::vector<Matrix> out;
  out.reserve(ops.size());
  for (Eigen::Index k = 0; k < o.cols(); ++k) {
    out.push_back(basis_element_from_coefficients(o.col(k), ops));
  }
  return out;
}

/// Seeded Haar-like random orthogonal matrix via QR of a Gaussian matrix,
/// with the sign of each column fixed by the QR diagonal.
Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::gell_mann: return "gell-mann";
    case BasisKind::phase_point: return "phase-point";
    case BasisKind::unit_trace_random: return "unit-trace-random";
    case BasisKind::positive_trace_random: return "positive-trace-random";
    case BasisKind::matrix_unit: return "matrix-unit";
    case BasisKind::custom: return "custom";
  }
  return "custom";
}

BasisKind basis_kind_from_string(const std::string& name) {
  if (name == "gell-mann") return BasisKind::gell_mann;
  if (name == "phase-point") return BasisKind::phase_point;
  if (name == "unit-trace-random") return BasisKind::unit_trace_random;
  if (name == "positive-trace-random") return BasisKind::positive_trace_random;
  if (name == "matrix-unit") return BasisKind::matrix_unit;
  if (name == "custom") return BasisKind::custom;
  throw std::invalid_argument("unknown basis kind '" + name + "'");
}

OperatorBasis gell_mann_basis(int d) {
  if (d < 1) {
    throw std::invalid_argument("gell_mann_basis: dimension must be >= 1");
  }
  OperatorBasis b;
  b.dim = d;
  b.kind = BasisKind::gell_mann;
  b.hermitian = true;
  b.operators.push_back(Matrix::Identity(d, d));

  const double s = std::sqrt(d / 2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = s;
      sym(k, j) = s;
      b.operators.push_back(sym);
      Matrix asym = Matrix::Zero(d, d);
      asym(j, k) = Complex(0.0, -s);
      asym(k, j) = Complex(0.0, s);
      b.operators.push_back(asym);
    }
  }
  for (int l = 1; l < d; ++l) {
    // diag(1,...,1,-l,0,...,0) scaled to norm sqrt(d)
    Matrix diag = Matrix::Zero(d, d);
    const double scale = std::sqrt(static_cast<double>(d) / (static_cast<double>(l) * (l + 1)));
    for (int i = 0; i < l; ++i) diag(i, i) = scale;
    diag(l, l) = -scale * l;
    b.operators.push_back(diag);
  }
  return b;
}

OperatorBasis phase_point_basis(int d) {
  if (!is_prime(d)) {
    throw std::invalid_argument("phase_point_basis: dimension must be prime");
  }
  const double pi = std::numbers::pi;
  auto omega_pow = [d, pi](int k) {  // exp(2 pi i k / d)
    return std::polar(1.0, 2.0 * pi * ((k % d + d) % d) / d);
  };
  auto tau_pow = [d, pi](int m) {  // tau = exp(i pi (d^2+1)/d); tau^2 = omega
    return std::polar(1.0, pi * (static_cast<double>(d) * d + 1.0) * m / d);
  };

  Matrix shift = Matrix::Zero(d, d);   // X|j> = |j+1>
  Matrix clock = Matrix::Zero(d, d);   // Z|j> = w^j |j>
  for (int j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = omega_pow(j);
  }

  std::vector<Matrix> displacement;
  displacement.reserve(static_cast<std::size_t>(d) * d);
  Matrix xu = Matrix::Identity(d, d);
  for (int u = 0; u < d; ++u) {
    Matrix zv = Matrix::Identity(d, d);
    for (int v = 0; v < d; ++v) {
      displacement.push_back(tau_pow(u * v) * xu * zv);
      zv = zv * clock;
    }
    xu = xu * shift;
  }

  OperatorBasis b;
  b.dim = d;
  b.kind = BasisKind::phase_point;
  b.hermitian = true;
  b.operators.reserve(static_cast<std::size_t>(d) * d);
  for (int q = 0; q < d; ++q) {
    for (int p = 0; p < d; ++p) {
      Matrix a = Matrix::Zero(d, d);
      for (int u = 0; u < d; ++u) {
        for (int v = 0; v < d; ++v) {
          a += omega_pow(v * q - u * p) * displacement[static_cast<std::size_t>(u) * d + v];
        }
      }
      a /= static_cast<double>(d);
      // the construction is exactly Hermitian; scrub rounding noise
      b.operators.push_back(0.5 * (a + a.adjoint().eval()));
    }
  }
  return b;
}

OperatorBasis unit_trace_basis(int d, std::uint64_t seed) {
  if (d < 2) {
    throw std::invalid_argument("unit_trace_basis: dimension must be >= 2");
  }
  const int n = d * d;
  const double inv_d = 1.0 / d;

  // Householder reflection H with H e_1 = u, u = (1/d,...,1/d); symmetric,
  // so its top row is u as well.
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, inv_d);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  w(0) = 1.0;
  w -= u;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - (2.0 / w.squaredNorm()) * (w * w.transpose());

  std::mt19937_64 rng(seed);
  Eigen::MatrixXd o = Eigen::MatrixXd::Identity(n, n);
  o.bottomRightCorner(n - 1, n - 1) = random_orthogonal(n - 1, rng);
  o = o * h;  // top row of o equals the top row of h = (1/d,...,1/d)

  OperatorBasis b;
  b.dim = d;
  b.kind = BasisKind::unit_trace_random;
  b.hermitian = true;
  b.operators = rotate_basis(gell_mann_basis(d).operators, o);
  return b;
}

OperatorBasis positive_trace_basis(int d, std::uint64_t seed) {
  if (d < 2) {
    throw std::invalid_argument("positive_trace_basis: dimension must be >= 2");
  }
  const int n = d * d;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int attempt = 0; attempt < 10; ++attempt) {
    Eigen::MatrixXd cols(n, n);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) cols(i, k) = gauss(rng);
      cols(0, k) = std::abs(cols(0, k));
    }

    // modified Gram-Schmidt with one re-orthogonalization pass
    bool degenerate = false;
    for (int k = 0; k < n && !degenerate; ++k) {
      Eigen::VectorXd v = cols.col(k);
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < k; ++j) {
          v -= cols.col(j).dot(v) * cols.col(j);
        }
      }
      const double norm = v.norm();
      if (norm < 1e-8) {
        degenerate = true;
        break;
      }
      v /= norm;
      if (std::abs(v(0)) < 1e-8) {
        degenerate = true;
        break;
      }
      if (v(0) < 0.0) v = -v;  // sign flip keeps orthonormality, fixes the trace sign
      cols.col(k) = v;
    }
    if (degenerate) continue;

    OperatorBasis b;
    b.dim = d;
    b.kind = BasisKind::positive_trace_random;
    b.hermitian = true;
    b.operators = rotate_basis(gell_mann_basis(d).operators, cols);
    return b;
  }
  throw std::runtime_error("positive_trace_basis: Gram-Schmidt failed 10 times (rank deficiency)");
}

OperatorBasis matrix_unit_basis(int d) {
  if (d < 1) {
    throw std::invalid_argument("matrix_unit_basis: dimension must be >= 1");
  }
  OperatorBasis b;
  b.dim = d;
  b.kind = BasisKind::matrix_unit;
  b.hermitian = false;
  const double s = std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = s;
      b.operators.push_back(e);
    }
  }
  return b;
}

Vector coefficients(const Matrix& x, const OperatorBasis& b) {
  if (x.rows() != b.dim || x.cols() != b.dim) {
    throw std::invalid_argument("coefficients: operator dimension does not match basis");
  }
  Vector out(static_cast<Eigen::Index>(b.operators.size()));
  for (std::size_t i = 0; i < b.operators.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = hs_inner(x, b.operators[i]) / static_cast<double>(b.dim);
  }
  return out;
}

Matrix reconstruct_from_coefficients(const Vector& coeffs, const OperatorBasis& b) {
  if (coeffs.size() != static_cast<Eigen::Index>(b.operators.size())) {
    throw std::invalid_argument("reconstruct_from_coefficients: coefficient count mismatch");
  }
  Matrix out = Matrix::Zero(b.dim, b.dim);
  for (std::size_t i = 0; i < b.operators.size(); ++i) {
    out += coeffs(static_cast<Eigen::Index>(i)) * b.operators[i];
  }
  return out;
}

BasisVerification verify_basis(const OperatorBasis& b) {
  BasisVerification v;
  const auto n = b.operators.size();
  if (b.dim < 1 || n != static_cast<std::size_t>(b.dim) * b.dim) {
    return v;  // structurally broken: everything stays false
  }
  const double d = static_cast<double>(b.dim);
  const double sqrt_d = std::sqrt(d);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = hs_inner(b.operators[i], b.operators[j]);
      const double target = (i == j) ? d : 0.0;
      v.max_gram_residual = std::max(v.max_gram_residual, std::abs(g - target));
    }
    v.max_norm_residual =
        std::max(v.max_norm_residual, std::abs(frobenius_norm(b.operators[i]) - sqrt_d));
    if (b.hermitian) {
      const Matrix& c = b.operators[i];
      v.max_hermiticity_residual =
          std::max(v.max_hermiticity_residual, (c - c.adjoint()).cwiseAbs().maxCoeff());
    }
    const Complex tr = b.operators[i].trace();
    if (i == 0 || tr.real() < v.min_real_trace) v.min_real_trace = tr.real();
    if (b.kind == BasisKind::unit_trace_random || b.kind == BasisKind::phase_point) {
      v.max_trace_residual = std::max(v.max_trace_residual, std::abs(tr - Complex(1.0, 0.0)));
    }
  }

  v.gram_ok = v.max_gram_residual <= kGramTol;
  v.norm_ok = v.max_norm_residual <= kNormTol;
  v.hermitian_ok = !b.hermitian || v.max_hermiticity_residual <= 1e-12 * (1.0 + sqrt_d);
  v.trace_ok = true;
  if (b.kind == BasisKind::unit_trace_random || b.kind == BasisKind::phase_point) {
    v.trace_ok = v.max_trace_residual <= kTraceTol;
  } else if (b.kind == BasisKind::positive_trace_random) {
    v.trace_ok = v.min_real_trace > 0.0;
  }
  v.pass = v.gram_ok && v.norm_ok && v.hermitian_ok && v.trace_ok;
  return v;
}

std::vector<Eigen::VectorXd> basis_spectra(const OperatorBasis& b) {
  if (!b.hermitian) {
    throw std::invalid_argument("basis_spectra: spectra are reported for Hermitian bases only");
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(b.operators.size());
  for (const Matrix& c : b.operators) out.push_back(hermitian_eigenvalues(c));
  return out;
}

bool spectra_match(const OperatorBasis& a, const OperatorBasis& b, double tol) {
  if (a.dim != b.dim || a.operators.size() != b.operators.size()) return false;
  auto sa = basis_spectra(a);
  auto sb = basis_spectra(b);
  std::vector<bool> used(sb.size(), false);
  for (const auto& spectrum : sa) {
    bool found = false;
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (!used[j] && (spectrum - sb[j]).cwiseAbs().maxCoeff() <= tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

ConvexityScanResult convex_combination_scan(const OperatorBasis& b, long long trials,
                                            std::uint64_t seed, double max_weight, Exec exec) {
  if (trials < 1) {
    throw std::invalid_argument("convex_combination_scan: trials must be >= 1");
  }
  const int n = static_cast<int>(b.operators.size());
  if (n < 2 && max_weight < 1.0) {
    throw std::invalid_argument("convex_combination_scan: weight cap is unreachable with one generator");
  }
  const double d = static_cast<double>(b.dim);

  std::vector<double> identity_residual(static_cast<std::size_t>(trials), 0.0);
  std::vector<double> norm_sq(static_cast<std::size_t>(trials), 0.0);

  auto body = [&](long long t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Eigen::VectorXd q(n);
    // uniform on the simplex via normalized exponentials; resample until
    // the largest weight respects the cap
    do {
      for (int i = 0; i < n; ++i) q(i) = -std::log(1.0 - unif(rng));
      q /= q.sum();
    } while (q.maxCoeff() > max_weight);

    Matrix x = Matrix::Zero(b.dim, b.dim);
    for (int i = 0; i < n; ++i) x += q(i) * b.operators[i];
    const double nsq = x.squaredNorm();
    norm_sq[static_cast<std::size_t>(t)] = nsq;
    identity_residual[static_cast<std::size_t>(t)] = std::abs(nsq - d * q.squaredNorm());
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < trials; ++t) body(t);
  } else {
    for (long long t = 0; t < trials; ++t) body(t);
  }

  ConvexityScanResult r;
  r.trials = trials;
  r.max_identity_residual = *std::max_element(identity_residual.begin(), identity_residual.end());
  r.max_norm_sq = *std::max_element(norm_sq.begin(), norm_sq.end());
  const double sqrt_d = std::sqrt(d);
  for (const Matrix& c : b.operators) {
    r.max_vertex_norm_residual =
        std::max(r.max_vertex_norm_residual, std::abs(frobenius_norm(c) - sqrt_d));
  }
  return r;
}

}  // namespace sepspace
