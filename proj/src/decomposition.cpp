#include "sepspace/decomposition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sepspace {

namespace {

void require_consistent(const SeparableDecomposition& d, const char* what) {
  const auto n = static_cast<std::size_t>(d.term_count());
  if (d.a_ops.size() != n || d.b_ops.size() != n) {
    throw std::invalid_argument(std::string(what) + ": weights and operator lists disagree");
  }
  for (const Matrix& a : d.a_ops) {
    if (a.rows() != d.dim_a || a.cols() != d.dim_a) {
      throw std::invalid_argument(std::string(what) + ": A-side operator has wrong dimension");
    }
  }
  for (const Matrix& b : d.b_ops) {
    if (b.rows() != d.dim_b || b.cols() != d.dim_b) {
      throw std::invalid_argument(std::string(what) + ": B-side operator has wrong dimension");
    }
  }
}

int count_distinct(const std::vector<Matrix>& ops, double tol) {
  std::vector<const Matrix*> reps;
  for (const Matrix& m : ops) {
    bool found = false;
    for (const Matrix* r : reps) {
      if ((m - *r).norm() <= tol) {
        found = true;
        break;
      }
    }
    if (!found) reps.push_back(&m);
  }
  return static_cast<int>(reps.size());
}

}  // namespace

SeparableDecomposition maxent_decomposition(const OperatorBasis& b) {
  if (!b.hermitian) {
    throw std::invalid_argument("maxent_decomposition: basis must be Hermitian");
  }
  const BasisVerification v = verify_basis(b);
  if (!v.pass) {
    throw std::invalid_argument("maxent_decomposition: basis fails verification");
  }
  const int n = b.dim * b.dim;
  SeparableDecomposition d;
  d.dim_a = b.dim;
  d.dim_b = b.dim;
  d.weights = Eigen::VectorXd::Constant(n, 1.0 / n);
  d.a_ops.reserve(static_cast<std::size_t>(n));
  d.b_ops.reserve(static_cast<std::size_t>(n));
  for (const Matrix& c : b.operators) {
    d.a_ops.push_back(c);
    d.b_ops.push_back(c.transpose());
  }
  return d;
}

SeparableDecomposition pure_state_decomposition(const SchmidtVector& lambda) {
  if (std::abs(lambda.values.squaredNorm() - 1.0) > 1e-10) {
    throw std::invalid_argument("pure_state_decomposition: Schmidt vector is not normalized");
  }
  const int d = lambda.rank(1e-12);
  if (d < 1) {
    throw std::invalid_argument("pure_state_decomposition: no nonzero Schmidt coefficients");
  }
  const Eigen::VectorXd lam = lambda.values.head(d);

  SeparableDecomposition out;
  out.dim_a = d;
  out.dim_b = d;
  out.weights = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(d) * d,
                                          1.0 / (static_cast<double>(d) * d));
  const double two_pi = 2.0 * std::numbers::pi;
  for (int s = 0; s < d; ++s) {
    for (int t = 0; t < d; ++t) {
      Matrix a(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const double phase = two_pi * (((s * i + t * j) % d)) / d;
          a(i, j) = std::sqrt(lam(i) * lam(j)) * std::polar(1.0, phase);
        }
      }
      out.a_ops.push_back(a);
      out.b_ops.push_back(a.conjugate());
    }
  }
  return out;
}

Matrix reconstruct(const SeparableDecomposition& d) {
  require_consistent(d, "reconstruct");
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(d.dim_a) * d.dim_b,
                            static_cast<Eigen::Index>(d.dim_a) * d.dim_b);
  for (int k = 0; k < d.term_count(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    sum += d.weights(k) * tensor_product(d.a_ops[i], d.b_ops[i]);
  }
  return sum;
}

VerifyReport verify(const SeparableDecomposition& d, const Matrix& target, double tol) {
  if (tol <= 0.0) {
    throw std::invalid_argument("verify: tolerance must be positive");
  }
  if (target.rows() != static_cast<Eigen::Index>(d.dim_a) * d.dim_b || target.rows() != target.cols()) {
    throw std::invalid_argument("verify: target dimension must equal dimA*dimB");
  }
  VerifyReport r;
  r.tolerance = tol;
  r.error = (reconstruct(d) - target).norm();
  r.ok = r.error <= tol;
  return r;
}

DecompositionDiagnostics diagnostics(const SeparableDecomposition& d, const OperatorBasis& b) {
  require_consistent(d, "diagnostics");
  if (d.dim_a != b.dim || d.dim_b != b.dim) {
    throw std::invalid_argument("diagnostics: decomposition and basis dimensions disagree");
  }
  if (!b.hermitian) {
    throw std::invalid_argument("diagnostics: expansion basis must be Hermitian");
  }
  const int n = b.dim * b.dim;
  const int terms = d.term_count();
  const double dim = static_cast<double>(b.dim);

  DecompositionDiagnostics out;
  out.term_count = terms;
  out.distinct_a_count = count_distinct(d.a_ops, 1e-10);
  out.distinct_b_count = count_distinct(d.b_ops, 1e-10);
  out.reconstruction_error = (reconstruct(d) - maxent_state(b.dim)).norm();
  out.norm_products = Eigen::VectorXd(terms);

  std::vector<Vector> alpha(static_cast<std::size_t>(terms));
  std::vector<Vector> beta(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) {
    const auto i = static_cast<std::size_t>(k);
    alpha[i] = coefficients(d.a_ops[i], b);
    // B_k = sum_j (beta_j)* C_j^T, and tr(C_i^T (C_j^T)^dag) = d delta_ij,
    // so (beta_j)* = tr(B_k (C_j^T)^dag) / d
    beta[i] = Vector(n);
    for (int j = 0; j < n; ++j) {
      const Matrix cjt = b.operators[static_cast<std::size_t>(j)].transpose();
      beta[i](j) = std::conj(hs_inner(d.b_ops[i], cjt) / dim);
    }
    out.norm_products(k) = frobenius_norm(d.a_ops[i]) * frobenius_norm(d.b_ops[i]);
  }

  Eigen::MatrixXcd match = Eigen::MatrixXcd::Zero(n, n);
  Complex vectorsep(0.0, 0.0);
  double prop_residual = 0.0;
  for (int k = 0; k < terms; ++k) {
    const auto i = static_cast<std::size_t>(k);
    match += (dim * dim * d.weights(k)) * (alpha[i] * beta[i].adjoint());
    vectorsep += d.weights(k) * beta[i].dot(alpha[i]);
    prop_residual =
        std::max(prop_residual, (beta[i].squaredNorm() * alpha[i] - beta[i]).norm());
  }
  out.match_residual = (match - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  out.vectorsep_sum = vectorsep;
  out.proportionality_residual = prop_residual;
  out.all_terms_extremal = true;
  for (int k = 0; k < terms; ++k) {
    if (std::abs(out.norm_products(k) - dim) > 1e-9) {
      out.all_terms_extremal = false;
      break;
    }
  }
  return out;
}

SeparableDecomposition equalize_norms(const SeparableDecomposition& d) {
  require_consistent(d, "equalize_norms");
  double gamma = 0.0;
  for (int k = 0; k < d.term_count(); ++k) {
    if (d.weights(k) <= 0.0) continue;
    const auto i = static_cast<std::size_t>(k);
    const double na = frobenius_norm(d.a_ops[i]);
    const double nb = frobenius_norm(d.b_ops[i]);
    if (na == 0.0 || nb == 0.0) {
      throw std::invalid_argument("equalize_norms: zero-norm operator in a weighted term");
    }
    gamma += d.weights(k) * na * nb;
  }
  if (gamma <= 0.0) {
    throw std::invalid_argument("equalize_norms: decomposition has no weighted terms");
  }

  SeparableDecomposition out;
  out.dim_a = d.dim_a;
  out.dim_b = d.dim_b;
  std::vector<double> new_weights;
  const double target = std::sqrt(gamma);
  for (int k = 0; k < d.term_count(); ++k) {
    if (d.weights(k) <= 0.0) continue;
    const auto i = static_cast<std::size_t>(k);
    const double na = frobenius_norm(d.a_ops[i]);
    const double nb = frobenius_norm(d.b_ops[i]);
    new_weights.push_back(d.weights(k) * na * nb / gamma);
    out.a_ops.push_back((target / na) * d.a_ops[i]);
    out.b_ops.push_back((target / nb) * d.b_ops[i]);
  }
  out.weights = Eigen::Map<Eigen::VectorXd>(new_weights.data(),
                                            static_cast<Eigen::Index>(new_weights.size()));
  return out;
}

}  // namespace sepspace
