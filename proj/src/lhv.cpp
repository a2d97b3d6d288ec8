#include "sepspace/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace sepspace {

namespace {

constexpr long long kSampleBlock = 8192;

std::vector<std::vector<Eigen::VectorXd>> side_responses(const std::vector<Matrix>& ops,
                                                         const MeasurementFamily& f,
                                                         const char* side) {
  std::vector<std::vector<Eigen::VectorXd>> responses(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (std::abs(ops[k].trace() - Complex(1.0, 0.0)) > 1e-10) {
      throw std::invalid_argument(std::string("lhv_from_decomposition: ") + side + " operator " +
                                  std::to_string(k) + " is not unit trace");
    }
    responses[k].reserve(f.povms.size());
    for (std::size_t m = 0; m < f.povms.size(); ++m) {
      const Povm& p = f.povms[m];
      Eigen::VectorXd w(static_cast<Eigen::Index>(p.elements.size()));
      for (std::size_t a = 0; a < p.elements.size(); ++a) {
        const double v = (ops[k] * p.elements[a]).trace().real();
        if (v < -1e-10) {
          throw std::invalid_argument(std::string("lhv_from_decomposition: ") + side +
                                      " operator " + std::to_string(k) + " violates the dual of POVM " +
                                      std::to_string(m) + " element " + std::to_string(a) +
                                      " (pairing " + std::to_string(v) + ")");
        }
        w(static_cast<Eigen::Index>(a)) = v;
      }
      responses[k].push_back(std::move(w));
    }
  }
  return responses;
}

int draw_index(const Eigen::VectorXd& weights, double total, std::mt19937_64& rng,
               std::uniform_real_distribution<double>& unif) {
  const double u = unif(rng) * total;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    acc += std::max(weights(i), 0.0);
    if (u <= acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size() - 1);
}

}  // namespace

LhvModel lhv_from_decomposition(const SeparableDecomposition& d, const MeasurementFamily& fa,
                                const MeasurementFamily& fb) {
  if (fa.dim != d.dim_a || fb.dim != d.dim_b) {
    throw std::invalid_argument("lhv_from_decomposition: family dimensions do not match the decomposition");
  }
  if (d.term_count() == 0 || d.weights.minCoeff() < 0.0 ||
      std::abs(d.weights.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("lhv_from_decomposition: weights must form a probability distribution");
  }
  LhvModel model;
  model.hidden_probs = d.weights;
  model.responses_a = side_responses(d.a_ops, fa, "A");
  model.responses_b = side_responses(d.b_ops, fb, "B");
  return model;
}

double lhv_joint(const LhvModel& m, int a_setting, int a_outcome, int b_setting, int b_outcome) {
  const int terms = static_cast<int>(m.hidden_probs.size());
  if (terms == 0) throw std::out_of_range("lhv_joint: empty model");
  if (a_setting < 0 || a_setting >= m.setting_count_a() || b_setting < 0 ||
      b_setting >= m.setting_count_b()) {
    throw std::out_of_range("lhv_joint: setting index out of range");
  }
  const auto& wa0 = m.responses_a[0][static_cast<std::size_t>(a_setting)];
  const auto& wb0 = m.responses_b[0][static_cast<std::size_t>(b_setting)];
  if (a_outcome < 0 || a_outcome >= wa0.size() || b_outcome < 0 || b_outcome >= wb0.size()) {
    throw std::out_of_range("lhv_joint: outcome index out of range");
  }
  double p = 0.0;
  for (int k = 0; k < terms; ++k) {
    p += m.hidden_probs(k) * m.responses_a[static_cast<std::size_t>(k)][static_cast<std::size_t>(a_setting)](a_outcome) *
         m.responses_b[static_cast<std::size_t>(k)][static_cast<std::size_t>(b_setting)](b_outcome);
  }
  return p;
}

Eigen::MatrixXd lhv_joint_table(const LhvModel& m, int a_setting, int b_setting) {
  if (a_setting < 0 || a_setting >= m.setting_count_a() || b_setting < 0 ||
      b_setting >= m.setting_count_b()) {
    throw std::out_of_range("lhv_joint_table: setting index out of range");
  }
  const auto na = m.responses_a[0][static_cast<std::size_t>(a_setting)].size();
  const auto nb = m.responses_b[0][static_cast<std::size_t>(b_setting)].size();
  Eigen::MatrixXd table(na, nb);
  for (Eigen::Index a = 0; a < na; ++a) {
    for (Eigen::Index b = 0; b < nb; ++b) {
      table(a, b) = lhv_joint(m, a_setting, static_cast<int>(a), b_setting, static_cast<int>(b));
    }
  }
  return table;
}

double quantum_joint(const Matrix& state, const Matrix& ma, const Matrix& nb) {
  if (ma.rows() * nb.rows() != state.rows() || state.rows() != state.cols()) {
    throw std::invalid_argument("quantum_joint: dimensions do not compose");
  }
  double p = (tensor_product(ma, nb) * state).trace().real();
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    // outside the Born-rule window even before rounding; clamp anyway
    p = std::clamp(p, -1e-12, 1.0 + 1e-12);
  }
  return std::clamp(p, 0.0, 1.0);
}

CountTable lhv_sample(const LhvModel& m, int a_setting, int b_setting, long long shots,
                      std::uint64_t seed, Exec exec) {
  if (shots < 1) throw std::invalid_argument("lhv_sample: shots must be >= 1");
  if (a_setting < 0 || a_setting >= m.setting_count_a() || b_setting < 0 ||
      b_setting >= m.setting_count_b()) {
    throw std::out_of_range("lhv_sample: setting index out of range");
  }
  const int terms = static_cast<int>(m.hidden_probs.size());
  const auto na = m.responses_a[0][static_cast<std::size_t>(a_setting)].size();
  const auto nb = m.responses_b[0][static_cast<std::size_t>(b_setting)].size();

  const long long blocks = (shots + kSampleBlock - 1) / kSampleBlock;
  std::vector<CountTable> partial(static_cast<std::size_t>(blocks));

  auto body = [&](long long blk) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(blk)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    CountTable counts = CountTable::Zero(na, nb);
    const long long begin = blk * kSampleBlock;
    const long long end = std::min(shots, begin + kSampleBlock);
    for (long long s = begin; s < end; ++s) {
      const double uk = unif(rng);
      int k = terms - 1;
      double acc = 0.0;
      for (int i = 0; i < terms; ++i) {
        acc += m.hidden_probs(i);
        if (uk <= acc) {
          k = i;
          break;
        }
      }
      const auto& wa = m.responses_a[static_cast<std::size_t>(k)][static_cast<std::size_t>(a_setting)];
      const auto& wb = m.responses_b[static_cast<std::size_t>(k)][static_cast<std::size_t>(b_setting)];
      const int a = draw_index(wa, wa.cwiseMax(0.0).sum(), rng, unif);
      const int b = draw_index(wb, wb.cwiseMax(0.0).sum(), rng, unif);
      counts(a, b) += 1;
    }
    partial[static_cast<std::size_t>(blk)] = std::move(counts);
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long blk = 0; blk < blocks; ++blk) body(blk);
  } else {
    for (long long blk = 0; blk < blocks; ++blk) body(blk);
  }

  CountTable total = CountTable::Zero(na, nb);
  for (const CountTable& c : partial) total += c;
  return total;
}

}  // namespace sepspace
