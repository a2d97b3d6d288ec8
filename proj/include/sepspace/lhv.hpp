#ifndef SEPSPACE_LHV_HPP
#define SEPSPACE_LHV_HPP

#include <cstdint>
#include <vector>

#include "sepspace/decomposition.hpp"
#include "sepspace/dense_operator.hpp"
#include "sepspace/duality.hpp"
#include "sepspace/exec.hpp"

namespace sepspace {

/// Local hidden variable model extracted from a separable decomposition:
/// the hidden variable k is distributed as p_k, and each side responds to
/// POVM m with outcome weights tr(M_a A_k) (resp. tr(N_b B_k)). For
/// unit-trace local operators in the duals of the measured families these
/// weights are probability distributions, and the model reproduces the
/// quantum joint statistics exactly.
struct LhvModel {
  Eigen::VectorXd hidden_probs;
  // responses_a[k][m](a) = tr(M_{m,a} A_k)
  std::vector<std::vector<Eigen::VectorXd>> responses_a;
  std::vector<std::vector<Eigen::VectorXd>> responses_b;

  int setting_count_a() const { return responses_a.empty() ? 0 : static_cast<int>(responses_a[0].size()); }
  int setting_count_b() const { return responses_b.empty() ? 0 : static_cast<int>(responses_b[0].size()); }
};

/// Builds the model after checking the preconditions: every A_k in the
/// dual of `fa`, every B_k in the dual of `fb` (violations are reported
/// with the offending term, POVM and element), and all local operators of
/// unit trace within 1e-10.
LhvModel lhv_from_decomposition(const SeparableDecomposition& d, const MeasurementFamily& fa,
                                const MeasurementFamily& fb);

/// P(a, b | settings) = sum_k p_k respA(k,a) respB(k,b).
double lhv_joint(const LhvModel& m, int a_setting, int a_outcome, int b_setting, int b_outcome);

/// Full joint table for one setting pair.
Eigen::MatrixXd lhv_joint_table(const LhvModel& m, int a_setting, int b_setting);

/// Born-rule reference Re tr((Ma (x) Nb) state), clamped to [0, 1] after a
/// 1e-12 tolerance window.
double quantum_joint(const Matrix& state, const Matrix& ma, const Matrix& nb);

using CountTable = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Draws `shots` samples of (k, a, b) and tallies the outcomes. Shots are
/// processed in fixed blocks whose RNGs derive from (seed, block index),
/// so the table is identical for serial and parallel execution.
CountTable lhv_sample(const LhvModel& m, int a_setting, int b_setting, long long shots,
                      std::uint64_t seed, Exec exec);

}  // namespace sepspace

#endif
