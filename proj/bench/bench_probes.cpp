// Compares the serial reference path of each bulk kernel against the
// OpenMP path: identical results required, wall time reported. Each
// timing is the best of three runs to damp scheduler noise.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include "sepspace/duality.hpp"
#include "sepspace/lhv.hpp"
#include "sepspace/operator_basis.hpp"

using namespace sepspace;

namespace {

template <typename Fn>
double best_of_3(Fn&& fn) {
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, t);
  }
  return best;
}

void row(const std::string& name, double serial_s, double parallel_s, bool equal) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name.c_str(), serial_s, parallel_s,
              serial_s / parallel_s, equal ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const OperatorBasis b = unit_trace_basis(5, 7);
    ConvexityScanResult rs, rp;
    const double ts =
        best_of_3([&] { rs = convex_combination_scan(b, 200000, 11, 1.0 - 1e-3, Exec::serial); });
    const double tp =
        best_of_3([&] { rp = convex_combination_scan(b, 200000, 11, 1.0 - 1e-3, Exec::parallel); });
    row("convex_combination_scan d=5", ts, tp,
        rs.max_identity_residual == rp.max_identity_residual && rs.max_norm_sq == rp.max_norm_sq);
  }

  {
    GeneratorSet g{5, unit_trace_basis(5, 7).operators, true};
    ExtremalityReport rs, rp;
    const double ts = best_of_3([&] { rs = unit_trace_extremality_probe(g, 100000, 13, Exec::serial); });
    const double tp = best_of_3([&] { rp = unit_trace_extremality_probe(g, 100000, 13, Exec::parallel); });
    row("extremality_probe d=5", ts, tp,
        rs.max_mixed_norm_sq == rp.max_mixed_norm_sq && rs.max_density_norm == rp.max_density_norm);
  }

  {
    RegionScanResult rs, rp;
    const double ts = best_of_3([&] { rs = qubit_region_scan(250, 1e-10, Exec::serial); });
    const double tp = best_of_3([&] { rp = qubit_region_scan(250, 1e-10, Exec::parallel); });
    row("qubit_region_scan 250^3", ts, tp,
        rs.compatible == rp.compatible && rs.disagreements == rp.disagreements);
  }

  {
    const SeparableDecomposition d = maxent_decomposition(phase_point_basis(2));
    const MeasurementFamily f = pauli_projective_family();
    const LhvModel m = lhv_from_decomposition(d, f, f);
    CountTable cs, cp;
    const double ts = best_of_3([&] { cs = lhv_sample(m, 0, 0, 5000000, 17, Exec::serial); });
    const double tp = best_of_3([&] { cp = lhv_sample(m, 0, 0, 5000000, 17, Exec::parallel); });
    row("lhv_sample 5e6 shots", ts, tp, cs == cp);
  }

  return 0;
}
