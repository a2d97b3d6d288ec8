#include "sepspace/cli.hpp"

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "sepspace/cross_norm.hpp"
#include "sepspace/decomposition.hpp"
#include "sepspace/dense_operator.hpp"
#include "sepspace/duality.hpp"
#include "sepspace/exec.hpp"
#include "sepspace/json_io.hpp"
#include "sepspace/lhv.hpp"
#include "sepspace/operator_basis.hpp"

namespace sepspace {

namespace {

void print_report(const RunReport& r) {
  std::cout << "command: " << r.command << "\n";
  std::cout << std::setprecision(17);
  for (const auto& [key, value] : r.metrics) {
    std::cout << "  " << key << " = " << value << "\n";
  }
  for (const auto& path : r.artifacts_written) {
    std::cout << "  wrote " << path << "\n";
  }
  std::cout << "RESULT " << (r.pass ? "PASS" : "FAIL") << "\n";
}

std::vector<double> parse_number_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty list");
  }
  return out;
}

/// Shorthand "0.9,0.1" lists the squared Schmidt coefficients.
SchmidtVector schmidt_from_weights(const std::string& csv) {
  const auto weights = parse_number_list(csv, "schmidt weights");
  Eigen::VectorXd lambda(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) {
      throw std::invalid_argument("schmidt weights: entries must be nonnegative");
    }
    lambda(static_cast<Eigen::Index>(i)) = std::sqrt(weights[i]);
  }
  return make_schmidt_vector(lambda);
}

/// Targets: "maxent:d", "schmidt:w1,w2,..." (squared coefficients), or a
/// path to an operator JSON file.
Matrix parse_target(const std::string& token) {
  if (token.rfind("maxent:", 0) == 0) {
    const int d = std::stoi(token.substr(7));
    return maxent_state(d);
  }
  if (token.rfind("schmidt:", 0) == 0) {
    return schmidt_state(schmidt_from_weights(token.substr(8)));
  }
  return operator_from_json(load_json(token));
}

MeasurementFamily parse_family(const std::string& token) {
  if (token == "pauli") return pauli_projective_family();
  return family_from_json(load_json(token));
}

OperatorBasis generate_basis(int dim, const std::string& kind, std::uint64_t seed) {
  switch (basis_kind_from_string(kind)) {
    case BasisKind::gell_mann: return gell_mann_basis(dim);
    case BasisKind::phase_point: return phase_point_basis(dim);
    case BasisKind::unit_trace_random: return unit_trace_basis(dim, seed);
    case BasisKind::positive_trace_random: return positive_trace_basis(dim, seed);
    case BasisKind::matrix_unit: return matrix_unit_basis(dim);
    case BasisKind::custom: break;
  }
  throw std::invalid_argument("basis gen: kind must name a factory, not 'custom'");
}

void append_verification(RunReport& r, const BasisVerification& v) {
  r.metrics.emplace_back("gram_residual", v.max_gram_residual);
  r.metrics.emplace_back("norm_residual", v.max_norm_residual);
  r.metrics.emplace_back("hermiticity_residual", v.max_hermiticity_residual);
  r.metrics.emplace_back("trace_residual", v.max_trace_residual);
  r.metrics.emplace_back("min_real_trace", v.min_real_trace);
  r.pass = v.pass;
}

struct CliState {
  std::uint64_t seed = 12345;
  double tol = 1e-10;
  bool serial = false;
  RunReport report;

  Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"separable decompositions of entangled states over generalized operator state spaces"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags (--seed, --tol, --serial) may follow a subcommand

  CliState st;
  app.add_option("--seed", st.seed, "RNG seed (env SEPSPACE_SEED)")
      ->envname("SEPSPACE_SEED");
  app.add_option("--tol", st.tol, "verification tolerance")->capture_default_str();
  app.add_flag("--serial", st.serial, "run bulk kernels on the serial reference path");

  // ---- basis ----------------------------------------------------------
  auto* basis = app.add_subcommand("basis", "operator basis factories and checks");
  basis->require_subcommand(1);

  auto* basis_gen = basis->add_subcommand("gen", "generate a d^2-element orthogonal basis");
  int gen_dim = 2;
  std::string gen_kind = "gell-mann";
  std::string gen_out;
  basis_gen->add_option("--dim", gen_dim, "local dimension")->required();
  basis_gen
      ->add_option("--kind", gen_kind,
                   "gell-mann | phase-point | unit-trace-random | positive-trace-random | matrix-unit")
      ->required();
  basis_gen->add_option("--out", gen_out, "output JSON path")->required();
  basis_gen->callback([&] {
    const OperatorBasis b = generate_basis(gen_dim, gen_kind, st.seed);
    save_json(basis_to_json(b), gen_out);
    st.report.command = "basis gen";
    st.report.artifacts_written.push_back(gen_out);
    append_verification(st.report, verify_basis(b));
  });

  auto* basis_verify = basis->add_subcommand("verify", "check the basis invariants");
  std::string verify_path;
  basis_verify->add_option("file", verify_path, "basis JSON")->required();
  basis_verify->callback([&] {
    const OperatorBasis b = basis_from_json(load_json(verify_path));
    st.report.command = "basis verify";
    append_verification(st.report, verify_basis(b));
  });

  auto* basis_spectra_cmd = basis->add_subcommand("spectra", "per-element eigenvalues; optional comparison");
  std::string spectra_path, spectra_compare;
  basis_spectra_cmd->add_option("file", spectra_path, "basis JSON")->required();
  basis_spectra_cmd->add_option("--compare", spectra_compare, "second basis JSON");
  basis_spectra_cmd->callback([&] {
    const OperatorBasis b = basis_from_json(load_json(spectra_path));
    const auto spectra = basis_spectra(b);
    std::cout << std::setprecision(12);
    for (std::size_t i = 0; i < spectra.size(); ++i) {
      std::cout << "element " << i << ":";
      for (Eigen::Index k = 0; k < spectra[i].size(); ++k) std::cout << " " << spectra[i](k);
      std::cout << "\n";
    }
    st.report.command = "basis spectra";
    if (!spectra_compare.empty()) {
      const OperatorBasis other = basis_from_json(load_json(spectra_compare));
      const bool match = spectra_match(b, other, 1e-8);
      st.report.metrics.emplace_back("spectra_match", match ? 1.0 : 0.0);
    }
  });

  // ---- decompose ------------------------------------------------------
  auto* decompose = app.add_subcommand("decompose", "build separable decompositions");
  decompose->require_subcommand(1);

  auto* dec_maxent = decompose->add_subcommand("maxent", "maximally entangled state over a Hermitian basis");
  std::string dec_basis_path, dec_out;
  dec_maxent->add_option("--basis", dec_basis_path, "basis JSON")->required();
  dec_maxent->add_option("--out", dec_out, "output JSON path")->required();
  dec_maxent->callback([&] {
    const OperatorBasis b = basis_from_json(load_json(dec_basis_path));
    const SeparableDecomposition d = maxent_decomposition(b);
    save_json(decomposition_to_json(d), dec_out);
    const VerifyReport v = verify(d, maxent_state(b.dim), st.tol);
    st.report.command = "decompose maxent";
    st.report.metrics.emplace_back("reconstruction_error", v.error);
    st.report.metrics.emplace_back("term_count", d.term_count());
    st.report.artifacts_written.push_back(dec_out);
    st.report.pass = v.ok;
  });

  auto* dec_pure = decompose->add_subcommand("pure", "bipartite pure state from a Schmidt vector");
  std::string dec_schmidt, dec_pure_out;
  dec_pure->add_option("--schmidt", dec_schmidt, "squared Schmidt coefficients, e.g. 0.9,0.1")->required();
  dec_pure->add_option("--out", dec_pure_out, "output JSON path")->required();
  dec_pure->callback([&] {
    const SchmidtVector lambda = schmidt_from_weights(dec_schmidt);
    const SeparableDecomposition d = pure_state_decomposition(lambda);
    save_json(decomposition_to_json(d), dec_pure_out);
    SchmidtVector truncated;
    truncated.values = lambda.values.head(lambda.rank());
    const VerifyReport v = verify(d, schmidt_state(truncated), st.tol);
    st.report.command = "decompose pure";
    st.report.metrics.emplace_back("reconstruction_error", v.error);
    st.report.metrics.emplace_back("term_count", d.term_count());
    st.report.metrics.emplace_back("gamma2", gamma2_pure(lambda));
    st.report.artifacts_written.push_back(dec_pure_out);
    st.report.pass = v.ok;
  });

  // ---- verify ---------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "check a decomposition against a target state");
  std::string ver_dec, ver_target;
  verify_cmd->add_option("--decomposition", ver_dec, "decomposition JSON")->required();
  verify_cmd->add_option("--target", ver_target, "maxent:d | schmidt:w1,w2,... | operator JSON path")
      ->required();
  verify_cmd->callback([&] {
    const SeparableDecomposition d = decomposition_from_json(load_json(ver_dec));
    const Matrix target = parse_target(ver_target);
    const VerifyReport v = verify(d, target, st.tol);
    st.report.command = "verify";
    st.report.metrics.emplace_back("reconstruction_error", v.error);
    st.report.metrics.emplace_back("tolerance", v.tolerance);
    st.report.pass = v.ok;
  });

  // ---- diagnostics ----------------------------------------------------
  auto* diag_cmd = app.add_subcommand("diagnostics", "match-identity diagnostics for a maxent decomposition");
  std::string diag_dec, diag_basis;
  diag_cmd->add_option("--decomposition", diag_dec, "decomposition JSON")->required();
  diag_cmd->add_option("--basis", diag_basis, "Hermitian basis JSON")->required();
  diag_cmd->callback([&] {
    const SeparableDecomposition d = decomposition_from_json(load_json(diag_dec));
    const OperatorBasis b = basis_from_json(load_json(diag_basis));
    const DecompositionDiagnostics g = diagnostics(d, b);
    st.report.command = "diagnostics";
    st.report.metrics.emplace_back("reconstruction_error", g.reconstruction_error);
    st.report.metrics.emplace_back("term_count", g.term_count);
    st.report.metrics.emplace_back("distinct_a_count", g.distinct_a_count);
    st.report.metrics.emplace_back("distinct_b_count", g.distinct_b_count);
    st.report.metrics.emplace_back("match_residual", g.match_residual);
    st.report.metrics.emplace_back("vectorsep_sum_real", g.vectorsep_sum.real());
    st.report.metrics.emplace_back("vectorsep_sum_imag", g.vectorsep_sum.imag());
    st.report.metrics.emplace_back("proportionality_residual", g.proportionality_residual);
    st.report.metrics.emplace_back("norm_product_min", g.norm_products.minCoeff());
    st.report.metrics.emplace_back("norm_product_max", g.norm_products.maxCoeff());
    st.report.metrics.emplace_back("all_terms_extremal", g.all_terms_extremal ? 1.0 : 0.0);
    st.report.pass = g.match_residual <= st.tol && std::abs(g.vectorsep_sum - Complex(1, 0)) <= st.tol;
  });

  // ---- crossnorm ------------------------------------------------------
  auto* cross_cmd = app.add_subcommand("crossnorm", "pure-state values and decomposition bounds");
  std::string cross_schmidt, cross_dec;
  cross_cmd->add_option("--schmidt", cross_schmidt, "squared Schmidt coefficients");
  cross_cmd->add_option("--decomposition", cross_dec, "decomposition JSON");
  cross_cmd->callback([&] {
    st.report.command = "crossnorm";
    if (cross_schmidt.empty() && cross_dec.empty()) {
      throw std::invalid_argument("crossnorm: pass --schmidt and/or --decomposition");
    }
    double gamma = 0.0;
    if (!cross_schmidt.empty()) {
      gamma = gamma2_pure(schmidt_from_weights(cross_schmidt));
      st.report.metrics.emplace_back("gamma2_pure", gamma);
    }
    if (!cross_dec.empty()) {
      const SeparableDecomposition d = decomposition_from_json(load_json(cross_dec));
      const CrossNormBound bound = decomposition_cross_bound(d);
      st.report.metrics.emplace_back("cross_bound_sum", bound.sum);
      st.report.metrics.emplace_back("cross_bound_max", bound.max);
      if (!cross_schmidt.empty()) {
        st.report.metrics.emplace_back("tightness_gap", bound.sum - gamma);
        st.report.pass = std::abs(bound.sum - gamma) <= st.tol;
      }
    }
  });

  // ---- dual -----------------------------------------------------------
  auto* dual = app.add_subcommand("dual", "dual-cone positivity checks");
  dual->require_subcommand(1);

  auto* dual_chk = dual->add_subcommand("check", "is an operator in the dual of a measurement family");
  std::string dual_op, dual_fam;
  dual_chk->add_option("--op", dual_op, "operator JSON")->required();
  dual_chk->add_option("--family", dual_fam, "family JSON or 'pauli'")->required();
  dual_chk->callback([&] {
    const Matrix x = operator_from_json(load_json(dual_op));
    const DualCheck c = dual_check(x, parse_family(dual_fam));
    st.report.command = "dual check";
    st.report.metrics.emplace_back("min_pairing", c.min_pairing);
    st.report.metrics.emplace_back("povm_index", c.povm_index);
    st.report.metrics.emplace_back("element_index", c.element_index);
    st.report.pass = c.in_dual;
  });

  auto* dual_region = dual->add_subcommand("region", "qubit tetrahedron measurement region vs closed form");
  int region_grid = 50;
  std::string region_out;
  dual_region->add_option("--grid", region_grid, "points per axis")->capture_default_str();
  dual_region->add_option("--out", region_out, "summary JSON path");
  dual_region->callback([&] {
    const RegionScanResult r = qubit_region_scan(region_grid, st.tol, st.exec());
    st.report.command = "dual region";
    st.report.metrics.emplace_back("grid_points", static_cast<double>(r.grid_points));
    st.report.metrics.emplace_back("compatible", static_cast<double>(r.compatible));
    st.report.metrics.emplace_back("analytic", static_cast<double>(r.analytic));
    st.report.metrics.emplace_back("disagreements", static_cast<double>(r.disagreements));
    st.report.pass = r.disagreements == 0;
    if (!region_out.empty()) {
      save_json(Json{{"grid", region_grid},
                     {"grid_points", r.grid_points},
                     {"compatible", r.compatible},
                     {"analytic", r.analytic},
                     {"disagreements", r.disagreements}},
                region_out);
      st.report.artifacts_written.push_back(region_out);
    }
  });

  // ---- cone -----------------------------------------------------------
  auto* cone = app.add_subcommand("cone", "conic hull membership and extremality");
  cone->require_subcommand(1);

  auto* cone_member = cone->add_subcommand("member", "nonnegative-coefficient membership certificate");
  std::string cone_op, cone_basis;
  cone_member->add_option("--op", cone_op, "operator JSON")->required();
  cone_member->add_option("--basis", cone_basis, "generator basis JSON")->required();
  cone_member->callback([&] {
    const Matrix x = operator_from_json(load_json(cone_op));
    const OperatorBasis b = basis_from_json(load_json(cone_basis));
    GeneratorSet g{b.dim, b.operators, false};
    const ConeMembership c = cone_membership(x, g, st.tol);
    st.report.command = "cone member";
    st.report.metrics.emplace_back("residual", c.residual);
    st.report.metrics.emplace_back("iterations", c.iterations);
    for (Eigen::Index i = 0; i < c.coefficients.size(); ++i) {
      st.report.metrics.emplace_back("c" + std::to_string(i), c.coefficients(i));
    }
    st.report.pass = c.member;
  });

  auto* cone_probe = cone->add_subcommand("probe", "unit-trace extremality probe of conic(W u Q)");
  std::string probe_basis;
  long long probe_trials = 10000;
  cone_probe->add_option("--basis", probe_basis, "unit-trace basis JSON")->required();
  cone_probe->add_option("--trials", probe_trials, "sample count")->capture_default_str();
  cone_probe->callback([&] {
    const OperatorBasis b = basis_from_json(load_json(probe_basis));
    GeneratorSet g{b.dim, b.operators, true};
    const ExtremalityReport r = unit_trace_extremality_probe(g, probe_trials, st.seed, st.exec());
    st.report.command = "cone probe";
    st.report.metrics.emplace_back("trials", static_cast<double>(r.trials));
    st.report.metrics.emplace_back("max_mixed_norm_sq", r.max_mixed_norm_sq);
    st.report.metrics.emplace_back("norm_sq_bound", r.norm_sq_bound);
    st.report.metrics.emplace_back("max_vertex_norm_residual", r.max_vertex_norm_residual);
    st.report.metrics.emplace_back("max_density_norm", r.max_density_norm);
    st.report.pass = r.pass;
  });

  // ---- lhv ------------------------------------------------------------
  auto* lhv = app.add_subcommand("lhv", "local hidden variable models");
  lhv->require_subcommand(1);

  auto* lhv_build = lhv->add_subcommand("build", "model from a decomposition and measured families");
  std::string lb_dec, lb_fa, lb_fb, lb_out;
  bool lb_transpose_b = false;
  lhv_build->add_option("--decomposition", lb_dec, "decomposition JSON")->required();
  lhv_build->add_option("--family-a", lb_fa, "family JSON or 'pauli'")->required();
  lhv_build->add_option("--family-b", lb_fb, "family JSON or 'pauli'")->required();
  lhv_build->add_flag("--transpose-b", lb_transpose_b, "transpose the B-side family elements");
  lhv_build->add_option("--out", lb_out, "output JSON path")->required();
  lhv_build->callback([&] {
    const SeparableDecomposition d = decomposition_from_json(load_json(lb_dec));
    const MeasurementFamily fa = parse_family(lb_fa);
    MeasurementFamily fb = parse_family(lb_fb);
    if (lb_transpose_b) fb = transpose_family(fb);
    const LhvModel m = lhv_from_decomposition(d, fa, fb);
    save_json(lhv_model_to_json(m), lb_out);
    st.report.command = "lhv build";
    st.report.metrics.emplace_back("hidden_values", static_cast<double>(m.hidden_probs.size()));
    st.report.metrics.emplace_back("settings_a", m.setting_count_a());
    st.report.metrics.emplace_back("settings_b", m.setting_count_b());
    st.report.artifacts_written.push_back(lb_out);
  });

  auto* lhv_table = lhv->add_subcommand("table", "joint probability table for one setting pair");
  std::string lt_model, lt_out;
  int lt_a = 0, lt_b = 0;
  lhv_table->add_option("--model", lt_model, "model JSON")->required();
  lhv_table->add_option("--a", lt_a, "A-side setting index")->capture_default_str();
  lhv_table->add_option("--b", lt_b, "B-side setting index")->capture_default_str();
  lhv_table->add_option("--out", lt_out, "table JSON path");
  lhv_table->callback([&] {
    const LhvModel m = lhv_model_from_json(load_json(lt_model));
    const Eigen::MatrixXd table = lhv_joint_table(m, lt_a, lt_b);
    std::cout << std::setprecision(12) << "joint table, settings (" << lt_a << ", " << lt_b << "):\n";
    for (Eigen::Index a = 0; a < table.rows(); ++a) {
      std::cout << "  ";
      for (Eigen::Index b = 0; b < table.cols(); ++b) {
        std::cout << std::setw(16) << table(a, b);
      }
      std::cout << "\n";
    }
    st.report.command = "lhv table";
    st.report.metrics.emplace_back("total_probability", table.sum());
    if (table.rows() == 2 && table.cols() == 2) {
      st.report.metrics.emplace_back("correlation",
                                     table(0, 0) + table(1, 1) - table(0, 1) - table(1, 0));
    }
    if (!lt_out.empty()) {
      Json probs = Json::array();
      for (Eigen::Index a = 0; a < table.rows(); ++a) {
        Json row = Json::array();
        for (Eigen::Index b = 0; b < table.cols(); ++b) row.push_back(table(a, b));
        probs.push_back(std::move(row));
      }
      save_json(Json{{"settings", {lt_a, lt_b}}, {"probs", std::move(probs)}}, lt_out);
      st.report.artifacts_written.push_back(lt_out);
    }
  });

  auto* lhv_sample_cmd = lhv->add_subcommand("sample", "draw shots from the model");
  std::string ls_model, ls_out;
  int ls_a = 0, ls_b = 0;
  long long ls_shots = 100000;
  lhv_sample_cmd->add_option("--model", ls_model, "model JSON")->required();
  lhv_sample_cmd->add_option("--a", ls_a, "A-side setting index")->capture_default_str();
  lhv_sample_cmd->add_option("--b", ls_b, "B-side setting index")->capture_default_str();
  lhv_sample_cmd->add_option("--shots", ls_shots, "sample count")->capture_default_str();
  lhv_sample_cmd->add_option("--out", ls_out, "counts JSON path");
  lhv_sample_cmd->callback([&] {
    const LhvModel m = lhv_model_from_json(load_json(ls_model));
    const CountTable counts = lhv_sample(m, ls_a, ls_b, ls_shots, st.seed, st.exec());
    std::cout << "counts, settings (" << ls_a << ", " << ls_b << "), " << ls_shots << " shots:\n";
    for (Eigen::Index a = 0; a < counts.rows(); ++a) {
      std::cout << "  ";
      for (Eigen::Index b = 0; b < counts.cols(); ++b) std::cout << std::setw(12) << counts(a, b);
      std::cout << "\n";
    }
    st.report.command = "lhv sample";
    st.report.metrics.emplace_back("shots", static_cast<double>(ls_shots));
    if (!ls_out.empty()) {
      Json rows = Json::array();
      for (Eigen::Index a = 0; a < counts.rows(); ++a) {
        Json row = Json::array();
        for (Eigen::Index b = 0; b < counts.cols(); ++b) row.push_back(counts(a, b));
        rows.push_back(std::move(row));
      }
      save_json(Json{{"settings", {ls_a, ls_b}}, {"shots", ls_shots}, {"counts", std::move(rows)}},
                ls_out);
      st.report.artifacts_written.push_back(ls_out);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  print_report(st.report);
  return st.report.pass ? 0 : 1;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("sepspace");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(storage.size());
  for (const std::string& s : storage) argv.push_back(s.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace sepspace
