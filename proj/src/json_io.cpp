#include "sepspace/json_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sepspace {

namespace {

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) {
    throw std::invalid_argument(std::string(what) + ": expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + ": value must be finite");
  }
  return v;
}

}  // namespace

Json operator_to_json(const Matrix& x) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      entries.push_back({x(i, j).real(), x(i, j).imag()});
    }
  }
  return Json{{"dim", x.rows()}, {"entries", std::move(entries)}};
}

Matrix operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw std::invalid_argument("operator: expected {\"dim\", \"entries\"}");
  }
  const int d = j.at("dim").get<int>();
  if (d < 1) {
    throw std::invalid_argument("operator: dim must be >= 1");
  }
  const Json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d) * d) {
    throw std::invalid_argument("operator: entries must hold exactly dim^2 [re, im] pairs");
  }
  Matrix x(d, d);
  std::size_t idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k, ++idx) {
      const Json& pair = entries.at(idx);
      if (!pair.is_array() || pair.size() != 2) {
        throw std::invalid_argument("operator: each entry must be an [re, im] pair");
      }
      x(i, k) = Complex(finite_number(pair.at(0), "operator entry"),
                        finite_number(pair.at(1), "operator entry"));
    }
  }
  return x;
}

Json basis_to_json(const OperatorBasis& b) {
  Json ops = Json::array();
  for (const Matrix& c : b.operators) ops.push_back(operator_to_json(c));
  return Json{{"dim", b.dim},
              {"kind", to_string(b.kind)},
              {"hermitian", b.hermitian},
              {"operators", std::move(ops)}};
}

OperatorBasis basis_from_json(const Json& j) {
  OperatorBasis b;
  b.dim = j.at("dim").get<int>();
  b.kind = basis_kind_from_string(j.at("kind").get<std::string>());
  b.hermitian = j.at("hermitian").get<bool>();
  for (const Json& oj : j.at("operators")) {
    b.operators.push_back(operator_from_json(oj));
    if (b.operators.back().rows() != b.dim) {
      throw std::invalid_argument("basis: operator dimension disagrees with basis dim");
    }
  }
  if (b.operators.size() != static_cast<std::size_t>(b.dim) * b.dim) {
    throw std::invalid_argument("basis: expected exactly dim^2 operators");
  }
  return b;
}

Json decomposition_to_json(const SeparableDecomposition& d) {
  Json weights = Json::array();
  for (int k = 0; k < d.term_count(); ++k) weights.push_back(d.weights(k));
  Json a_ops = Json::array();
  Json b_ops = Json::array();
  for (const Matrix& a : d.a_ops) a_ops.push_back(operator_to_json(a));
  for (const Matrix& b : d.b_ops) b_ops.push_back(operator_to_json(b));
  return Json{{"dimA", d.dim_a},
              {"dimB", d.dim_b},
              {"weights", std::move(weights)},
              {"a_ops", std::move(a_ops)},
              {"b_ops", std::move(b_ops)}};
}

SeparableDecomposition decomposition_from_json(const Json& j) {
  SeparableDecomposition d;
  d.dim_a = j.at("dimA").get<int>();
  d.dim_b = j.at("dimB").get<int>();
  const Json& w = j.at("weights");
  d.weights = Eigen::VectorXd(static_cast<Eigen::Index>(w.size()));
  for (std::size_t k = 0; k < w.size(); ++k) {
    d.weights(static_cast<Eigen::Index>(k)) = finite_number(w.at(k), "decomposition weight");
  }
  for (const Json& oj : j.at("a_ops")) d.a_ops.push_back(operator_from_json(oj));
  for (const Json& oj : j.at("b_ops")) d.b_ops.push_back(operator_from_json(oj));
  if (d.a_ops.size() != static_cast<std::size_t>(d.term_count()) ||
      d.b_ops.size() != static_cast<std::size_t>(d.term_count())) {
    throw std::invalid_argument("decomposition: weights and operator lists must have equal length");
  }
  for (const Matrix& a : d.a_ops) {
    if (a.rows() != d.dim_a) throw std::invalid_argument("decomposition: a_ops dimension mismatch");
  }
  for (const Matrix& b : d.b_ops) {
    if (b.rows() != d.dim_b) throw std::invalid_argument("decomposition: b_ops dimension mismatch");
  }
  return d;
}

Json povm_to_json(const Povm& p) {
  Json elements = Json::array();
  for (const Matrix& m : p.elements) elements.push_back(operator_to_json(m));
  return Json{{"dim", p.dim}, {"elements", std::move(elements)}};
}

Povm povm_from_json(const Json& j) {
  std::vector<Matrix> elements;
  for (const Json& oj : j.at("elements")) elements.push_back(operator_from_json(oj));
  Povm p = make_povm(std::move(elements));
  if (j.contains("dim") && j.at("dim").get<int>() != p.dim) {
    throw std::invalid_argument("povm: declared dim disagrees with elements");
  }
  return p;
}

Json family_to_json(const MeasurementFamily& f) {
  Json povms = Json::array();
  for (const Povm& p : f.povms) povms.push_back(povm_to_json(p));
  return Json{{"dim", f.dim}, {"povms", std::move(povms)}};
}

MeasurementFamily family_from_json(const Json& j) {
  std::vector<Povm> povms;
  for (const Json& pj : j.at("povms")) povms.push_back(povm_from_json(pj));
  return make_family(std::move(povms));
}

Json lhv_model_to_json(const LhvModel& m) {
  Json probs = Json::array();
  for (Eigen::Index k = 0; k < m.hidden_probs.size(); ++k) probs.push_back(m.hidden_probs(k));
  auto responses = [](const std::vector<std::vector<Eigen::VectorXd>>& r) {
    Json out = Json::array();
    for (const auto& per_k : r) {
      Json settings = Json::array();
      for (const auto& w : per_k) {
        Json weights = Json::array();
        for (Eigen::Index a = 0; a < w.size(); ++a) weights.push_back(w(a));
        settings.push_back(std::move(weights));
      }
      out.push_back(std::move(settings));
    }
    return out;
  };
  return Json{{"hidden_probs", std::move(probs)},
              {"responses_a", responses(m.responses_a)},
              {"responses_b", responses(m.responses_b)}};
}

LhvModel lhv_model_from_json(const Json& j) {
  LhvModel m;
  const Json& probs = j.at("hidden_probs");
  m.hidden_probs = Eigen::VectorXd(static_cast<Eigen::Index>(probs.size()));
  for (std::size_t k = 0; k < probs.size(); ++k) {
    m.hidden_probs(static_cast<Eigen::Index>(k)) = finite_number(probs.at(k), "hidden prob");
  }
  auto responses = [](const Json& rj) {
    std::vector<std::vector<Eigen::VectorXd>> out;
    for (const Json& per_k : rj) {
      std::vector<Eigen::VectorXd> settings;
      for (const Json& wj : per_k) {
        Eigen::VectorXd w(static_cast<Eigen::Index>(wj.size()));
        for (std::size_t a = 0; a < wj.size(); ++a) {
          w(static_cast<Eigen::Index>(a)) = finite_number(wj.at(a), "response weight");
        }
        settings.push_back(std::move(w));
      }
      out.push_back(std::move(settings));
    }
    return out;
  };
  m.responses_a = responses(j.at("responses_a"));
  m.responses_b = responses(j.at("responses_b"));
  if (m.responses_a.size() != static_cast<std::size_t>(m.hidden_probs.size()) ||
      m.responses_b.size() != static_cast<std::size_t>(m.hidden_probs.size())) {
    throw std::invalid_argument("lhv model: responses must cover every hidden value");
  }
  return m;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open '" + path + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot write '" + path + "'");
  }
  out << j.dump(2) << "\n";
}

}  // namespace sepspace
