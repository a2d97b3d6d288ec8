#ifndef SEPSPACE_JSON_IO_HPP
#define SEPSPACE_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "sepspace/decomposition.hpp"
#include "sepspace/dense_operator.hpp"
#include "sepspace/duality.hpp"
#include "sepspace/lhv.hpp"
#include "sepspace/operator_basis.hpp"

namespace sepspace {

using Json = nlohmann::json;

// Operators: {"dim": d, "entries": [[re, im], ...]} row-major, d^2 pairs.
Json operator_to_json(const Matrix& x);
Matrix operator_from_json(const Json& j);

// {"dim", "kind", "hermitian", "operators": [...]}
Json basis_to_json(const OperatorBasis& b);
OperatorBasis basis_from_json(const Json& j);

// {"dimA", "dimB", "weights", "a_ops", "b_ops"}
Json decomposition_to_json(const SeparableDecomposition& d);
SeparableDecomposition decomposition_from_json(const Json& j);

// {"dim", "elements": [...]}
Json povm_to_json(const Povm& p);
Povm povm_from_json(const Json& j);

// {"dim", "povms": [...]}
Json family_to_json(const MeasurementFamily& f);
MeasurementFamily family_from_json(const Json& j);

// {"hidden_probs", "responses_a", "responses_b"}
Json lhv_model_to_json(const LhvModel& m);
LhvModel lhv_model_from_json(const Json& j);

/// Reads and parses a JSON file; malformed content or a missing file
/// throws std::invalid_argument.
Json load_json(const std::string& path);
void save_json(const Json& j, const std::string& path);

}  // namespace sepspace

#endif
