#pragma once

#include <nlohmann/json.hpp>

#include "entgeo/comgeo.hpp"
#include "entgeo/invsep.hpp"
#include "entgeo/matrix.hpp"
#include "entgeo/qstate.hpp"

// File formats shared by the library and the CLI. Readers throw FormatError
// for structural problems and DomainError when a well-formed payload violates
// a state or model invariant.
namespace entgeo::json_io {

using nlohmann::json;

/// {"rows", "cols", "re": [...], "im": [...]}, row-major.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// {"type": "density", "dim_a", "dim_b", "matrix": <matrix>}
json to_json(const DensityMatrix& rho);
/// {"type": "pure", "dim_a", "dim_b", "amplitudes": <n x 1 matrix>}
json to_json(const PureState& psi);
/// Accepts either state type; pure states are returned as |psi><psi|.
DensityMatrix state_from_json(const json& j);

/// {"ambient_dim", "vertices": [[...]], "effects": [[...]], "unit": [...]}
json to_json(const ComModel& model);
ComModel model_from_json(const json& j);

/// {"ambient_dim", "vertices": [[...]]}
json to_json(const VPolytope& p);
VPolytope polytope_from_json(const json& j);

/// {"dim_a", "dim_b", "vertices": [<matrix>, ...]}
json to_json(const StatePolytope& c);
StatePolytope state_polytope_from_json(const json& j);

/// {"terms": [{"p", "a": <state>, "b": <state>}, ...]}
json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const json& j);

/// {"dim_a", "dim_b", "coords": [...]}
json to_json(const BilinearState& phi);
BilinearState bilinear_from_json(const json& j);

}  // namespace entgeo::json_io
