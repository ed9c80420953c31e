#pragma once

#include <json.hpp>

#include "qrt/geometry.hpp"

namespace qrt {

using json = nlohmann::ordered_json;

// {"kind":"Q"} | {"kind":"Fp","p":N}
json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const json& j);

// {"field":...,"vertices":[...],"arrows":[{"name","from","to"}],
//  "relations":[{"terms":[{"coeff":"<scalar>","path":["a1",...]}]}]}
json quiver_to_json(const BoundQuiver& bq);
BoundQuiverPtr quiver_from_json(const json& j);

// plain vertex -> integer object
json dimvec_to_json(const BoundQuiver& bq, const DimVector& d);
DimVector dimvec_from_json(const BoundQuiver& bq, const json& j);

// {"dims":{...},"matrices":{"arrow":[["s",...],...]}} row-major
json rep_to_json(const Representation& m);
Representation rep_from_json(const BoundQuiverPtr& bq, const json& j);

// {"lambda":...,"i":int,"n":int}
json tube_id_to_json(const TubeModuleId& id);
TubeModuleId tube_id_from_json(const json& j);

// {"anchor":{"lambda","i"},"equations":[{"lambda","i","mu"}],"codim":p}
json closure_to_json(const ClosureSystem& sys);

json presentation_to_json(const SemiInvariant& c);

}  // namespace qrt
