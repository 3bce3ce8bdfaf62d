#pragma once

#include "json.hpp"
#include "tgeom/reconstruct.hpp"
#include "tgeom/space.hpp"

namespace tgeom {

/// Build a space from its JSON spec:
///   {"kind":"euclidean","dim":n}
///   {"kind":"minkowski","dim":n}
///   {"kind":"table","sigma":[[...],...]}
///   {"kind":"restrict","base":<spec>,"region":{"kind":"halfspace","normal":[...],"offset":c}
///                                  | {"kind":"ball_complement","center":[...],"radius":r}
///                                  | {"kind":"ids","ids":[...]}}
///   {"kind":"deformed","base":<spec>,"distortion":{"kind":"scale","lambda":l}
///                                  | {"kind":"affine_cap","d":d,"sigma0":s0}}
/// Malformed specs raise ValidationError naming the offending field.
SigmaSpace parse_space_spec(const nlohmann::json& spec);

nlohmann::ordered_json report_to_json(const EmbeddabilityReport& report);

}  // namespace tgeom
