#pragma once

// JSON forms of the result types.
//
// region:      {"intervals": [[lo, hi], ...], "points": [...], "tolerance": t}
// certificate: {"verdict": "PSD"|"NotPSD", "method": ..., "tolerance": ...,
//               "dual_measure": [...], "truncation_level": n,
//               "witness": {"dual_index": j, "indices": [...], "vector": [...], "value": v}}
// rational:    {"exact": "p/q", "value": double}

#include "drg/hypergroup.hpp"
#include "drg/positivity.hpp"
#include "drg/region.hpp"

#include "json.hpp"

namespace drg {

using Json = nlohmann::json;

Json region_to_json(const PositivityRegion& r);
PositivityRegion region_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json rational_to_json(const Rational& r);
Json coefficients_to_json(const RecurrenceCoeffs& c);

}  // namespace drg
