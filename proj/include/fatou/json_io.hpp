#pragma once

#include <json.hpp>

#include "fatou/basins.hpp"
#include "fatou/lifting.hpp"
#include "fatou/orbits.hpp"
#include "fatou/rays.hpp"

namespace fatou::io {

/// Field order is insertion order, so output bytes are reproducible.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// [re, im]
Json to_json(Complex z);
/// [re, im], or "inf" for the point at infinity.
Json to_json(const SpherePoint& p);
/// Ascending coefficients as [re, im] pairs.
Json to_json(const Polynomial& p);
/// {"degree", "numerator", "denominator"}
Json to_json(const RationalMap& f);
Json to_json(const CriticalPortrait& portrait);
Json to_json(const std::vector<PeriodicPoint>& points);
/// {"angle": "a/b", "samples", "landing", "landed", "residual"}
Json to_json(const RayTrace& ray);
Json to_json(const PolyCurve& c);
Json to_json(const LiftSet& set, Complex omega);
Json to_json(const SignSequence& seq);
/// Grid geometry, cycles, per-component table and cell counts.
Json grid_metadata(const BasinGrid& grid, const ComponentLabeling& labels);

/// Wraps a report as {"schema": 1, "kind": kind, ...body}.
Json report(const std::string& kind, const Json& body);

/// Accepts [re, im] or a bare number.
Complex complex_from_json(const Json& j);
/// {"numerator": [...], "denominator": [...]}, coefficients ascending.
/// The result is normalized.
RationalMap map_from_json(const Json& j);
/// [[re, im], ...] or {"vertices": [[re, im], ...]}.
PolyCurve curve_from_json(const Json& j);

}  // namespace fatou::io
