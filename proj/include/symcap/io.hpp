#pragma once

#include <string>

#include <json.hpp>

#include "symcap/ebk.hpp"
#include "symcap/maslov.hpp"
#include "symcap/regions.hpp"
#include "symcap/squeeze.hpp"
#include "symcap/williamson.hpp"

namespace symcap {

using Json = nlohmann::json;

/// {"n": n, "rows": [[...], ...]} for a 2n x 2n matrix.
Json matrix_to_json(const Matrix& m);
/// Strict: "n" must be a positive integer and "rows" exactly 2n rows of 2n
/// finite numbers. Throws Input otherwise.
Matrix matrix_from_json(const Json& j);

/// Plain row arrays of a fixed shape (used for frame blocks).
Json rows_to_json(const Matrix& m);
Matrix rows_from_json(const Json& j, int rows, int cols, const std::string& what);

Vector vector_from_json(const Json& j, const std::string& what);

/// {"variant": "Ball" | "Ellipsoid" | "SolidTorus" | "Cylinder" | "AffineImage", ...}
///   Ball:        "R", optional "n" (default 1) or "center"
///   Ellipsoid:   "hessian" (matrix object), "level" (default 1), optional "center"
///   SolidTorus:  "radii"
///   Cylinder:    "j", "R", optional "n" (default 1) or "center"
///   AffineImage: "S" (matrix object), optional "shift", "inner" (region)
PhaseRegion region_from_json(const Json& j);
Json region_to_json(const PhaseRegion& region);

Json capacity_to_json(const CapacityValue& c);

/// {"n": n, "closed": bool, "frames": [{"X": rows, "P": rows, "t": t}, ...]}
LagrangianLoop loop_from_json(const Json& j);
Json loop_to_json(const LagrangianLoop& loop);
Json maslov_to_json(const MaslovResult& r);

Json nonsqueeze_to_json(const NonsqueezeReport& r);
Json shadow_to_json(const ShadowReport& r);

Json spectrum_to_json(const SymplecticSpectrum& s);

/// Entries carry the capacity condition of each torus.
Json ebk_to_json(const EBKSpectrum& s);
/// Columns N_1..N_n, I_1..I_n, R_1..R_n, energy, capacity, satisfied.
std::string ebk_to_csv(const EBKSpectrum& s);

}  // namespace symcap
