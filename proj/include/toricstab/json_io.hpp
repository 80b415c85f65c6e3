#pragma once

#include <string>

#include "json.hpp"

#include "toricstab/eps_polynomial.hpp"
#include "toricstab/fan.hpp"
#include "toricstab/flip.hpp"
#include "toricstab/intersection.hpp"
#include "toricstab/sheaf.hpp"

namespace toricstab {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Reads and parses a JSON file. Unreadable or malformed files raise
/// SchemaError located at the path.
Json load_json_file(const std::string& path);

// Readers raise SchemaError for shape/type problems (with a JSON-pointer
// location under `where`) and SemanticError for mathematical violations.

/// {rank, rays: [[int]], maximal_cones: [[int]]}
FanPtr fan_from_json(const Json& j, const std::string& where = "");
/// {coeffs: {"ray": "p/q"}}; absent rays are 0.
InvariantDivisor divisor_from_json(const Json& j, const Fan& f, const std::string& where = "");
/// {rank, filtrations: {"ray": [{level, generators: [["p/q"]]}]}}, generators cumulative.
ToricSheaf sheaf_from_json(const Json& j, FanPtr f, const std::string& where = "");

struct FlipInput {
  FanPtr base;
  Cone cone;
};
/// {fan: {...}, flipping_cone_rays: [int]}
FlipInput flip_from_json(const Json& j, const std::string& where = "");

/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const Json& j, const std::string& where);

OrderedJson to_json(const Rational& q);
OrderedJson to_json(const EpsPolynomial& p);
OrderedJson to_json(const Subspace& s);
OrderedJson fan_to_json(const Fan& f);
OrderedJson divisor_to_json(const InvariantDivisor& d);
/// Each jump lists only generators extending the previous space.
OrderedJson sheaf_to_json(const ToricSheaf& s);

}  // namespace toricstab
