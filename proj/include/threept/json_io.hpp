#pragma once

#include "threept/feasibility.hpp"
#include "threept/realize.hpp"
#include "threept/suites.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace threept::json_io {

using nlohmann::json;

/// Input that does not describe a valid sequence or target. The message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational rational_from(const json& j, const std::string& where);
json rational_to(const Rational& v);

/// A non-negative integer, or the string "inf".
Multiplicity multiplicity_from(const json& j, const std::string& where);
json multiplicity_to(const Multiplicity& m);

/// {"B": "p/q", "finite": [...], "tails": [{"kind": "const"|"geo_lower"|"geo_upper"|"geo_above", ...}]}
DiagonalSpec spec_from(const json& j);
json spec_to(const DiagonalSpec& s);

/// Fields of a target object; any of them may be missing.
struct PartialTarget {
  std::optional<Rational> A, B;
  std::optional<Multiplicity> m0, mA, mB;
};
PartialTarget target_from(const json& j);

json decision_to(const Decision& d);
json admissible_to(const AdmissibleSet& set);
json matrix_to(const SymmetricMatrix& m, const RealizationError& err, std::size_t rotations);
json plan_to(const DiagonalSpec& seq, const ConstructionPlan& plan, const PlanCheck& check, std::uint64_t depth);
json suite_to(const SuiteReport& r);

}  // namespace threept::json_io
