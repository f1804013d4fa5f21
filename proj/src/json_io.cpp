#include "threept/json_io.hpp"

#include <limits>
#include <variant>

namespace threept::json_io {

namespace {

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

json integer_to(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return to_string(v);
}

json extended_to(const ExtendedNatural& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

json ref_to(const IndexRef& r) {
  if (r.tail) return {{"tail", r.atom}, {"index", r.index}};
  return {{"finite", r.index}};
}

json indices_to(const DiagonalSpec& seq, const BlockIndices& b, std::uint64_t depth) {
  json refs = json::array();
  for (const auto& r : b.refs) refs.push_back(ref_to(r));
  json slices = json::array();
  for (const auto& s : b.slices) {
    json preview = json::array();
    const TailAtom atom = seq.tails.at(s.atom).slice(s.start, s.step);
    for (std::uint64_t i = 1; i <= depth; ++i) preview.push_back(rational_to(atom.term(i)));
    slices.push_back({{"tail", s.atom}, {"start", s.start}, {"step", s.step}, {"terms", preview}});
  }
  return {{"refs", refs}, {"slices", slices}};
}

}  // namespace

Rational rational_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw InputError(where + ": expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
}

json rational_to(const Rational& v) { return to_string(v); }

Multiplicity multiplicity_from(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "inf") return Multiplicity::inf();
  if (j.is_number_unsigned()) return Multiplicity(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos && text.size() < 19)
      return Multiplicity(std::stoull(text));
  }
  throw InputError(where + ": expected a non-negative integer or \"inf\"");
}

json multiplicity_to(const Multiplicity& m) {
  if (m.is_infinite()) return "inf";
  return m.value();
}

DiagonalSpec spec_from(const json& j) {
  DiagonalSpec s;
  s.bound = rational_from(field(j, "B", "sequence"), "sequence.B");
  if (auto it = j.find("finite"); it != j.end()) {
    if (!it->is_array()) throw InputError("sequence.finite: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      s.finite.push_back(rational_from((*it)[i], "sequence.finite[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("tails"); it != j.end()) {
    if (!it->is_array()) throw InputError("sequence.tails: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& t = (*it)[i];
      const std::string where = "sequence.tails[" + std::to_string(i) + "]";
      const json& kind_field = field(t, "kind", where);
      if (!kind_field.is_string()) throw InputError(where + ".kind: expected a string");
      const auto kind = kind_field.get<std::string>();
      auto get = [&](const char* key) { return rational_from(field(t, key, where), where + "." + key); };
      try {
        if (kind == "const")
          s.tails.push_back(TailAtom::constant(get("value")));
        else if (kind == "geo_lower")
          s.tails.push_back(TailAtom::geometric_lower(get("c"), get("r")));
        else if (kind == "geo_upper")
          s.tails.push_back(TailAtom::geometric_upper(get("L"), get("c"), get("r")));
        else if (kind == "geo_above")
          s.tails.push_back(TailAtom::geometric_above(get("base"), get("c"), get("r")));
        else
          throw InputError(where + ".kind: unknown tail kind \"" + kind + "\"");
      } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
      }
    }
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("sequence: ") + e.what());
  }
  return s;
}

json spec_to(const DiagonalSpec& s) {
  json finite = json::array();
  for (const auto& v : s.finite) finite.push_back(rational_to(v));
  json tails = json::array();
  for (const auto& t : s.tails) {
    switch (t.kind()) {
      case TailKind::Constant:
        tails.push_back({{"kind", "const"}, {"value", rational_to(t.limit())}});
        break;
      case TailKind::GeometricLower:
        tails.push_back({{"kind", "geo_lower"}, {"c", rational_to(t.coeff())}, {"r", rational_to(t.ratio())}});
        break;
      case TailKind::GeometricUpper:
        tails.push_back({{"kind", "geo_upper"},
                         {"L", rational_to(t.limit())},
                         {"c", rational_to(t.coeff())},
                         {"r", rational_to(t.ratio())}});
        break;
      case TailKind::GeometricAbove:
        tails.push_back({{"kind", "geo_above"},
                         {"base", rational_to(t.limit())},
                         {"c", rational_to(t.coeff())},
                         {"r", rational_to(t.ratio())}});
        break;
    }
  }
  return {{"B", rational_to(s.bound)}, {"finite", finite}, {"tails", tails}};
}

PartialTarget target_from(const json& j) {
  if (!j.is_object()) throw InputError("target: expected an object");
  PartialTarget t;
  if (auto it = j.find("A"); it != j.end()) t.A = rational_from(*it, "target.A");
  if (auto it = j.find("B"); it != j.end()) t.B = rational_from(*it, "target.B");
  if (auto it = j.find("m0"); it != j.end()) t.m0 = multiplicity_from(*it, "target.m0");
  if (auto it = j.find("mA"); it != j.end()) t.mA = multiplicity_from(*it, "target.mA");
  if (auto it = j.find("mB"); it != j.end()) t.mB = multiplicity_from(*it, "target.mB");
  return t;
}

json decision_to(const Decision& d) {
  json out{{"case", to_string(d.label)}, {"feasible", d.feasible}};
  if (d.witness) {
    json w{{"case", to_string(d.witness->label)}};
    if (d.witness->N) w["N"] = integer_to(*d.witness->N);
    if (d.witness->k) w["k"] = integer_to(*d.witness->k);
    if (d.witness->n) w["n"] = integer_to(*d.witness->n);
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  if (d.violation)
    out["violation"] = {{"condition", d.violation->condition}, {"explanation", d.violation->explanation}};
  else
    out["violation"] = nullptr;
  return out;
}

json admissible_to(const AdmissibleSet& set) {
  json values = json::array();
  for (const auto& e : set.entries)
    values.push_back({{"A", rational_to(e.A)},
                      {"N", integer_to(e.N)},
                      {"k", integer_to(e.k)},
                      {"interval", {rational_to(e.lower), rational_to(e.upper)}}});
  return {{"full_interval", set.full_interval}, {"values", values}};
}

json matrix_to(const SymmetricMatrix& m, const RealizationError& err, std::size_t rotations) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return {{"n", m.size()},
          {"rows", rows},
          {"diagonal_error", err.diagonal},
          {"eigenvalue_error", err.eigenvalues},
          {"rotations", rotations}};
}

json plan_to(const DiagonalSpec& seq, const ConstructionPlan& plan, const PlanCheck& check, std::uint64_t depth) {
  json transfers = json::array();
  for (const auto& t : plan.transfers) {
    json low = json::array(), high = json::array();
    for (const auto& r : t.low) low.push_back(ref_to(r));
    for (const auto& r : t.high) high.push_back(ref_to(r));
    transfers.push_back({{"low", low},
                         {"high", high},
                         {"eta", rational_to(t.eta)},
                         {"floor", rational_to(t.floor)},
                         {"ceiling", rational_to(t.ceiling)}});
  }
  json blocks = json::array();
  for (const auto& b : plan.blocks) {
    if (const auto* tp = std::get_if<ThreePointBlock>(&b)) {
      blocks.push_back({{"type", "three_point"},
                        {"indices", indices_to(seq, tp->indices, depth)},
                        {"Z", multiplicity_to(tp->zeros)},
                        {"N", multiplicity_to(tp->inner)},
                        {"K", multiplicity_to(tp->outer)}});
    } else {
      const auto& p = std::get<ProjectionBlock>(b);
      blocks.push_back({{"type", "projection"},
                        {"indices", indices_to(seq, p.indices, depth)},
                        {"scale", rational_to(p.scale)},
                        {"shift", rational_to(p.shift)},
                        {"rank", extended_to(p.rank)},
                        {"kernel", extended_to(p.kernel)}});
    }
  }
  return {{"case", to_string(plan.label)},
          {"target",
           {{"A", rational_to(plan.target.A)},
            {"B", rational_to(plan.target.B)},
            {"m0", multiplicity_to(plan.target.m0)},
            {"mA", multiplicity_to(plan.target.mA)},
            {"mB", multiplicity_to(plan.target.mB)}}},
          {"transfers", transfers},
          {"blocks", blocks},
          {"verified", check.ok},
          {"failures", check.failures}};
}

json suite_to(const SuiteReport& r) {
  return {{"name", r.name}, {"trials", r.trials}, {"failures", r.failures}, {"passed", r.passed()}, {"notes", r.notes}};
}

}  // namespace threept::json_io
