// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include "helpers.hpp"

#include "threept/feasibility.hpp"
#include "threept/suites.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace threept;
using testing::q;

namespace {

constexpr double kExampleSeconds = 1.0;       // per admissible_set call, criteria 1 and 2
constexpr double kDyadicSeconds = 2.0;        // criterion 3
constexpr double kDiagonalTolerance = 1e-12;  // criterion 6
constexpr double kEigenvalueTolerance = 1e-8; // criterion 6
constexpr std::int64_t kWitnessBox = 10000;   // criterion 7, N in [1, box], k in [-box, box]
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string show(const std::set<Rational>& s) {
  std::string out = "{";
  for (const auto& v : s) out += (out.size() > 1 ? ", " : "") + to_string(v);
  return out + "}";
}

struct Timed {
  std::set<Rational> values;
  double seconds;
};

Timed admissible_values(const DiagonalSpec& s) {
  const auto start = std::chrono::steady_clock::now();
  const auto set = admissible_set(s);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::set<Rational> values;
  for (const auto& e : set.entries) values.insert(e.A);
  return {values, set.full_interval ? 0.0 : seconds};
}

Outcome expect_values(const std::vector<std::pair<Rational, std::set<Rational>>>& cases) {
  Outcome o;
  std::ostringstream msg;
  for (const auto& [beta, expected] : cases) {
    const auto got = admissible_values(testing::symmetric_geometric(beta));
    const bool ok = got.values == expected && got.seconds < kExampleSeconds;
    o.pass = o.pass && ok;
    msg << "beta=" << to_string(beta) << " -> " << show(got.values) << " in " << got.seconds << "s"
        << (ok ? "" : " (expected " + show(expected) + ")") << "; ";
  }
  o.detail = msg.str();
  return o;
}

Outcome from_suite(const SuiteReport& r) {
  Outcome o{r.passed(), std::to_string(r.trials - r.failures) + "/" + std::to_string(r.trials) + " passed"};
  if (!r.notes.empty()) o.detail += "; first failure: " + r.notes.front();
  return o;
}

Outcome criterion1() {
  const std::set<Rational> three{q(1, 3), q(1, 2), q(2, 3)};
  return expect_values({{q(9, 20), three}, {q(2, 5), {q(1, 2)}}, {q(1, 4), {}}});
}

Outcome criterion2() {
  const std::set<Rational> three{q(1, 3), q(1, 2), q(2, 3)};
  Outcome o = expect_values({{q(13, 30), {q(1, 2)}}, {q(11, 25), three}});
  // the two values bracket the root of 3 beta^2 + beta - 1 = 0 and straddle C >= 4/3
  for (const auto& [beta, above] : {std::pair{q(13, 30), false}, std::pair{q(11, 25), true}}) {
    const bool root_side = 3 * beta * beta + beta - 1 >= 0;
    const bool c_side = 1 + beta * beta / (1 - beta) >= q(4, 3);
    o.pass = o.pass && root_side == above && c_side == above;
  }
  return o;
}

Outcome criterion3() {
  std::set<Rational> expected;
  for (int n = 1; n <= 8; ++n) {
    expected.insert(q(1, 2 * n));
    expected.insert(q(2 * n - 1, 2 * n));
  }
  const auto got = admissible_values(testing::dyadic_pair());
  Outcome o;
  o.pass = got.values == expected && got.seconds < kDyadicSeconds;
  std::set<Rational> missing;
  for (const auto& v : expected)
    if (!got.values.count(v)) missing.insert(v);
  o.detail = std::to_string(got.values.size()) + " values " + show(got.values) + " in " + std::to_string(got.seconds) +
             "s; expected " + std::to_string(expected.size()) + ", missing " + show(missing);
  return o;
}

Outcome criterion4() {
  const auto s = testing::single_then_zeros(q(1, 2), 1);
  const auto p = partition_sums(s, q(1, 2), 1);
  // (N, k) = (1, -1): C - D = NA + kB and C >= (N + k) A
  const bool trace_identity = p.C.value() - p.D.value() == q(1, 2) - 1 && p.C.value() >= 0;
  Outcome o{trace_identity, ""};
  int targets = 0, accepted = 0;
  const std::vector<Multiplicity> mults{Multiplicity(1), Multiplicity(2), Multiplicity(3), Multiplicity::inf()};
  for (const auto& m0 : mults)
    for (const auto& mA : mults)
      for (const auto& mB : mults) {
        ++targets;
        if (decide(s, {q(1, 2), 1, m0, mA, mB}).feasible) ++accepted;
      }
  o.pass = o.pass && accepted == 0;
  o.detail = std::to_string(accepted) + " of " + std::to_string(targets) + " targets accepted; (1,-1) solves the trace identity: " +
             (trace_identity ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"symmetric geometric pair admissible sets", criterion1},
      {"threshold bracketing at beta = 13/30 and 11/25", criterion2},
      {"dyadic pair admissible set of 15 values", criterion3},
      {"single entry followed by zeros rejected for every target", criterion4},
      {"200 sampled diagonals decided feasible", [] { return from_suite(sampling_suite(kSeed, 200, 10)); }},
      {"100 constructions within 1e-12 / 1e-8",
       [] { return from_suite(roundtrip_suite(kSeed + 1, 100, 12, kDiagonalTolerance, kEigenvalueTolerance)); }},
      {"100 bounded searches agree with brute force", [] { return from_suite(enumeration_suite(kSeed + 2, 100, kWitnessBox)); }},
      {"reflection symmetry on 100 specs x 8 patterns", [] { return from_suite(symmetry_suite(kSeed + 3, 100)); }},
      {"finite projection index law on 500 sequences", [] { return from_suite(kadison_suite(kSeed + 4, 500)); }},
      {"move_mass invariants on 1000 inputs", [] { return from_suite(move_mass_suite(kSeed + 5, 1000)); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -- " << o.detail
              << "\n";
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
