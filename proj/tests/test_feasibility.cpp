#include "helpers.hpp"

#include "threept/feasibility.hpp"
#include "threept/oracle.hpp"
#include "threept/suites.hpp"

#include <doctest.h>

#include <set>

using namespace threept;
using testing::q;

namespace {

const Multiplicity inf = Multiplicity::inf();

DecideOptions subset() {
  DecideOptions o;
  o.subset_mode = true;
  return o;
}

/// C and D of a sequence made of GeometricLower(c, r) and GeometricUpper(1, c, r) atoms, summed term by term
/// until the remainder is a plain geometric series.
std::pair<Rational, Rational> sums_by_terms(const DiagonalSpec& s, const Rational& A) {
  Rational C = 0, D = 0;
  for (const auto& t : s.tails) {
    const Rational& r = t.ratio();
    std::uint64_t i = 1;
    if (t.kind() == TailKind::GeometricLower) {
      for (; t.term(i) >= A; ++i) D += 1 - t.term(i);
      C += t.coeff() * power(r, i) / (1 - r);
    } else {
      REQUIRE(t.kind() == TailKind::GeometricUpper);
      REQUIRE(t.limit() == 1);
      for (; t.term(i) < A; ++i) C += t.term(i);
      D += t.coeff() * power(r, i) / (1 - r);
    }
  }
  return {C, D};
}

/// Admissible A = p/q (q <= max_den) found by scanning witnesses with the brute-force oracle.
std::set<Rational> grid_admissible(const DiagonalSpec& s, int max_den) {
  std::set<Rational> out;
  for (int den = 2; den <= max_den; ++den)
    for (int num = 1; num < den; ++num) {
      const Rational A(num, den);
      const auto [C, D] = sums_by_terms(s, A);
      if (brute_force_witness(C, D, A, 1, 400, 400)) out.insert(A);
    }
  return out;
}

std::set<Rational> values_of(const AdmissibleSet& set) {
  std::set<Rational> out;
  for (const auto& e : set.entries) out.insert(e.A);
  return out;
}

}  // namespace

TEST_CASE("case labels") {
  CHECK(case_of({q(1, 2), 1, 1, 1, 1}) == CaseLabel::a);
  CHECK(case_of({q(1, 2), 1, inf, 1, 1}) == CaseLabel::b);
  CHECK(case_of({q(1, 2), 1, 1, 1, inf}) == CaseLabel::b_sym);
  CHECK(case_of({q(1, 2), 1, inf, 1, inf}) == CaseLabel::c);
  CHECK(case_of({q(1, 2), 1, 1, inf, 1}) == CaseLabel::d);
  CHECK(case_of({q(1, 2), 1, 1, inf, inf}) == CaseLabel::e);
  CHECK(case_of({q(1, 2), 1, inf, inf, 1}) == CaseLabel::e_sym);
  CHECK(case_of({q(1, 2), 1, inf, inf, inf}) == CaseLabel::f);
  for (auto l : {CaseLabel::a, CaseLabel::b, CaseLabel::c, CaseLabel::d, CaseLabel::e, CaseLabel::f, CaseLabel::b_sym,
                 CaseLabel::e_sym})
    CHECK(case_label_from_string(to_string(l)) == l);
}

TEST_CASE("target validation") {
  const DiagonalSpec s{1, {q(1, 2), q(1, 2)}, {}};
  CHECK_THROWS_AS(decide(s, {q(1, 2), 1, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(decide(s, {1, 1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(decide(s, {q(1, 2), 2, 1, 1, 1}), std::invalid_argument);
  CHECK_NOTHROW(decide(s, {q(1, 2), 1, 0, 1, 1}, subset()));
}

TEST_CASE("finite case") {
  SUBCASE("cardinality mismatch") {
    const auto d = decide({1, {1, 1}, {}}, {q(1, 2), 1, 0, 2, 1}, subset());
    CHECK_FALSE(d.feasible);
    CHECK(d.violation->condition == "cardinality");
  }
  SUBCASE("diagonal of diag(1, 1, 0)") {
    CHECK(decide({1, {1, 1, 0}, {}}, {q(1, 2), 1, 1, 0, 2}, subset()).feasible);
  }
  SUBCASE("flat diagonal") {
    CHECK(decide({1, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)}, {}}, {q(1, 2), 1, 2, 2, 0}, subset()).feasible);
  }
  SUBCASE("one of each eigenvalue") {
    CHECK(decide({1, {q(3, 4), q(1, 2), q(1, 4)}, {}}, {q(1, 2), 1, 1, 1, 1}).feasible);
    const auto d = decide({1, {q(3, 4), q(3, 4), q(1, 2)}, {}}, {q(1, 2), 1, 1, 1, 1});
    CHECK_FALSE(d.feasible);
    CHECK(d.violation->condition == "trace_mismatch");
  }
  SUBCASE("majorization failure") {
    // trace 2 = 2A + B, but the two largest entries exceed B + A
    const auto d = decide({1, {1, 1, 0, 0}, {}}, {q(1, 2), 1, 1, 2, 1});
    CHECK_FALSE(d.feasible);
    CHECK(d.violation->condition == "majorization");
    CHECK(decide({1, {q(3, 4), q(3, 4), q(1, 2), 0}, {}}, {q(1, 2), 1, 1, 2, 1}).feasible);
  }
}

TEST_CASE("single entry followed by zeros is never a diagonal with B in the spectrum") {
  const auto s = testing::single_then_zeros(q(1, 2), 1);
  for (Multiplicity m0 : {Multiplicity(1), Multiplicity(3), inf})
    for (Multiplicity mA : {Multiplicity(1), Multiplicity(2), inf})
      for (Multiplicity mB : {Multiplicity(1), Multiplicity(2), inf}) CHECK_FALSE(decide(s, {q(1, 2), 1, m0, mA, mB}).feasible);
  // (N, k) = (1, -1) solves the trace identity, the summable side rules it out
  CHECK(search_witness(0, q(1, 2), q(1, 2), 1) == std::make_pair(Integer(1), Integer(-1)));
  const auto d = decide(s, {q(1, 2), 1, inf, 1, 1});
  CHECK(d.violation->condition == "summable_trace_mismatch");
  CHECK(decide_any(s, q(1, 2), 1).violation->condition == "summable_trace_mismatch");
}

TEST_CASE("case c") {
  const DiagonalSpec s{1, {}, {TailAtom::geometric_lower(q(1, 2), q(1, 2)), TailAtom::geometric_upper(1, q(1, 2), q(1, 2))}};
  const auto d = decide(s, {q(1, 2), 1, inf, 2, inf});
  REQUIRE(d.feasible);
  CHECK(*d.witness->k == -1);
  const auto d5 = decide(s, {q(1, 2), 1, inf, 5, inf});
  CHECK_FALSE(d5.feasible);

  const auto beta = testing::symmetric_geometric(q(9, 20));
  const auto e = decide(beta, {q(2, 3), 1, inf, 3, inf});
  REQUIRE(e.feasible);
  CHECK(*e.witness->k == -1);
  CHECK(decide({1, {}, {TailAtom::constant(q(1, 3))}}, {q(1, 2), 1, inf, 4, inf}).feasible);
}

TEST_CASE("case d") {
  CHECK(decide({2, {2}, {TailAtom::geometric_upper(1, 1, q(1, 2))}}, {1, 2, 1, inf, 1}).feasible);
  const DiagonalSpec flat{2, {}, {TailAtom::constant(1)}};
  CHECK(decide(flat, {1, 2, 1, inf, 1}).feasible);
  CHECK_FALSE(decide(flat, {1, 2, 2, inf, 1}).feasible);
  CHECK_FALSE(decide({2, {1, 1}, {}}, {1, 2, 1, inf, 1}).feasible);
}

TEST_CASE("case e") {
  CHECK(decide({2, {}, {TailAtom::constant(q(3, 2))}}, {1, 2, 1, inf, inf}).feasible);
  const DiagonalSpec tuned{2, {}, {TailAtom::geometric_upper(1, 1, q(1, 2)), TailAtom::geometric_upper(2, 1, q(1, 2))}};
  const auto d = decide(tuned, {1, 2, 1, inf, inf});
  REQUIRE(d.feasible);
  CHECK(*d.witness->k == 1);
  const DiagonalSpec off{2, {}, {TailAtom::geometric_upper(1, 1, q(1, 2)), TailAtom::geometric_upper(2, q(1, 2), q(1, 2))}};
  CHECK_FALSE(decide(off, {1, 2, 1, inf, inf}).feasible);
  // C1 = 2 > AZ = 1
  CHECK_FALSE(decide({2, {0, 0}, {TailAtom::constant(q(3, 2))}}, {1, 2, 1, inf, inf}).feasible);
  // mirrored instance decided through reflection
  const auto sym = decide(reflect(tuned), {1, 2, inf, inf, 1});
  CHECK(sym.feasible);
  CHECK(sym.label == CaseLabel::e_sym);
}

TEST_CASE("case f") {
  CHECK(decide({1, {}, {TailAtom::constant(q(1, 2))}}, {q(1, 2), 1, inf, inf, inf}).feasible);
  CHECK_FALSE(decide(testing::symmetric_geometric(q(2, 5)), {q(1, 2), 1, inf, inf, inf}).feasible);
  CHECK_FALSE(decide({1, {q(1, 2)}, {}}, {q(1, 2), 1, inf, inf, inf}).feasible);
}

TEST_CASE("any multiplicity") {
  const auto d = decide_any(testing::symmetric_geometric(q(2, 5)), q(1, 2), 1);
  REQUIRE(d.feasible);
  CHECK(*d.witness->N == 2);
  CHECK(*d.witness->k == -1);
  CHECK_FALSE(decide_any(testing::symmetric_geometric(q(1, 4)), q(1, 2), 1).feasible);
  CHECK(decide_any({2, {}, {TailAtom::constant(q(1, 2)), TailAtom::constant(2)}}, 1, 2).feasible);
  CHECK(enumeration_suite(21, 60).passed());
}

TEST_CASE("witness search") {
  CHECK(search_witness(q(2, 3), q(2, 3), q(1, 2), 1) == std::make_pair(Integer(2), Integer(-1)));
  CHECK_FALSE(search_witness(0, 0, q(1, 3), 1).has_value());
  RandomInstances rnd(22);
  for (int t = 0; t < 300; ++t) {
    const Rational B(rnd.integer(1, 3)), A = rnd.inside(0, B, 9);
    const Rational C = rnd.grid(0, 3, 24), D = rnd.grid(0, 3, 24);
    const auto w = search_witness(C, D, A, B);
    const auto brute = brute_force_witness(C, D, A, B, 2000, 2000);
    REQUIRE(w.has_value() == brute.has_value());
    if (w) {
      CHECK(w->first == brute->first);
      CHECK(w->second == brute->second);
    }
  }
}

TEST_CASE("projection index") {
  const auto k = kadison_index({1, {q(1, 2), q(1, 2)}, {}}, q(1, 2));
  CHECK(k.kind == KadisonIndex::Kind::Finite);
  CHECK(k.value == -1);
  for (const auto& alpha : {q(1, 4), q(1, 2), q(3, 4)}) {
    const auto single = kadison_index({1, {q(1, 3)}, {}}, alpha);
    CHECK(single.kind == KadisonIndex::Kind::NonInteger);
    CHECK((single.value == q(1, 3) || single.value == q(-2, 3)));
  }
  CHECK(kadison_index({1, {}, {TailAtom::geometric_upper(1, 1, q(1, 2))}}, q(1, 2)).feasible());
  CHECK(kadison_index({1, {}, {TailAtom::constant(q(1, 3))}}, q(1, 2)).kind == KadisonIndex::Kind::PlusInfinity);
  CHECK(kadison_index({1, {}, {TailAtom::constant(q(2, 3))}}, q(1, 2)).kind == KadisonIndex::Kind::MinusInfinity);
  CHECK(kadison_suite(23, 200).passed());
}

TEST_CASE("spectrum sets") {
  const DiagonalSpec half{2, {}, {TailAtom::constant(1)}};
  CHECK(decide_spectrum_set(half, {{0, q(2, 3), 1, 2}, {inf, 1, 2, inf}}).feasible);
  CHECK_FALSE(decide_spectrum_set(testing::symmetric_geometric(q(2, 5)), {{0, q(1, 3), q(2, 3), 1}, {inf, inf, inf, inf}}).feasible);
  CHECK_FALSE(decide_spectrum_set({1, {q(1, 2)}, {}}, {{0, q(1, 2), 1}, {inf, 1, inf}}).feasible);
  CHECK_THROWS_AS(decide_spectrum_set(half, {{0, 1, 2}, {1, 1, inf}}), std::invalid_argument);
}

TEST_CASE("admissible values for the symmetric geometric pair") {
  auto values = [](const Rational& beta) { return values_of(admissible_set(testing::symmetric_geometric(beta))); };
  const std::set<Rational> three{q(1, 3), q(1, 2), q(2, 3)}, half{q(1, 2)};
  CHECK(values(q(9, 20)) == three);
  CHECK(values(q(11, 25)) == three);
  CHECK(values(q(13, 30)) == half);
  CHECK(values(q(2, 5)) == half);
  CHECK(values(q(1, 3)) == half);
  CHECK(values(q(1, 4)).empty());
  for (const auto& beta : {q(1, 4), q(2, 5), q(13, 30), q(11, 25), q(9, 20)})
    CHECK(values(beta) == grid_admissible(testing::symmetric_geometric(beta), 40));

  const auto set = admissible_set(testing::symmetric_geometric(q(9, 20)));
  REQUIRE(set.entries.size() == 3);
  CHECK(set.entries[2].N == 3);
  CHECK(set.entries[2].k == -1);
  CHECK(set.entries[1].lower == q(9, 20));
  CHECK(set.entries[1].upper == q(11, 20));
}

TEST_CASE("admissible values for the dyadic pair") {
  // frozen from the rational-grid scan below
  const std::set<Rational> expected{q(1, 8), q(1, 6), q(1, 4), q(1, 2), q(3, 4), q(5, 6), q(7, 8)};
  const auto set = admissible_set(testing::dyadic_pair());
  CHECK_FALSE(set.full_interval);
  CHECK(values_of(set) == expected);
  CHECK(grid_admissible(testing::dyadic_pair(), 48) == expected);
  for (const auto& e : set.entries) {
    CHECK(e.lower < e.A);
    CHECK(e.A <= e.upper);
  }
}

TEST_CASE("admissible values with infinite mass") {
  const auto set = admissible_set({1, {}, {TailAtom::constant(q(1, 2))}});
  CHECK(set.full_interval);
  CHECK(set.entries.empty());
  CHECK_THROWS_AS(admissible_set({2, {}, {TailAtom::constant(1)}}), std::invalid_argument);
}

TEST_CASE("breakpoint intervals") {
  const auto s = testing::dyadic_pair();
  CHECK(breakpoint_interval(s, q(2, 3)) == std::make_pair(q(1, 2), q(3, 4)));
  CHECK(breakpoint_interval(s, q(1, 2)) == std::make_pair(q(1, 4), q(1, 2)));
}

TEST_CASE("reflection symmetry of decisions") { CHECK(symmetry_suite(24, 60).passed()); }

TEST_CASE("sampled diagonals are accepted") { CHECK(sampling_suite(25, 60).passed()); }
