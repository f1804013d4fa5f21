#include "helpers.hpp"

#include "threept/suites.hpp"

#include <doctest.h>

using namespace threept;
using testing::q;

TEST_CASE("rational text round trip") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2/4")) == "-1/2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(floor_of(q(-7, 2)) == -4);
  CHECK(ceil_of(q(-7, 2)) == -3);
  CHECK(power(q(2, 3), 3) == q(8, 27));
}

TEST_CASE("extended values") {
  ExtendedRational inf = infinity;
  ExtendedRational one = q(1);
  CHECK((inf + one).is_infinite());
  CHECK((inf - one).is_infinite());
  CHECK_THROWS_AS(one - inf, std::domain_error);
  CHECK(one < inf);
  CHECK(to_string(inf) == "inf");
  CHECK_THROWS_AS(scale(0, inf), std::domain_error);
  CHECK(scale(q(1, 2), one) == q(1, 2));
}

TEST_CASE("tail atoms") {
  const auto lower = TailAtom::geometric_lower(1, q(1, 2));
  CHECK(lower.term(1) == q(1, 2));
  CHECK(lower.term(3) == q(1, 8));

  const auto upper = TailAtom::geometric_upper(1, q(1, 2), q(1, 2));
  CHECK(upper.term(1) == q(3, 4));
  CHECK(upper.increasing());

  SUBCASE("slices keep the family") {
    const auto s = lower.slice(2, 3);
    CHECK(s.kind() == TailKind::GeometricLower);
    for (std::uint64_t i = 1; i <= 5; ++i) CHECK(s.term(i) == lower.term(2 + 3 * (i - 1)));
    const auto c = TailAtom::constant(q(1, 3)).slice(4, 2);
    CHECK(c.term(7) == q(1, 3));
  }

  SUBCASE("affine images") {
    const auto r = upper.affine_image(1, -1);  // 1 - d
    CHECK(r.kind() == TailKind::GeometricLower);
    for (std::uint64_t i = 1; i <= 4; ++i) CHECK(r.term(i) == 1 - upper.term(i));
    const auto above = TailAtom::geometric_upper(q(1, 2), q(1, 4), q(1, 3)).affine_image(1, -1);
    CHECK(above.kind() == TailKind::GeometricAbove);
    CHECK(above.limit() == q(1, 2));
    const auto scaled_up = lower.affine_image(q(-1, 4), q(1, 2));  // 2 d + 1/2
    CHECK(scaled_up.kind() == TailKind::GeometricAbove);
    for (std::uint64_t i = 1; i <= 4; ++i) CHECK(scaled_up.term(i) == 2 * lower.term(i) + q(1, 2));
  }

  SUBCASE("ranges and sums agree with explicit terms") {
    for (const auto& atom : {lower, upper, TailAtom::geometric_above(q(1, 10), q(2, 3), q(2, 5))}) {
      const auto range = atom.range_between(q(1, 5), q(7, 10));
      REQUIRE(range.to.has_value());
      Rational direct = 0;
      std::uint64_t count = 0;
      for (std::uint64_t i = 1; i < 80; ++i) {
        const Rational v = atom.term(i);
        if (v >= q(1, 5) && v < q(7, 10)) {
          CHECK(i >= range.from);
          CHECK(i < *range.to);
          direct += 3 - 2 * v;
          ++count;
        }
      }
      CHECK(range.size() == count);
      CHECK(atom.sum(range, Affine{3, -2}) == direct);
    }
  }

  SUBCASE("closed-form infinite sums") {
    CHECK(lower.sum(IndexRange{1, std::nullopt}, Affine{0, 1}) == q(1));
    CHECK(lower.sum(IndexRange{3, std::nullopt}, Affine{0, 1}) == q(1, 4));
    CHECK(upper.sum(IndexRange{1, std::nullopt}, Affine{1, -1}) == q(1, 2));
    CHECK(upper.sum(IndexRange{1, std::nullopt}, Affine{0, 1}).is_infinite());
  }

  CHECK_THROWS_AS(TailAtom::geometric_lower(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(TailAtom::geometric_lower(0, q(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(TailAtom::geometric_lower(3, q(1, 2)).validate(1), std::invalid_argument);
}

TEST_CASE("partition sums") {
  SUBCASE("single entry followed by zeros") {
    const auto p = partition_sums(testing::single_then_zeros(1, 2), 1, 2);
    CHECK(p.C == q(0));
    CHECK(p.D == q(1));
    CHECK(p.card_I1.is_infinite());
    CHECK(p.card_I2 == std::uint64_t(1));
  }
  SUBCASE("symmetric geometric pair at beta = 2/5") {
    const auto p = partition_sums(testing::symmetric_geometric(q(2, 5)), q(1, 2), 1);
    CHECK(p.C == q(2, 3));
    CHECK(p.D == q(2, 3));
  }
  SUBCASE("dyadic pair for A in (1/2, 3/4]") {
    for (const auto& A : {q(5, 8), q(2, 3), q(3, 4)}) {
      const auto p = partition_sums(testing::dyadic_pair(), A, 1);
      CHECK(p.C == q(1));
      CHECK(p.D == q(1, 2));
    }
  }
  SUBCASE("empty sequence") {
    const auto p = partition_sums(DiagonalSpec{1, {}, {}}, q(1, 2), 1);
    CHECK(p.C == q(0));
    CHECK(p.D == q(0));
    CHECK(p.card_I == std::uint64_t(0));
    CHECK(p.sum_d == q(0));
  }
  SUBCASE("threshold conventions") {
    // d = A lands in I2, d = (A+B)/2 in J3
    const auto p = partition_sums(DiagonalSpec{2, {1, q(3, 2)}, {}}, 1, 2);
    CHECK(p.card_I1 == std::uint64_t(0));
    CHECK(p.card_J2 == std::uint64_t(1));
    CHECK(p.card_J3 == std::uint64_t(1));
    CHECK(p.C2 == q(0));
    CHECK(p.C3 == q(1, 2));
  }
  CHECK_THROWS_AS(partition_sums(testing::dyadic_pair(), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(partition_sums(testing::dyadic_pair(), q(1, 2), 2), std::invalid_argument);
}

TEST_CASE("partition sums ignore the order of terms and atoms") {
  RandomInstances rnd(11);
  for (int t = 0; t < 200; ++t) {
    const Rational B(rnd.integer(1, 3));
    DiagonalSpec s = rnd.spec(B);
    const Rational A = rnd.inside(0, B, 12);
    DiagonalSpec shuffled = s;
    std::shuffle(shuffled.finite.begin(), shuffled.finite.end(), rnd.engine());
    std::shuffle(shuffled.tails.begin(), shuffled.tails.end(), rnd.engine());
    const auto a = partition_sums(s, A, B), b = partition_sums(shuffled, A, B);
    CHECK(a.C == b.C);
    CHECK(a.D == b.D);
    CHECK(a.C1 == b.C1);
    CHECK(a.C2 == b.C2);
    CHECK(a.C3 == b.C3);
    CHECK(a.card_I1 == b.card_I1);
    CHECK(a.card_J3 == b.card_J3);
  }
}

TEST_CASE("reflection") {
  const auto r = reflect(testing::single_then_zeros(1, 2));
  CHECK(r.finite == std::vector<Rational>{1});
  CHECK(r.tails.front().term(5) == 2);

  RandomInstances rnd(12);
  for (int t = 0; t < 100; ++t) {
    const DiagonalSpec s = rnd.spec(Rational(rnd.integer(1, 3)));
    CHECK(testing::prefix_multiset(reflect(reflect(s)), 12) == testing::prefix_multiset(s, 12));
  }

  for (const auto& beta : {q(1, 4), q(2, 5), q(9, 20)}) {
    const auto s = testing::symmetric_geometric(beta);
    CHECK(testing::prefix_multiset(reflect(s), 20) == testing::prefix_multiset(s, 20));
  }

  SUBCASE("sums swap under reflection away from thresholds") {
    const auto s = testing::dyadic_pair();
    const auto p = partition_sums(s, q(5, 8), 1), pr = partition_sums(reflect(s), q(3, 8), 1);
    CHECK(p.C == pr.D);
    CHECK(p.D == pr.C);
  }
}

TEST_CASE("move_mass") {
  SUBCASE("high side exhausted exactly") {
    const auto [low, high] = move_mass({q(3, 10), q(2, 10)}, {q(8, 10)}, q(2, 10), 1);
    CHECK(low[0] + low[1] == q(3, 10));
    CHECK(high == std::vector<Rational>{1});
  }
  SUBCASE("zero transfer is the identity") {
    const std::vector<Rational> low{q(1, 3), q(1, 5)}, high{q(2, 3)};
    const auto [l, h] = move_mass(low, high, 0, 1);
    CHECK(l == low);
    CHECK(h == high);
  }
  SUBCASE("full transfer forces the endpoints") {
    const auto [low, high] = move_mass({q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}, 1, 1);
    CHECK(low == std::vector<Rational>{0, 0});
    CHECK(high == std::vector<Rational>{1, 1});
  }
  SUBCASE("greedy order") {
    const auto [low, high] = move_mass({q(1, 4), q(1, 4)}, {q(3, 4), q(3, 4)}, q(1, 8), 1);
    CHECK(low == std::vector<Rational>{q(1, 4), q(1, 8)});
    CHECK(high == std::vector<Rational>{q(7, 8), q(3, 4)});
  }
  CHECK_THROWS_AS(move_mass({q(1, 4)}, {q(3, 4)}, q(1, 2), 1), std::invalid_argument);
  CHECK_THROWS_AS(move_mass({q(1, 4)}, {q(3, 4)}, q(-1, 8), 1), std::invalid_argument);
  CHECK_THROWS_AS(move_mass({q(3, 4)}, {q(1, 4)}, 0, 1), std::invalid_argument);

  CHECK(move_mass_suite(13, 400).passed());
}
