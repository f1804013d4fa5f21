#include "threept/oracle.hpp"
#include "threept/realize.hpp"
#include "threept/suites.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace threept;

TEST_CASE("sampled diagonals") {
  SUBCASE("trace is preserved") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto d = sample_diagonal(0.5, 1.0, 1, 1, 1, seed);
      REQUIRE(d.size() == 3);
      CHECK(std::abs(std::accumulate(d.begin(), d.end(), 0.0) - 1.5) <= 1e-9);
      for (double x : d) CHECK((x >= -1e-12 && x <= 1.0 + 1e-12));
    }
  }
  SUBCASE("scalar spectrum") {
    for (double x : sample_diagonal(0.25, 1.0, 0, 5, 0, 9)) CHECK(std::abs(x - 0.25) <= 1e-12);
  }
  SUBCASE("deterministic per seed") {
    CHECK(sample_diagonal(0.3, 2.0, 2, 3, 4, 5) == sample_diagonal(0.3, 2.0, 2, 3, 4, 5));
    CHECK(sample_diagonal(0.3, 2.0, 2, 3, 4, 5) != sample_diagonal(0.3, 2.0, 2, 3, 4, 6));
  }
  CHECK_THROWS_AS(sample_diagonal(0.5, 1.0, 0, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_diagonal(0.5, 1.0, 30, 30, 5, 1), std::invalid_argument);
}

TEST_CASE("Jacobi eigenvalues") {
  SymmetricMatrix id(3);
  for (std::size_t i = 0; i < 3; ++i) id.set(i, i, 1.0);
  CHECK(eig_multiset(id) == std::vector<double>{1, 1, 1});

  SymmetricMatrix ones(2);
  ones.set(0, 0, 1);
  ones.set(1, 1, 1);
  ones.set(0, 1, 1);
  const auto e = eig_multiset(ones);
  CHECK(std::abs(e[0] - 2) <= 1e-12);
  CHECK(std::abs(e[1]) <= 1e-12);

  SymmetricMatrix diag(4);
  const std::vector<double> v{0.5, -1.25, 3.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) diag.set(i, i, v[i]);
  CHECK(eig_multiset(diag) == std::vector<double>{3.0, 0.5, 0.0, -1.25});

  CHECK(eig_multiset(SymmetricMatrix(0)).empty());
}

TEST_CASE("brute-force witness") {
  const auto hit = brute_force_witness(Rational(2, 3), Rational(2, 3), Rational(1, 2), 1, 10000, 10000);
  REQUIRE(hit);
  CHECK(*hit == std::make_pair<std::int64_t, std::int64_t>(2, -1));

  const auto guard = brute_force_witness(0, Rational(1, 2), Rational(1, 2), 1, 10000, 10000);
  REQUIRE(guard);
  CHECK(*guard == std::make_pair<std::int64_t, std::int64_t>(1, -1));

  CHECK_FALSE(brute_force_witness(0, 0, Rational(1, 3), 1, 10000, 10000));

  // boxes that are too small
  CHECK_FALSE(brute_force_witness(0, 5, Rational(1, 2), 1, 1, 3));
  CHECK(brute_force_witness(Rational(11, 2), 11, Rational(1, 2), 1, 1, 20).has_value());

  // the arbitrary-precision branch
  const Rational huge = Rational(Integer(1) << 70, 3);
  CHECK(brute_force_witness(huge, huge, Rational(1, 2), 1, 50, 50) == std::make_pair<std::int64_t, std::int64_t>(2, -1));
  CHECK_FALSE(brute_force_witness(Rational(1, 3), Rational(1, 3), Rational(1, 2), 1, 50, 50));
}

TEST_CASE("rationalize") {
  CHECK(rationalize(0.5) == Rational(1, 2));
  CHECK(rationalize(-0.75) == Rational(-3, 4));
  CHECK(rationalize(1.0 / 3.0) == Rational(1, 3));
  CHECK(rationalize(3.0) == 3);
  const double pi = 3.14159265358979;
  CHECK(std::abs(to_double(rationalize(pi, 1e-6)) - pi) <= 1e-6);
  CHECK(rationalize(pi, 1e-2) == Rational(22, 7));
  CHECK_THROWS_AS(rationalize(std::nan("")), std::invalid_argument);
}

TEST_CASE("suites are deterministic") {
  const auto a = sampling_suite(7, 20), b = sampling_suite(7, 20);
  CHECK(a.trials == 20);
  CHECK(a.failures == b.failures);
  CHECK(enumeration_suite(7, 0).passed());
  CHECK(roundtrip_suite(7, 0).trials == 0);
}
