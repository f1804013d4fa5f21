#pragma once

#include "threept/feasibility.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace threept {

struct SuiteReport {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> notes;  // first few failure descriptions

  bool passed() const { return failures == 0; }
  void fail(std::string note);
};

/// Random exact values used by the suites. All draws come from one mt19937_64 stream.
class RandomInstances {
 public:
  explicit RandomInstances(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  /// lo + (hi - lo) * j / den for uniform j in [0, den].
  Rational grid(const Rational& lo, const Rational& hi, std::int64_t den);
  /// Uniform over p/q with 1 <= q <= max_den, strictly inside (lo, hi).
  Rational inside(const Rational& lo, const Rational& hi, std::int64_t max_den);
  /// Random sequence with explicit terms and up to three tails, values in [0, B].
  DiagonalSpec spec(const Rational& B);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Diagonals of random conjugates of three-point spectra, rationalized, must pass case (a).
SuiteReport sampling_suite(std::uint64_t seed, std::uint64_t trials, std::uint64_t max_n = 10);

/// decide_any against brute_force_witness on random sequences with known C and D.
SuiteReport enumeration_suite(std::uint64_t seed, std::uint64_t trials, std::int64_t box = 10000);

/// construct_three_point on random feasible case (a) instances, checked with the Jacobi solver.
SuiteReport roundtrip_suite(std::uint64_t seed, std::uint64_t trials, std::uint64_t max_n = 12,
                            double diag_tol = 1e-12, double eig_tol = 1e-8);

/// decide(seq, (m0, mA, mB)) against decide(reflect(seq), (mB, mA, m0)) over all eight patterns.
SuiteReport symmetry_suite(std::uint64_t seed, std::uint64_t trials);

/// For finite sequences the projection index condition holds for every alpha exactly when sum d is an integer.
SuiteReport kadison_suite(std::uint64_t seed, std::uint64_t trials);

/// (ops1)/(ops2) of move_mass on random inputs, including eta0 = 0 and exhausting eta0.
SuiteReport move_mass_suite(std::uint64_t seed, std::uint64_t trials);

/// certify + verify_plan on random feasible instances with infinite multiplicities.
SuiteReport certify_suite(std::uint64_t seed, std::uint64_t trials);

}  // namespace threept
