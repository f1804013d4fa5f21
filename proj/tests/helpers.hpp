#pragma once

#include "threept/sequence.hpp"

#include <algorithm>
#include <vector>

namespace testing {

using threept::DiagonalSpec;
using threept::Rational;
using threept::TailAtom;

inline Rational q(long p, long d = 1) { return Rational(p, d); }

/// {beta^i} and {1 - beta^i}, i >= 1, with B = 1.
inline DiagonalSpec symmetric_geometric(const Rational& beta) {
  return DiagonalSpec{1, {}, {TailAtom::geometric_lower(1, beta), TailAtom::geometric_upper(1, 1, beta)}};
}

/// 1/2, 1/4, ... together with 3/4, 7/8, ...
inline DiagonalSpec dyadic_pair() {
  return DiagonalSpec{1, {}, {TailAtom::geometric_lower(1, q(1, 2)), TailAtom::geometric_upper(1, q(1, 2), q(1, 2))}};
}

/// The sequence A, 0, 0, ...
inline DiagonalSpec single_then_zeros(const Rational& a, const Rational& B) {
  return DiagonalSpec{B, {a}, {TailAtom::constant(0)}};
}

/// First `depth` terms of every tail plus the finite terms, sorted.
inline std::vector<Rational> prefix_multiset(const DiagonalSpec& s, std::uint64_t depth) {
  std::vector<Rational> out = s.finite;
  for (const auto& t : s.tails)
    for (std::uint64_t i = 1; i <= depth; ++i) out.push_back(t.term(i));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testing
