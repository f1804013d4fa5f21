#pragma once

#include "threept/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace threept {

enum class TailKind {
  Constant,        // v, v, v, ...
  GeometricLower,  // c r^i, decreasing to 0
  GeometricUpper,  // L - c r^i, increasing to L
  GeometricAbove,  // base + c r^i, decreasing to base > 0
};

/// Half-open range of tail indices [from, to); to == nullopt means unbounded.
struct IndexRange {
  std::uint64_t from = 1;
  std::optional<std::uint64_t> to;

  bool empty() const { return to && *to <= from; }
  ExtendedNatural size() const;
};

/// f(v) = alpha + beta * v, the integrand of every partition sum.
struct Affine {
  Rational alpha = 0;
  Rational beta = 1;
  Rational operator()(const Rational& v) const { return alpha + beta * v; }
};

/// An infinite monotone tail. Terms are indexed i = 1, 2, ...
class TailAtom {
 public:
  static TailAtom constant(Rational value);
  static TailAtom geometric_lower(Rational c, Rational r);
  static TailAtom geometric_upper(Rational limit, Rational c, Rational r);
  /// base == 0 yields a GeometricLower atom.
  static TailAtom geometric_above(Rational base, Rational c, Rational r);

  TailKind kind() const { return kind_; }
  const Rational& limit() const { return limit_; }
  const Rational& coeff() const { return coeff_; }
  const Rational& ratio() const { return ratio_; }

  bool increasing() const { return kind_ == TailKind::GeometricUpper; }
  bool decreasing() const { return kind_ == TailKind::GeometricLower || kind_ == TailKind::GeometricAbove; }

  Rational term(std::uint64_t i) const;

  /// Terms start, start + step, start + 2 step, ... as an atom of the same family.
  TailAtom slice(std::uint64_t start, std::uint64_t step) const;

  /// Image under v -> (v - shift) / scale; scale may be negative.
  TailAtom affine_image(const Rational& shift, const Rational& scale) const;

  /// Throws std::invalid_argument unless every term lies in [0, bound].
  void validate(const Rational& bound) const;

  /// Indices whose terms lie in [lo, hi); missing bounds are unbounded.
  IndexRange range_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const;

  /// Sum of f over the terms with indices in range.
  ExtendedRational sum(const IndexRange& range, const Affine& f) const;

  friend bool operator==(const TailAtom&, const TailAtom&) = default;

 private:
  TailAtom(TailKind kind, Rational limit, Rational coeff, Rational ratio)
      : kind_(kind), limit_(std::move(limit)), coeff_(std::move(coeff)), ratio_(std::move(ratio)) {}

  // first i with term >= t (increasing) or term < t (decreasing)
  std::optional<std::uint64_t> first_crossing(const Rational& t) const;

  TailKind kind_;
  Rational limit_;
  Rational coeff_;
  Rational ratio_;
};

/// A diagonal sequence in [0, B]: explicit terms plus finitely many infinite tails.
struct DiagonalSpec {
  Rational bound = 1;
  std::vector<Rational> finite;
  std::vector<TailAtom> tails;

  /// Throws std::invalid_argument if B <= 0 or any term leaves [0, B].
  void validate() const;

  bool is_finite() const { return tails.empty(); }

  ExtendedNatural count(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const;
  ExtendedRational sum(const std::optional<Rational>& lo, const std::optional<Rational>& hi, const Affine& f) const;

  /// Smallest sequence value strictly above x, if it exists and is attained.
  std::optional<Rational> next_value_above(const Rational& x) const;
  /// Largest sequence value strictly below x, if it exists and is attained.
  std::optional<Rational> prev_value_below(const Rational& x) const;
};

struct PartitionSums {
  ExtendedRational C, D, C1, C2, C3;
  ExtendedNatural card_I1, card_I2, card_J2, card_J3;
  ExtendedRational sum_d, sum_comp;
  ExtendedNatural card_I;
};

/// I1 = {d < A}, I2 = {d >= A}, J2 = {A <= d < (A+B)/2}, J3 = {d >= (A+B)/2}.
PartitionSums partition_sums(const DiagonalSpec& seq, const Rational& A, const Rational& B);

/// The sequence {B - d_i}.
DiagonalSpec reflect(const DiagonalSpec& seq);

/// Scales every value (and the bound) by t > 0.
DiagonalSpec scaled(const DiagonalSpec& seq, const Rational& t);

/// Moves eta0 of mass from low to high. Low entries are lowered toward floor starting at the last
/// index, high entries raised toward ceiling starting at the first index.
std::pair<std::vector<Rational>, std::vector<Rational>> move_mass(const std::vector<Rational>& low,
                                                                  const std::vector<Rational>& high,
                                                                  const Rational& eta0, const Rational& B);

std::pair<std::vector<Rational>, std::vector<Rational>> move_mass_between(const std::vector<Rational>& low,
                                                                          const std::vector<Rational>& high,
                                                                          const Rational& eta0, const Rational& floor,
                                                                          const Rational& ceiling);

}  // namespace threept
