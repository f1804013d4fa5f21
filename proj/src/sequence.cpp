#include "threept/sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace threept {

ExtendedNatural IndexRange::size() const {
  if (!to) return infinity;
  return ExtendedNatural(*to > from ? *to - from : 0);
}

namespace {

void check_geometric(const Rational& c, const Rational& r) {
  if (c <= 0) throw std::invalid_argument("geometric tail needs c > 0, got " + to_string(c));
  if (r <= 0 || r >= 1) throw std::invalid_argument("geometric tail needs 0 < r < 1, got " + to_string(r));
}

}  // namespace

TailAtom TailAtom::constant(Rational value) { return TailAtom(TailKind::Constant, std::move(value), 0, 0); }

TailAtom TailAtom::geometric_lower(Rational c, Rational r) {
  check_geometric(c, r);
  return TailAtom(TailKind::GeometricLower, 0, std::move(c), std::move(r));
}

TailAtom TailAtom::geometric_upper(Rational limit, Rational c, Rational r) {
  check_geometric(c, r);
  return TailAtom(TailKind::GeometricUpper, std::move(limit), std::move(c), std::move(r));
}

TailAtom TailAtom::geometric_above(Rational base, Rational c, Rational r) {
  if (base == 0) return geometric_lower(std::move(c), std::move(r));
  check_geometric(c, r);
  return TailAtom(TailKind::GeometricAbove, std::move(base), std::move(c), std::move(r));
}

Rational TailAtom::term(std::uint64_t i) const {
  if (i == 0) throw std::out_of_range("tail indices start at 1");
  if (kind_ == TailKind::Constant) return limit_;
  Rational offset = coeff_ * power(ratio_, i);
  return increasing() ? limit_ - offset : limit_ + offset;
}

TailAtom TailAtom::slice(std::uint64_t start, std::uint64_t step) const {
  if (start == 0 || step == 0) throw std::invalid_argument("slice needs start >= 1 and step >= 1");
  if (kind_ == TailKind::Constant) return *this;
  Rational r = power(ratio_, step);
  Rational c = coeff_ * power(ratio_, start) / r;
  return TailAtom(kind_, limit_, c, r);
}

TailAtom TailAtom::affine_image(const Rational& shift, const Rational& scale) const {
  if (scale == 0) throw std::invalid_argument("affine image with zero scale");
  Rational new_limit = (limit_ - shift) / scale;
  if (kind_ == TailKind::Constant) return constant(new_limit);
  Rational new_coeff = scale > 0 ? coeff_ / scale : coeff_ / -scale;
  bool now_decreasing = decreasing() == (scale > 0);
  if (now_decreasing) return geometric_above(new_limit, new_coeff, ratio_);
  return geometric_upper(new_limit, new_coeff, ratio_);
}

void TailAtom::validate(const Rational& bound) const {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("tail leaves [0, " + to_string(bound) + "]: " + what);
  };
  switch (kind_) {
    case TailKind::Constant:
      if (limit_ < 0 || limit_ > bound) fail("constant " + to_string(limit_));
      break;
    case TailKind::GeometricLower:
    case TailKind::GeometricAbove:
      if (limit_ < 0) fail("limit " + to_string(limit_));
      if (term(1) > bound) fail("first term " + to_string(term(1)));
      break;
    case TailKind::GeometricUpper:
      if (limit_ > bound) fail("limit " + to_string(limit_));
      if (term(1) < 0) fail("first term " + to_string(term(1)));
      break;
  }
}

std::optional<std::uint64_t> TailAtom::first_crossing(const Rational& t) const {
  if (kind_ == TailKind::Constant) throw std::logic_error("first_crossing on a constant tail");
  // increasing: term >= t  <=>  c r^i <= L - t ; decreasing: term < t  <=>  c r^i < t - L
  Rational gap = increasing() ? limit_ - t : t - limit_;
  if (gap <= 0) return std::nullopt;
  Rational offset = coeff_ * ratio_;
  std::uint64_t i = 1;
  while (increasing() ? offset > gap : offset >= gap) {
    offset *= ratio_;
    ++i;
  }
  return i;
}

IndexRange TailAtom::range_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const {
  const IndexRange empty{1, 1};
  if (kind_ == TailKind::Constant) {
    bool inside = (!lo || limit_ >= *lo) && (!hi || limit_ < *hi);
    return inside ? IndexRange{1, std::nullopt} : empty;
  }
  IndexRange out;
  if (increasing()) {
    if (lo) {
      auto from = first_crossing(*lo);
      if (!from) return empty;
      out.from = *from;
    }
    if (hi) out.to = first_crossing(*hi);
  } else {
    if (hi) {
      auto from = first_crossing(*hi);
      if (!from) return empty;
      out.from = *from;
    }
    if (lo) out.to = first_crossing(*lo);
  }
  if (out.empty()) return empty;
  return out;
}

ExtendedRational TailAtom::sum(const IndexRange& range, const Affine& f) const {
  if (range.empty()) return Rational(0);
  Rational at_limit = f(limit_);
  if (kind_ == TailKind::Constant) {
    if (range.to) return at_limit * Rational(*range.to - range.from);
    if (at_limit == 0) return Rational(0);
    if (at_limit > 0) return infinity;
    throw std::logic_error("tail sum diverges to -infinity");
  }
  Rational signed_coeff = f.beta * (increasing() ? -coeff_ : coeff_);
  Rational head = power(ratio_, range.from);
  if (range.to) {
    Rational n(*range.to - range.from);
    Rational tail = power(ratio_, *range.to);
    return n * at_limit + signed_coeff * (head - tail) / (1 - ratio_);
  }
  if (at_limit > 0) return infinity;
  if (at_limit < 0) throw std::logic_error("tail sum diverges to -infinity");
  return signed_coeff * head / (1 - ratio_);
}

void DiagonalSpec::validate() const {
  if (bound <= 0) throw std::invalid_argument("B must be positive, got " + to_string(bound));
  for (const auto& v : finite)
    if (v < 0 || v > bound)
      throw std::invalid_argument("term " + to_string(v) + " leaves [0, " + to_string(bound) + "]");
  for (const auto& t : tails) t.validate(bound);
}

namespace {

bool in_window(const Rational& v, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  return (!lo || v >= *lo) && (!hi || v < *hi);
}

}  // namespace

ExtendedNatural DiagonalSpec::count(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const {
  std::uint64_t n = 0;
  for (const auto& v : finite)
    if (in_window(v, lo, hi)) ++n;
  ExtendedNatural total(n);
  for (const auto& t : tails) total += t.range_between(lo, hi).size();
  return total;
}

ExtendedRational DiagonalSpec::sum(const std::optional<Rational>& lo, const std::optional<Rational>& hi,
                                   const Affine& f) const {
  Rational s = 0;
  for (const auto& v : finite)
    if (in_window(v, lo, hi)) s += f(v);
  ExtendedRational total(s);
  for (const auto& t : tails) total += t.sum(t.range_between(lo, hi), f);
  return total;
}

std::optional<Rational> DiagonalSpec::next_value_above(const Rational& x) const {
  std::optional<Rational> best;
  auto offer = [&](const Rational& v) {
    if (v > x && (!best || v < *best)) best = v;
  };
  for (const auto& v : finite) offer(v);
  for (const auto& t : tails) {
    if (t.kind() == TailKind::Constant) {
      offer(t.limit());
    } else if (t.increasing()) {
      if (t.limit() <= x) continue;
      auto i = t.range_between(x, std::nullopt).from;
      if (t.term(i) == x) ++i;
      offer(t.term(i));
    } else {
      if (t.limit() >= x) throw std::logic_error("values accumulate just above " + to_string(x));
      auto first_below = t.range_between(std::nullopt, x).from;
      std::uint64_t first_at_most = first_below;
      if (first_below > 1 && t.term(first_below - 1) == x) first_at_most = first_below - 1;
      if (first_at_most > 1) offer(t.term(first_at_most - 1));
    }
  }
  return best;
}

std::optional<Rational> DiagonalSpec::prev_value_below(const Rational& x) const {
  std::optional<Rational> best;
  auto offer = [&](const Rational& v) {
    if (v < x && (!best || v > *best)) best = v;
  };
  for (const auto& v : finite) offer(v);
  for (const auto& t : tails) {
    if (t.kind() == TailKind::Constant) {
      offer(t.limit());
    } else if (t.increasing()) {
      if (t.limit() <= x) throw std::logic_error("values accumulate just below " + to_string(x));
      auto first_at_least = t.range_between(x, std::nullopt).from;
      if (first_at_least > 1) offer(t.term(first_at_least - 1));
    } else {
      if (t.limit() >= x) continue;
      offer(t.term(t.range_between(std::nullopt, x).from));
    }
  }
  return best;
}

PartitionSums partition_sums(const DiagonalSpec& seq, const Rational& A, const Rational& B) {
  if (B != seq.bound) throw std::invalid_argument("B differs from the sequence bound");
  if (!(A > 0 && A < B)) throw std::invalid_argument("need 0 < A < B, got A = " + to_string(A));
  const Rational M = (A + B) / 2;
  const std::nullopt_t open = std::nullopt;
  PartitionSums p;
  p.C = seq.sum(open, A, {0, 1});
  p.C1 = seq.sum(open, A, {A, -1});
  p.D = seq.sum(A, open, {B, -1});
  p.C2 = seq.sum(A, M, {-A, 1});
  p.C3 = seq.sum(M, open, {B, -1});
  p.card_I1 = seq.count(open, A);
  p.card_I2 = seq.count(A, open);
  p.card_J2 = seq.count(A, M);
  p.card_J3 = seq.count(M, open);
  p.sum_d = seq.sum(open, open, {0, 1});
  p.sum_comp = seq.sum(open, open, {B, -1});
  p.card_I = p.card_I1 + p.card_I2;
  return p;
}

DiagonalSpec reflect(const DiagonalSpec& seq) {
  DiagonalSpec out;
  out.bound = seq.bound;
  for (const auto& v : seq.finite) out.finite.push_back(seq.bound - v);
  for (const auto& t : seq.tails) out.tails.push_back(t.affine_image(seq.bound, -1));
  return out;
}

DiagonalSpec scaled(const DiagonalSpec& seq, const Rational& t) {
  if (t <= 0) throw std::invalid_argument("scale factor must be positive");
  DiagonalSpec out;
  out.bound = seq.bound * t;
  for (const auto& v : seq.finite) out.finite.push_back(v * t);
  for (const auto& a : seq.tails) out.tails.push_back(a.affine_image(0, 1 / t));
  return out;
}

std::pair<std::vector<Rational>, std::vector<Rational>> move_mass(const std::vector<Rational>& low,
                                                                  const std::vector<Rational>& high,
                                                                  const Rational& eta0, const Rational& B) {
  return move_mass_between(low, high, eta0, 0, B);
}

std::pair<std::vector<Rational>, std::vector<Rational>> move_mass_between(const std::vector<Rational>& low,
                                                                          const std::vector<Rational>& high,
                                                                          const Rational& eta0, const Rational& floor,
                                                                          const Rational& ceiling) {
  if (floor > ceiling) throw std::invalid_argument("move_mass: floor above ceiling");
  Rational low_room = 0, high_room = 0;
  for (const auto& v : low) {
    if (v < floor || v > ceiling) throw std::invalid_argument("move_mass: low term " + to_string(v) + " out of range");
    low_room += v - floor;
  }
  for (const auto& v : high) {
    if (v < floor || v > ceiling) throw std::invalid_argument("move_mass: high term " + to_string(v) + " out of range");
    high_room += ceiling - v;
  }
  if (!low.empty() && !high.empty() &&
      *std::max_element(low.begin(), low.end()) > *std::min_element(high.begin(), high.end()))
    throw std::invalid_argument("move_mass: some low term exceeds some high term");
  if (eta0 < 0) throw std::invalid_argument("move_mass: eta0 < 0");
  if (eta0 > low_room) throw std::invalid_argument("move_mass: eta0 exceeds the mass available on the low side");
  if (eta0 > high_room) throw std::invalid_argument("move_mass: eta0 exceeds the room available on the high side");

  std::vector<Rational> new_low = low, new_high = high;
  Rational left = eta0;
  for (auto it = new_low.rbegin(); it != new_low.rend() && left > 0; ++it) {
    Rational take = std::min(left, *it - floor);
    *it -= take;
    left -= take;
  }
  left = eta0;
  for (auto it = new_high.begin(); it != new_high.end() && left > 0; ++it) {
    Rational give = std::min(left, ceiling - *it);
    *it += give;
    left -= give;
  }
  return {new_low, new_high};
}

}  // namespace threept
