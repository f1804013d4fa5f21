#include "threept/realize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace threept {

namespace {

[[noreturn]] void defect(const std::string& what) { throw std::logic_error("certify: " + what); }

ExtendedNatural to_count(const ExtendedRational& x, const std::string& what, std::string& failure) {
  if (x.is_infinite()) return infinity;
  if (!is_integer(x.value()) || x.value() < 0) {
    failure = what + " = " + to_string(x.value()) + " is not a natural number";
    return 0;
  }
  return ExtendedNatural(floor_of(x.value()).convert_to<std::uint64_t>());
}

ExtendedNatural to_count(const Multiplicity& m) {
  if (m.is_infinite()) return infinity;
  return m.value();
}

Multiplicity to_multiplicity(const Integer& v) {
  if (v < 0) defect("negative multiplicity " + to_string(v));
  return Multiplicity(v.convert_to<std::uint64_t>());
}

struct ProjectionSummary {
  std::string failure;
  ExtendedNatural rank;
  ExtendedNatural kernel;
};

// Checks that (v - shift) / scale is the diagonal of a projection and reports its rank and kernel.
ProjectionSummary summarize_projection(const std::vector<Rational>& values, const std::vector<TailAtom>& atoms,
                                       const Rational& scale, const Rational& shift) {
  ProjectionSummary out;
  DiagonalSpec q;
  q.bound = 1;
  for (const auto& v : values) q.finite.push_back((v - shift) / scale);
  for (const auto& a : atoms) q.tails.push_back(a.affine_image(shift, scale));
  try {
    q.validate();
  } catch (const std::invalid_argument& e) {
    out.failure = std::string("normalized values leave [0,1]: ") + e.what();
    return out;
  }
  const KadisonIndex idx = kadison_index(q, Rational(1, 2));
  if (!idx.feasible()) {
    out.failure = "index a - b = " + to_string(idx.value) + " is not an integer";
    return out;
  }
  out.rank = to_count(q.sum(std::nullopt, std::nullopt, {0, 1}), "rank", out.failure);
  if (!out.failure.empty()) return out;
  out.kernel = to_count(q.sum(std::nullopt, std::nullopt, {1, -1}), "kernel dimension", out.failure);
  return out;
}

bool is_side_up(const TailAtom& atom, const Rational& t) {
  return atom.limit() > t || (atom.limit() == t && !atom.increasing());
}

struct Pick {
  std::vector<IndexRef> refs;
  std::vector<std::size_t> slices;
};

// Mutable view of the sequence while a plan is assembled: materialized entries with their current
// values and the still-symbolic tail slices.
class Work {
 public:
  Work(const DiagonalSpec& seq, const SpectrumTarget& target) : A(target.A), B(target.B), seq_(seq) {
    plan.target = target;
    for (std::size_t i = 0; i < seq.finite.size(); ++i) vals_[IndexRef::finite_term(i)] = seq.finite[i];
    for (std::size_t a = 0; a < seq.tails.size(); ++a) slices_.push_back(TailSlice{a, 1, 1});
    slice_taken_.assign(slices_.size(), false);
  }

  const DiagonalSpec& seq() const { return seq_; }
  const Rational A, B;
  ConstructionPlan plan;

  const TailAtom& atom_of(std::size_t s) const { return seq_.tails[slices_[s].atom]; }
  TailAtom slice_atom(std::size_t s) const { return atom_of(s).slice(slices_[s].start, slices_[s].step); }
  Rational head(std::size_t s) const { return atom_of(s).term(slices_[s].start); }
  std::size_t slice_count() const { return slices_.size(); }
  bool slice_taken(std::size_t s) const { return slice_taken_[s]; }
  const Rational& value(const IndexRef& r) const { return vals_.at(r); }

  IndexRef pop(std::size_t s) {
    if (slice_taken_[s]) defect("pop from an assigned slice");
    IndexRef ref = IndexRef::tail_term(slices_[s].atom, slices_[s].start);
    vals_[ref] = head(s);
    slices_[s].start += slices_[s].step;
    return ref;
  }

  // afterwards every free slice lies entirely on one side of t
  void settle(const Rational& t) {
    for (std::size_t s = 0; s < slices_.size(); ++s) {
      if (slice_taken_[s] || atom_of(s).kind() == TailKind::Constant) continue;
      const bool up = is_side_up(atom_of(s), t);
      while ((head(s) >= t) != up) pop(s);
    }
  }

  // replaces slice s by its even and odd parts; returns the index of the odd part
  std::size_t split(std::size_t s) {
    TailSlice odd{slices_[s].atom, slices_[s].start + slices_[s].step, slices_[s].step * 2};
    slices_[s].step *= 2;
    slices_.push_back(odd);
    slice_taken_.push_back(false);
    return slices_.size() - 1;
  }

  template <class Pred>
  Pick free_where(Pred pred) const {
    Pick p;
    for (const auto& [ref, v] : vals_)
      if (!taken_.count(ref) && pred(v)) p.refs.push_back(ref);
    for (std::size_t s = 0; s < slices_.size(); ++s)
      if (!slice_taken_[s] && pred(head(s))) p.slices.push_back(s);
    return p;
  }
  Pick free_all() const {
    return free_where([](const Rational&) { return true; });
  }

  ExtendedRational total(const Pick& p, const Affine& f) const {
    ExtendedRational sum = Rational(0);
    for (const auto& r : p.refs) sum += f(vals_.at(r));
    for (auto s : p.slices) sum += slice_atom(s).sum(IndexRange{1, std::nullopt}, f);
    return sum;
  }

  // Finite subset of the group with f-sum >= need (> need when strict). Explicit entries go first.
  std::vector<IndexRef> select(const Pick& group, const Affine& f, const Rational& need, bool strict) {
    std::vector<IndexRef> chosen;
    Rational partial = 0;
    auto done = [&] { return strict ? partial > need : partial >= need; };
    if (done()) return chosen;
    for (const auto& r : group.refs) {
      chosen.push_back(r);
      partial += f(vals_.at(r));
      if (done()) return chosen;
    }
    std::vector<std::pair<std::size_t, Rational>> finite_parts;
    for (auto s : group.slices) {
      const ExtendedRational sum = slice_atom(s).sum(IndexRange{1, std::nullopt}, f);
      if (sum.is_infinite()) {
        while (!done()) {
          IndexRef r = pop(s);
          chosen.push_back(r);
          partial += f(vals_.at(r));
        }
        return chosen;
      }
      if (sum.value() > 0) finite_parts.emplace_back(s, sum.value());
    }
    Rational available = partial;
    for (const auto& [s, sum] : finite_parts) available += sum;
    if (available <= need) defect("a group cannot supply " + to_string(need));
    // leave out at most half of the excess in total
    const Rational slack = (available - need) / (2 * Rational(finite_parts.size()));
    for (const auto& [s, sum] : finite_parts) {
      Rational got = 0;
      while (got < sum - slack) {
        IndexRef r = pop(s);
        chosen.push_back(r);
        got += f(vals_.at(r));
      }
      partial += got;
    }
    if (!done()) defect("selection fell short");
    return chosen;
  }

  void transfer(std::vector<IndexRef> low, std::vector<IndexRef> high, const Rational& eta, const Rational& floor,
                const Rational& ceiling) {
    std::vector<Rational> lv, hv;
    for (const auto& r : low) lv.push_back(vals_.at(r));
    for (const auto& r : high) hv.push_back(vals_.at(r));
    auto [nl, nh] = move_mass_between(lv, hv, eta, floor, ceiling);
    for (std::size_t i = 0; i < low.size(); ++i) vals_[low[i]] = nl[i];
    for (std::size_t i = 0; i < high.size(); ++i) vals_[high[i]] = nh[i];
    plan.transfers.push_back(Transfer{std::move(low), std::move(high), eta, floor, ceiling});
  }

  BlockIndices take(const Pick& p) {
    BlockIndices b;
    for (const auto& r : p.refs) {
      if (!taken_.insert(r).second) defect("entry assigned twice");
      b.refs.push_back(r);
    }
    for (auto s : p.slices) {
      if (slice_taken_[s]) defect("slice assigned twice");
      slice_taken_[s] = true;
      b.slices.push_back(slices_[s]);
    }
    return b;
  }

  void add_three_point(const Pick& p, Multiplicity z, Multiplicity n, Multiplicity k) {
    if (p.refs.empty() && p.slices.empty()) return;
    plan.blocks.push_back(ThreePointBlock{take(p), z, n, k});
  }

  void add_projection(const Pick& p, const Rational& scale, const Rational& shift) {
    if (p.refs.empty() && p.slices.empty()) return;
    std::vector<Rational> values;
    std::vector<TailAtom> atoms;
    for (const auto& r : p.refs) values.push_back(vals_.at(r));
    for (auto s : p.slices) atoms.push_back(slice_atom(s));
    ProjectionSummary sum = summarize_projection(values, atoms, scale, shift);
    if (!sum.failure.empty()) defect("projection block: " + sum.failure);
    plan.blocks.push_back(ProjectionBlock{take(p), scale, shift, sum.rank, sum.kernel});
  }

  static Pick refs_only(std::vector<IndexRef> refs) { return Pick{std::move(refs), {}}; }

 private:
  const DiagonalSpec& seq_;
  std::map<IndexRef, Rational> vals_;
  std::vector<TailSlice> slices_;
  std::vector<bool> slice_taken_;
  std::set<IndexRef> taken_;
};

std::vector<IndexRef> concat(std::vector<IndexRef> a, const std::vector<IndexRef>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::optional<std::size_t> find_slice(const Work& w, auto pred) {
  for (std::size_t s = 0; s < w.slice_count(); ++s)
    if (!w.slice_taken(s) && pred(w.atom_of(s))) return s;
  return std::nullopt;
}

ConstructionPlan mirror_plan(ConstructionPlan p, const SpectrumTarget& original, CaseLabel label) {
  const Rational B = original.B;
  for (auto& t : p.transfers) {
    std::vector<IndexRef> low(t.high.rbegin(), t.high.rend());
    std::vector<IndexRef> high(t.low.rbegin(), t.low.rend());
    Rational floor = B - t.ceiling, ceiling = B - t.floor;
    t = Transfer{std::move(low), std::move(high), t.eta, floor, ceiling};
  }
  for (auto& block : p.blocks) {
    if (auto* tp = std::get_if<ThreePointBlock>(&block)) {
      std::swap(tp->zeros, tp->outer);
    } else {
      auto& pb = std::get<ProjectionBlock>(block);
      pb.shift = B - pb.shift;
      pb.scale = -pb.scale;
    }
  }
  p.target = original;
  p.label = label;
  return p;
}

SpectrumTarget mirrored(const SpectrumTarget& t) { return SpectrumTarget{t.B - t.A, t.B, t.mB, t.mA, t.m0}; }

// One lift per unit of N: a single entry is moved onto A using mass from a finite set of others.
void lift_onto_a(Work& w, std::uint64_t count, bool from_below) {
  const Rational A = w.A, B = w.B;
  w.settle(A);
  auto slice = find_slice(w, [&](const TailAtom& t) {
    if (t.kind() == TailKind::GeometricLower) return false;
    return from_below ? (t.limit() > 0 && t.limit() <= A && !is_side_up(t, A))
                      : (t.limit() >= A && t.limit() < B && is_side_up(t, A));
  });
  if (!slice) defect("no tail carries infinite mass on the required side of A");
  const std::size_t s = *slice;
  const TailAtom& atom = w.atom_of(s);
  for (std::uint64_t n = 0; n < count; ++n) {
    std::vector<IndexRef> pool;
    IndexRef i0;
    if (from_below) {
      // pool terms must not exceed d_{i0}
      if (atom.decreasing()) {
        i0 = w.pop(s);
        Rational got = 0;
        while (got < A - w.value(i0)) got += w.value(pool.emplace_back(w.pop(s)));
      } else {
        Rational got = 0;
        while (got < A) got += w.value(pool.emplace_back(w.pop(s)));
        i0 = w.pop(s);
      }
      w.transfer(pool, {i0}, A - w.value(i0), 0, B);
    } else {
      // pool terms must not be below d_{i0}
      if (atom.increasing()) {
        i0 = w.pop(s);
        Rational got = 0;
        while (got < w.value(i0) - A) got += B - w.value(pool.emplace_back(w.pop(s)));
      } else {
        Rational got = 0;
        while (got < B - A) got += B - w.value(pool.emplace_back(w.pop(s)));
        i0 = w.pop(s);
      }
      w.transfer({i0}, pool, w.value(i0) - A, 0, B);
    }
    w.add_projection(Work::refs_only({i0}), A, 0);
  }
  w.add_projection(w.free_all(), B, 0);
}

void certify_c(Work& w, const Decision& d) {
  const Rational A = w.A, B = w.B;
  const SpectrumTarget& t = w.plan.target;
  const auto p = partition_sums(w.seq(), A, B);
  const std::uint64_t N = t.mA.value();
  if (p.C.is_infinite()) return lift_onto_a(w, N, true);
  if (p.D.is_infinite()) return lift_onto_a(w, N, false);

  const Rational C = p.C.value();
  const Integer k = *d.witness->k;
  const Rational kq(k), Nq(N);
  w.settle(A);
  const bool b_limit = std::any_of(w.seq().tails.begin(), w.seq().tails.end(), [&](const TailAtom& a) {
    return a.kind() == TailKind::GeometricUpper && a.limit() == B;
  });
  const bool zero_limit = std::any_of(w.seq().tails.begin(), w.seq().tails.end(),
                                      [](const TailAtom& a) { return a.kind() == TailKind::GeometricLower; });
  const Integer abs_k = k < 0 ? Integer(-k) : k;

  if (!b_limit) {
    // finitely many entries in [A, B): one finite-rank block plus B times the identity
    std::vector<IndexRef> extra;
    Pick tops = w.free_where([&](const Rational& v) { return v == B; });
    for (const auto& r : tops.refs) {
      if (Integer(extra.size()) == abs_k + 1) break;
      extra.push_back(r);
    }
    if (Integer(extra.size()) < abs_k + 1) {
      auto s = find_slice(w, [&](const TailAtom& a) { return a.kind() == TailKind::Constant && a.limit() == B; });
      if (!s) defect("no constant tail at B");
      while (Integer(extra.size()) < abs_k + 1) extra.push_back(w.pop(*s));
    }
    Pick lower = w.free_where([&](const Rational& v) { return v < B; });
    const Integer M = Integer(w.free_where([&](const Rational& v) { return v >= A && v < B; }).refs.size());
    lower.refs = concat(lower.refs, extra);
    w.add_three_point(lower, Multiplicity::inf(), t.mA, to_multiplicity(M + abs_k + k + 1));
    w.add_projection(w.free_all(), B, 0);
    return;
  }
  if (!zero_limit) {
    const Integer k2 = -Integer(N) - k;
    const Integer abs_k2 = k2 < 0 ? Integer(-k2) : k2;
    std::vector<IndexRef> extra;
    Pick bottoms = w.free_where([](const Rational& v) { return v == 0; });
    for (const auto& r : bottoms.refs) {
      if (Integer(extra.size()) == abs_k2 + 1) break;
      extra.push_back(r);
    }
    if (Integer(extra.size()) < abs_k2 + 1) {
      auto s = find_slice(w, [](const TailAtom& a) { return a.kind() == TailKind::Constant && a.limit() == 0; });
      if (!s) defect("no constant tail at 0");
      while (Integer(extra.size()) < abs_k2 + 1) extra.push_back(w.pop(*s));
    }
    Pick upper = w.free_where([](const Rational& v) { return v > 0; });
    const Integer M = Integer(w.free_where([&](const Rational& v) { return v > 0 && v < A; }).refs.size());
    upper.refs = concat(upper.refs, extra);
    w.add_three_point(upper, to_multiplicity(M + abs_k2 + k2 + 1), t.mA, Multiplicity::inf());
    w.add_projection(w.free_all(), B, 0);
    return;
  }

  auto below = [&](const Rational& v) { return v < A; };
  auto above = [&](const Rational& v) { return v >= A; };
  const Affine mass{0, 1}, room{B, -1};
  if (k >= 0) {
    const Rational target_mass = Nq * A + kq * B;
    auto k1 = w.select(w.free_where(below), mass, target_mass, true);
    Rational c1 = 0;
    for (const auto& r : k1) c1 += w.value(r);
    const Rational eta = c1 - target_mass;
    auto k2 = w.select(w.free_where(above), room, eta, false);
    w.transfer(k1, k2, eta, 0, B);
    w.add_three_point(Work::refs_only(k1), to_multiplicity(Integer(k1.size()) - k - Integer(N)), t.mA,
                      to_multiplicity(k));
    w.add_projection(w.free_all(), B, 0);
  } else if (k <= -Integer(N)) {
    // the reflected form of the k >= 0 construction
    const Integer k2n = -Integer(N) - k;
    const Rational target_room = Nq * (B - A) + Rational(k2n) * B;
    auto k2 = w.select(w.free_where(above), room, target_room, true);
    Rational d2 = 0;
    for (const auto& r : k2) d2 += B - w.value(r);
    const Rational eta = d2 - target_room;
    auto k1 = w.select(w.free_where(below), mass, eta, false);
    w.transfer(k1, k2, eta, 0, B);
    w.add_three_point(Work::refs_only(k2), to_multiplicity(k2n), t.mA,
                      to_multiplicity(Integer(k2.size()) - k2n - Integer(N)));
    w.add_projection(w.free_all(), B, 0);
  } else {
    const Rational eta = C - (Nq + kq) * A;
    std::vector<IndexRef> k1, k2;
    if (eta > 0) {
      k1 = w.select(w.free_where(below), mass, eta, false);
      k2 = w.select(w.free_where(above), room, eta, false);
    }
    w.transfer(k1, k2, eta, 0, B);
    w.add_projection(w.free_where(below), A, 0);
    w.add_projection(w.free_all(), -(B - A), B);
  }
}

void certify_e(Work& w) {
  const Rational A = w.A, B = w.B;
  const Rational M = (A + B) / 2;
  const SpectrumTarget& t = w.plan.target;
  const auto p = partition_sums(w.seq(), A, B);
  const std::uint64_t Z = t.m0.value();
  const Rational eta = A * Rational(Z) - p.C1.value();
  w.settle(A);
  w.settle(M);
  auto below = [&](const Rational& v) { return v < A; };
  auto above = [&](const Rational& v) { return v >= A; };
  const Affine mass{0, 1}, room{B, -1};

  const ExtendedRational j1_mass = w.total(w.free_where(below), mass);
  if (j1_mass <= eta) {
    // every entry below A ends up at 0, together with enough entries taken from above A
    Pick j1 = w.free_where(below);
    if (!j1.slices.empty()) defect("infinite part below A with finite mass");
    if (Integer(j1.refs.size()) > Integer(Z)) defect("more entries below A than the kernel allows");
    const std::uint64_t l1_count = Z - j1.refs.size();
    auto slice = find_slice(w, [&](const TailAtom& a) { return a.limit() >= A && a.limit() < M && is_side_up(a, A); });
    if (!slice) slice = find_slice(w, [&](const TailAtom& a) { return a.limit() >= A && a.limit() < B && is_side_up(a, A); });
    if (!slice) defect("no tail above A with limit below B");
    const std::size_t s = *slice;
    std::vector<IndexRef> l1, k2;
    if (w.atom_of(s).decreasing() || w.atom_of(s).kind() == TailKind::Constant) {
      Rational got = 0;
      while (got < B * Rational(Z)) got += B - w.value(k2.emplace_back(w.pop(s)));
      for (std::uint64_t i = 0; i < l1_count; ++i) l1.push_back(w.pop(s));
    } else {
      for (std::uint64_t i = 0; i < l1_count; ++i) l1.push_back(w.pop(s));
    }
    auto k1 = concat(j1.refs, l1);
    Rational eta0 = 0;
    for (const auto& r : k1) eta0 += w.value(r);
    if (k2.empty()) {
      Rational got = 0;
      while (got < eta0) got += B - w.value(k2.emplace_back(w.pop(s)));
    }
    w.transfer(k1, k2, eta0, 0, B);
    w.add_projection(Work::refs_only(k1), A, 0);
    w.add_projection(w.free_all(), B - A, A);
    return;
  }

  if (w.total(w.free_where(above), room) <= eta) {
    // fill N0 entries just below A up to A with mass from smaller entries below A
    auto slice = find_slice(w, [&](const TailAtom& a) { return a.kind() == TailKind::GeometricUpper && a.limit() == A; });
    if (!slice) defect("no tail accumulating at A from below");
    const std::size_t s = *slice;
    const Integer n0 = floor_of(eta / (B - A)) + 1;
    std::vector<IndexRef> k1, k2;
    Rational got = 0;
    while (got < A * Rational(n0)) got += w.value(k1.emplace_back(w.pop(s)));
    Rational eta0 = 0;
    for (Integer i = 0; i < n0; ++i) eta0 += A - w.value(k2.emplace_back(w.pop(s)));
    w.transfer(k1, k2, eta0, 0, A);
  }

  if (eta > 0) {
    auto k1 = w.select(w.free_where(below), mass, eta, false);
    auto k2 = w.select(w.free_where(above), room, eta, false);
    w.transfer(k1, k2, eta, 0, B);
  }
  w.add_projection(w.free_where(below), A, 0);
  w.add_projection(w.free_all(), B - A, A);
}

ConstructionPlan certify_f(const DiagonalSpec& seq, const SpectrumTarget& target);

void certify_f_direct(Work& w) {
  const Rational A = w.A, B = w.B;
  auto inside = [&](const TailAtom& a) { return a.kind() != TailKind::GeometricLower && a.limit() > 0 && a.limit() < B; };
  auto slice = find_slice(w, [&](const TailAtom& a) {
    return inside(a) && (a.limit() != A || a.kind() == TailKind::Constant);
  });
  if (slice) {
    const std::size_t s = *slice;
    const Rational l = w.atom_of(s).limit();
    if (l != A) {
      w.settle(A);
      while (w.head(s) <= 0 || w.head(s) >= B) w.pop(s);
    }
    w.split(s);
    Pick even{{}, {s}};
    if (l <= A) w.add_projection(even, A, 0);
    else w.add_projection(even, B - A, A);
    w.add_projection(w.free_all(), B, 0);
    return;
  }
  slice = find_slice(w, [&](const TailAtom& a) { return a.kind() == TailKind::GeometricUpper && a.limit() == A; });
  if (!slice) defect("no tail with infinite mass");
  const std::size_t s = *slice;
  // the block near A has a finite kernel; round it up to an integer with a small transfer
  while (w.head(s) <= A / 2) w.pop(s);
  std::vector<IndexRef> low{w.pop(s), w.pop(s)};
  std::vector<IndexRef> high;
  const Integer qhi = ceil_of(A / (B - A));
  for (Integer i = 0; i < qhi; ++i) high.push_back(w.pop(s));
  w.split(s);
  const Affine deficit{1, -1 / A};
  Rational x = deficit(w.value(low[0])) + deficit(w.value(low[1])) +
               w.slice_atom(s).sum(IndexRange{1, std::nullopt}, deficit).value();
  const Rational eta = A * (Rational(ceil_of(x)) - x);
  if (eta > 0) w.transfer(low, high, eta, 0, B);
  Pick near{low, {s}};
  w.add_projection(near, A, 0);
  w.add_projection(w.free_all(), B, 0);
}

ConstructionPlan certify_f(const DiagonalSpec& seq, const SpectrumTarget& target) {
  auto usable = [&](const TailAtom& a) {
    if (a.kind() == TailKind::GeometricLower || !(a.limit() > 0 && a.limit() < target.B)) return false;
    return !(a.kind() == TailKind::GeometricAbove && a.limit() == target.A);
  };
  if (std::none_of(seq.tails.begin(), seq.tails.end(), usable)) {
    const DiagonalSpec r = reflect(seq);
    Work w(r, mirrored(target));
    w.plan.label = CaseLabel::f;
    certify_f_direct(w);
    return mirror_plan(w.plan, target, CaseLabel::f);
  }
  Work w(seq, target);
  w.plan.label = CaseLabel::f;
  certify_f_direct(w);
  return w.plan;
}

ConstructionPlan single_block(const DiagonalSpec& seq, const SpectrumTarget& target, CaseLabel label) {
  Work w(seq, target);
  w.plan.label = label;
  w.add_three_point(w.free_all(), target.m0, target.mA, target.mB);
  return w.plan;
}

}  // namespace

ConstructionPlan certify(const DiagonalSpec& seq, const SpectrumTarget& target) {
  const Decision d = decide(seq, target);
  if (!d.feasible)
    throw std::invalid_argument("certify: infeasible instance (" + d.violation->condition + ": " +
                                d.violation->explanation + ")");
  const CaseLabel label = case_of(target);
  switch (label) {
    case CaseLabel::a:
    case CaseLabel::b:
    case CaseLabel::b_sym: return single_block(seq, target, label);
    case CaseLabel::c: {
      Work w(seq, target);
      w.plan.label = label;
      certify_c(w, d);
      return w.plan;
    }
    case CaseLabel::d:
    case CaseLabel::e: {
      Work w(seq, target);
      w.plan.label = label;
      certify_e(w);
      return w.plan;
    }
    case CaseLabel::e_sym: {
      const DiagonalSpec r = reflect(seq);
      Work w(r, mirrored(target));
      certify_e(w);
      return mirror_plan(w.plan, target, label);
    }
    case CaseLabel::f: return certify_f(seq, target);
  }
  throw std::logic_error("unreachable");
}

namespace {

std::uint64_t lcm_of(const std::vector<std::uint64_t>& steps) {
  std::uint64_t l = 1;
  for (auto s : steps) l = std::lcm(l, s);
  return l;
}

const BlockIndices& indices_of(const PlanBlock& b) {
  if (auto* tp = std::get_if<ThreePointBlock>(&b)) return tp->indices;
  return std::get<ProjectionBlock>(b).indices;
}

}  // namespace

PlanCheck verify_plan(const DiagonalSpec& seq, const ConstructionPlan& plan) {
  PlanCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.failures.push_back(std::move(msg));
  };
  const SpectrumTarget& t = plan.target;
  if (t.B != seq.bound) {
    fail("target B differs from the sequence bound");
    return check;
  }

  std::map<IndexRef, Rational> values;
  auto get = [&](const IndexRef& r) -> Rational {
    auto it = values.find(r);
    if (it != values.end()) return it->second;
    return values[r] = value_at(seq, r);
  };

  // partition of the index set
  std::set<IndexRef> explicit_refs;
  std::vector<std::size_t> finite_hits(seq.finite.size(), 0);
  std::map<std::size_t, std::vector<std::uint64_t>> tail_hits;
  std::map<std::size_t, std::vector<TailSlice>> tail_slices;
  for (const auto& block : plan.blocks) {
    const BlockIndices& ix = indices_of(block);
    for (const auto& r : ix.refs) {
      try {
        get(r);
      } catch (const std::exception& e) {
        fail(std::string("invalid entry reference: ") + e.what());
        return check;
      }
      explicit_refs.insert(r);
      if (r.tail) tail_hits[r.atom].push_back(r.index);
      else ++finite_hits[r.index];
    }
    for (const auto& s : ix.slices) {
      if (s.atom >= seq.tails.size() || s.start == 0 || s.step == 0) {
        fail("invalid tail slice");
        return check;
      }
      tail_slices[s.atom].push_back(s);
    }
  }
  for (std::size_t i = 0; i < finite_hits.size(); ++i)
    if (finite_hits[i] != 1)
      fail("finite entry " + std::to_string(i) + " is covered " + std::to_string(finite_hits[i]) + " times");
  for (std::size_t a = 0; a < seq.tails.size(); ++a) {
    const auto& sl = tail_slices[a];
    if (sl.empty()) {
      fail("tail " + std::to_string(a) + " has no symbolic slice, so infinitely many terms are uncovered");
      continue;
    }
    std::uint64_t top = 0;
    std::vector<std::uint64_t> steps;
    for (const auto& s : sl) {
      top = std::max(top, s.start);
      steps.push_back(s.step);
    }
    std::map<std::uint64_t, int> hits;
    for (auto i : tail_hits[a]) {
      top = std::max(top, i);
      ++hits[i];
    }
    const std::uint64_t last = top + lcm_of(steps);
    for (std::uint64_t i = 1; i <= last; ++i) {
      int c = hits.count(i) ? hits[i] : 0;
      for (const auto& s : sl)
        if (i >= s.start && (i - s.start) % s.step == 0) ++c;
      if (c != 1) {
        fail("term " + std::to_string(i) + " of tail " + std::to_string(a) + " is covered " + std::to_string(c) +
             " times");
        break;
      }
    }
  }
  if (!check.ok) return check;

  // transfers, replayed in order
  for (std::size_t n = 0; n < plan.transfers.size(); ++n) {
    const Transfer& tr = plan.transfers[n];
    std::vector<Rational> lv, hv;
    bool refs_ok = true;
    for (const auto* side : {&tr.low, &tr.high})
      for (const auto& r : *side)
        if (!explicit_refs.count(r)) refs_ok = false;
    if (!refs_ok) {
      fail("transfer " + std::to_string(n) + " touches an entry that no block lists explicitly");
      continue;
    }
    for (const auto& r : tr.low) lv.push_back(get(r));
    for (const auto& r : tr.high) hv.push_back(get(r));
    try {
      auto [nl, nh] = move_mass_between(lv, hv, tr.eta, tr.floor, tr.ceiling);
      for (std::size_t i = 0; i < nl.size(); ++i) values[tr.low[i]] = nl[i];
      for (std::size_t i = 0; i < nh.size(); ++i) values[tr.high[i]] = nh[i];
    } catch (const std::invalid_argument& e) {
      fail("transfer " + std::to_string(n) + ": " + e.what());
    }
  }
  if (!check.ok) return check;

  // blocks and multiplicities
  ExtendedNatural zeros = 0, inner = 0, outer = 0;
  auto credit = [&](const Rational& eigenvalue, const ExtendedNatural& m, std::size_t block) {
    if (m == std::uint64_t(0)) return;
    if (eigenvalue == 0) zeros += m;
    else if (eigenvalue == t.A) inner += m;
    else if (eigenvalue == t.B) outer += m;
    else fail("block " + std::to_string(block) + " produces eigenvalue " + to_string(eigenvalue));
  };
  for (std::size_t n = 0; n < plan.blocks.size(); ++n) {
    const BlockIndices& ix = indices_of(plan.blocks[n]);
    std::vector<Rational> vals;
    std::vector<TailAtom> atoms;
    for (const auto& r : ix.refs) vals.push_back(get(r));
    for (const auto& s : ix.slices) atoms.push_back(seq.tails[s.atom].slice(s.start, s.step));
    if (auto* tp = std::get_if<ThreePointBlock>(&plan.blocks[n])) {
      DiagonalSpec sub{seq.bound, vals, atoms};
      DecideOptions options;
      options.subset_mode = true;
      try {
        Decision d = decide(sub, SpectrumTarget{t.A, t.B, tp->zeros, tp->inner, tp->outer}, options);
        if (!d.feasible)
          fail("block " + std::to_string(n) + " fails " + d.violation->condition + ": " + d.violation->explanation);
      } catch (const std::invalid_argument& e) {
        fail("block " + std::to_string(n) + ": " + e.what());
      }
      credit(0, to_count(tp->zeros), n);
      credit(t.A, to_count(tp->inner), n);
      credit(t.B, to_count(tp->outer), n);
    } else {
      const auto& pb = std::get<ProjectionBlock>(plan.blocks[n]);
      if (pb.scale == 0) {
        fail("block " + std::to_string(n) + " has zero scale");
        continue;
      }
      ProjectionSummary sum = summarize_projection(vals, atoms, pb.scale, pb.shift);
      if (!sum.failure.empty()) {
        fail("block " + std::to_string(n) + ": " + sum.failure);
        continue;
      }
      if (!(sum.rank == pb.rank) || !(sum.kernel == pb.kernel))
        fail("block " + std::to_string(n) + " records rank " + to_string(pb.rank) + ", kernel " +
             to_string(pb.kernel) + " but its diagonal gives " + to_string(sum.rank) + ", " + to_string(sum.kernel));
      credit(pb.shift + pb.scale, sum.rank, n);
      credit(pb.shift, sum.kernel, n);
    }
  }
  auto compare = [&](const char* name, const ExtendedNatural& got, const Multiplicity& want) {
    if (!(got == to_count(want)))
      fail(std::string("multiplicity of ") + name + " is " + to_string(got) + ", target " + to_string(want));
  };
  compare("0", zeros, t.m0);
  compare("A", inner, t.mA);
  compare("B", outer, t.mB);
  return check;
}

}  // namespace threept
