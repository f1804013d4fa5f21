#include "threept/feasibility.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace threept {

std::uint64_t Multiplicity::value() const {
  if (!count_) throw std::domain_error("value() on an infinite multiplicity");
  return *count_;
}

std::string to_string(const Multiplicity& m) { return m.is_infinite() ? "inf" : std::to_string(m.value()); }

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::a: return "a";
    case CaseLabel::b: return "b";
    case CaseLabel::c: return "c";
    case CaseLabel::d: return "d";
    case CaseLabel::e: return "e";
    case CaseLabel::f: return "f";
    case CaseLabel::b_sym: return "b_sym";
    case CaseLabel::e_sym: return "e_sym";
  }
  return "?";
}

std::optional<CaseLabel> case_label_from_string(const std::string& text) {
  for (auto l : {CaseLabel::a, CaseLabel::b, CaseLabel::c, CaseLabel::d, CaseLabel::e, CaseLabel::f, CaseLabel::b_sym,
                 CaseLabel::e_sym})
    if (to_string(l) == text) return l;
  return std::nullopt;
}

Decision Decision::accept(Witness w) {
  Decision d;
  d.feasible = true;
  d.label = w.label;
  d.witness = std::move(w);
  return d;
}

Decision Decision::reject(CaseLabel label, std::string condition, std::string explanation) {
  Decision d;
  d.feasible = false;
  d.label = label;
  d.violation = Violation{std::move(condition), std::move(explanation)};
  return d;
}

CaseLabel case_of(const SpectrumTarget& t) {
  const bool z = t.m0.is_infinite(), n = t.mA.is_infinite(), k = t.mB.is_infinite();
  if (!n) {
    if (!z && !k) return CaseLabel::a;
    if (z && !k) return CaseLabel::b;
    if (!z && k) return CaseLabel::b_sym;
    return CaseLabel::c;
  }
  if (!z && !k) return CaseLabel::d;
  if (!z && k) return CaseLabel::e;
  if (z && !k) return CaseLabel::e_sym;
  return CaseLabel::f;
}

namespace {

void check_target(const DiagonalSpec& seq, const SpectrumTarget& t, const DecideOptions& options) {
  if (t.B != seq.bound) throw std::invalid_argument("target B differs from the sequence bound");
  if (!(t.A > 0 && t.A < t.B)) throw std::invalid_argument("need 0 < A < B");
  if (!options.subset_mode)
    for (const auto* m : {&t.m0, &t.mA, &t.mB})
      if (m->is_finite() && m->value() == 0)
        throw std::invalid_argument("zero multiplicity requires subset mode");
}

Rational mult(const Multiplicity& m) { return Rational(m.value()); }

bool within(const Rational& x, const Rational& y, const Rational& tol) {
  Rational diff = x - y;
  return (diff < 0 ? -diff : diff) <= tol;
}

std::string str(const ExtendedRational& x) { return to_string(x); }

Decision relabel(Decision d, CaseLabel label) {
  d.label = label;
  if (d.witness) d.witness->label = label;
  return d;
}

SpectrumTarget mirrored(const SpectrumTarget& t) { return SpectrumTarget{t.B - t.A, t.B, t.mB, t.mA, t.m0}; }

}  // namespace

Decision decide(const DiagonalSpec& seq, const SpectrumTarget& target, const DecideOptions& options) {
  seq.validate();
  check_target(seq, target, options);
  switch (case_of(target)) {
    case CaseLabel::a: return decide_case_a(seq, target, options);
    case CaseLabel::b: return decide_case_b(seq, target, options);
    case CaseLabel::c: return decide_case_c(seq, target, options);
    case CaseLabel::d: return decide_case_d(seq, target, options);
    case CaseLabel::e: return decide_case_e(seq, target, options);
    case CaseLabel::f: return decide_case_f(seq, target, options);
    case CaseLabel::b_sym: return relabel(decide_case_b(reflect(seq), mirrored(target), options), CaseLabel::b_sym);
    case CaseLabel::e_sym: return relabel(decide_case_e(reflect(seq), mirrored(target), options), CaseLabel::e_sym);
  }
  throw std::logic_error("unreachable");
}

Decision decide_case_a(const DiagonalSpec& seq, const SpectrumTarget& t, const DecideOptions& options) {
  if (case_of(t) != CaseLabel::a) throw std::invalid_argument("case (a) needs three finite multiplicities");
  check_target(seq, t, options);
  const auto p = partition_sums(seq, t.A, t.B);
  const Rational Z = mult(t.m0), N = mult(t.mA), K = mult(t.mB);
  if (p.card_I.is_infinite() || Rational(p.card_I.value()) != Z + N + K)
    return Decision::reject(CaseLabel::a, "cardinality",
                            "|I| = " + to_string(p.card_I) + " but Z+N+K = " + to_string(Z + N + K));
  const Rational trace = N * t.A + K * t.B;
  if (!within(p.sum_d.value(), trace, options.tolerance))
    return Decision::reject(CaseLabel::a, "trace_mismatch",
                            "sum d = " + str(p.sum_d) + " but NA+KB = " + to_string(trace));
  const Rational need = (N + K - Rational(p.card_I2.value())) * t.A;
  if (p.C.value() < need - options.tolerance)
    return Decision::reject(CaseLabel::a, "majorization",
                            "C = " + str(p.C) + " < (N+K-|I2|)A = " + to_string(need));
  Witness w{CaseLabel::a, Integer(t.mA.value()), std::nullopt, std::nullopt};
  return Decision::accept(w);
}

Decision decide_case_b(const DiagonalSpec& seq, const SpectrumTarget& t, const DecideOptions& options) {
  if (case_of(t) != CaseLabel::b) throw std::invalid_argument("case (b) needs m0 = inf, mA and mB finite");
  check_target(seq, t, options);
  const auto p = partition_sums(seq, t.A, t.B);
  const Rational N = mult(t.mA), K = mult(t.mB);
  if (p.card_I1.is_finite())
    return Decision::reject(CaseLabel::b, "cardinality", "|I1| = " + to_string(p.card_I1) + " is finite");
  const Rational trace = N * t.A + K * t.B;
  if (p.sum_d.is_infinite())
    return Decision::reject(CaseLabel::b, "trace_mismatch", "sum d diverges but NA+KB = " + to_string(trace));
  if (!within(p.sum_d.value(), trace, options.tolerance))
    return Decision::reject(CaseLabel::b, "summable_trace_mismatch",
                            "sum d = " + str(p.sum_d) + " but NA+KB = " + to_string(trace));
  const Rational need = (N + K - Rational(p.card_I2.value())) * t.A;
  if (p.C.value() < need - options.tolerance)
    return Decision::reject(CaseLabel::b, "majorization", "C = " + str(p.C) + " < (N+K-|I2|)A = " + to_string(need));
  return Decision::accept(Witness{CaseLabel::b, Integer(t.mA.value()), std::nullopt, std::nullopt});
}

Decision decide_case_c(const DiagonalSpec& seq, const SpectrumTarget& t, const DecideOptions& options) {
  if (case_of(t) != CaseLabel::c) throw std::invalid_argument("case (c) needs m0 = mB = inf, mA finite");
  check_target(seq, t, options);
  const auto p = partition_sums(seq, t.A, t.B);
  const Rational N = mult(t.mA);
  if ((p.C + p.D).is_infinite())
    return Decision::accept(Witness{CaseLabel::c, Integer(t.mA.value()), std::nullopt, std::nullopt});
  if (p.sum_d.is_finite() || p.sum_comp.is_finite())
    return Decision::reject(CaseLabel::c, "summable_trace_mismatch",
                            "C, D finite and sum d = " + str(p.sum_d) + ", sum (B-d) = " + str(p.sum_comp) +
                                "; both must diverge");
  if (p.card_I1.is_finite() || p.card_I2.is_finite())
    return Decision::reject(CaseLabel::c, "index_sets", "|I1| and |I2| must both be infinite");
  const Rational C = p.C.value(), D = p.D.value();
  const Rational kq = (C - D - N * t.A) / t.B;
  if (!is_integer(kq))
    return Decision::reject(CaseLabel::c, "non_integer_index",
                            "k = (C-D-NA)/B = " + to_string(kq) + " is not an integer");
  if (C < (N + kq) * t.A)
    return Decision::reject(CaseLabel::c, "index_inequality",
                            "C = " + to_string(C) + " < A(N+k) = " + to_string((N + kq) * t.A));
  return Decision::accept(Witness{CaseLabel::c, Integer(t.mA.value()), floor_of(kq), std::nullopt});
}

Decision decide_case_d(const DiagonalSpec& seq, const SpectrumTarget& t, const DecideOptions& options) {
  if (case_of(t) != CaseLabel::d) throw std::invalid_argument("case (d) needs mA = inf, m0 and mB finite");
  check_target(seq, t, options);
  const auto p = partition_sums(seq, t.A, t.B);
  const Rational Z = mult(t.m0), K = mult(t.mB);
  if (p.card_I.is_finite()) return Decision::reject(CaseLabel::d, "cardinality", "|I| must be infinite");
  if (p.C1 > Z * t.A)
    return Decision::reject(CaseLabel::d, "kernel_bound", "C1 = " + str(p.C1) + " > AZ = " + to_string(Z * t.A));
  const Rational rhs = K * (t.B - t.A) - Z * t.A;
  if (p.C2.is_infinite() || p.card_J3.is_infinite())
    return Decision::reject(CaseLabel::d, "trace_mismatch",
                            "sum (d-A) diverges but K(B-A)-ZA = " + to_string(rhs));
  const Rational J3(p.card_J3.value());
  const Rational lhs = p.C2.value() + (J3 * (t.B - t.A) - p.C3.value()) - p.C1.value();
  if (lhs != rhs)
    return Decision::reject(CaseLabel::d, "trace_mismatch",
                            "sum (d-A) = " + to_string(lhs) + " but K(B-A)-ZA = " + to_string(rhs));
  const Integer j3(p.card_J3.value());
  Witness w{CaseLabel::d, std::nullopt, Integer(j3 - t.mB.value()), Integer(Integer(t.m0.value()) + t.mB.value() - j3)};
  return Decision::accept(w);
}

Decision decide_case_e(const DiagonalSpec& seq, const SpectrumTarget& t, const DecideOptions& options) {
  if (case_of(t) != CaseLabel::e) throw std::invalid_argument("case (e) needs m0 finite, mA = mB = inf");
  check_target(seq, t, options);
  const auto p = partition_sums(seq, t.A, t.B);
  const Rational Z = mult(t.m0);
  if (p.C1 > Z * t.A)
    return Decision::reject(CaseLabel::e, "kernel_bound", "C1 = " + str(p.C1) + " > AZ = " + to_string(Z * t.A));
  if ((p.C2 + p.C3).is_infinite()) return Decision::accept(Witness{CaseLabel::e, {}, {}, {}});
  if ((p.card_I1 + p.card_J2).is_finite())
    return Decision::reject(CaseLabel::e, "index_sets", "C2, C3 finite and |J1 u J2| is finite");
  if (p.card_J3.is_finite())
    return Decision::reject(CaseLabel::e, "index_sets", "C2, C3 finite and |J3| is finite");
  const Rational kq = (p.C1.value() - p.C2.value() + p.C3.value() - Z * t.A) / (t.B - t.A);
  if (!is_integer(kq))
    return Decision::reject(CaseLabel::e, "non_integer_index",
                            "k = (C1-C2+C3-ZA)/(B-A) = " + to_string(kq) + " is not an integer");
  const Integer k = floor_of(kq);
  return Decision::accept(Witness{CaseLabel::e, std::nullopt, k, Integer(t.m0.value()) - k});
}

Decision decide_case_f(const DiagonalSpec& seq, const SpectrumTarget& t, const DecideOptions& options) {
  if (case_of(t) != CaseLabel::f) throw std::invalid_argument("case (f) needs three infinite multiplicities");
  check_target(seq, t, options);
  const auto p = partition_sums(seq, t.A, t.B);
  if ((p.C + p.D).is_infinite()) return Decision::accept(Witness{CaseLabel::f, {}, {}, {}});
  return Decision::reject(CaseLabel::f, "finite_mass",
                          "C + D = " + to_string(p.C.value() + p.D.value()) + " is finite");
}

std::optional<std::pair<Integer, Integer>> search_witness(const Rational& C, const Rational& D, const Rational& A,
                                                          const Rational& B) {
  if (!(A > 0 && A < B)) throw std::invalid_argument("need 0 < A < B");
  const Integer bound = floor_of(C / A + D / (B - A));
  // k(N) is an integer on a residue class of N modulo the denominator of A/B
  const Integer period = boost::multiprecision::denominator(Rational(A / B));
  const Integer last = std::min(bound, period);
  for (Integer N = 1; N <= last; ++N) {
    const Rational kq = (C - D - Rational(N) * A) / B;
    if (!is_integer(kq)) continue;
    // N+k grows with N, so the first integral k decides
    if (C >= (Rational(N) + kq) * A) return std::make_pair(N, floor_of(kq));
    return std::nullopt;
  }
  return std::nullopt;
}

Decision decide_any(const DiagonalSpec& seq, const Rational& A, const Rational& B) {
  seq.validate();
  const auto p = partition_sums(seq, A, B);
  if (p.sum_d.is_finite() || p.sum_comp.is_finite())
    return Decision::reject(CaseLabel::c, "summable_trace_mismatch",
                            "sum d = " + str(p.sum_d) + ", sum (B-d) = " + str(p.sum_comp) +
                                "; a summable side is decided by the trace route of cases (a)/(b)");
  if (p.C.is_infinite() || p.D.is_infinite()) return Decision::accept(Witness{CaseLabel::f, {}, {}, {}});
  auto w = search_witness(p.C.value(), p.D.value(), A, B);
  if (!w)
    return Decision::reject(CaseLabel::c, "no_witness",
                            "no N >= 1, k with C-D = NA+kB and C >= (N+k)A (C = " + str(p.C) + ", D = " + str(p.D) +
                                ")");
  return Decision::accept(Witness{CaseLabel::c, w->first, w->second, std::nullopt});
}

KadisonIndex kadison_index(const DiagonalSpec& seq, const Rational& alpha) {
  if (seq.bound != 1) throw std::invalid_argument("kadison_index needs B = 1");
  seq.validate();
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("need 0 < alpha < 1");
  const auto a = seq.sum(std::nullopt, alpha, {0, 1});
  const auto b = seq.sum(alpha, std::nullopt, {1, -1});
  KadisonIndex out;
  if (a.is_infinite() && b.is_infinite()) {
    out.kind = KadisonIndex::Kind::Finite;
    out.value = 0;
  } else if (a.is_infinite()) {
    out.kind = KadisonIndex::Kind::PlusInfinity;
  } else if (b.is_infinite()) {
    out.kind = KadisonIndex::Kind::MinusInfinity;
  } else {
    out.value = a.value() - b.value();
    out.kind = is_integer(out.value) ? KadisonIndex::Kind::Finite : KadisonIndex::Kind::NonInteger;
  }
  return out;
}

Decision decide_spectrum_set(const DiagonalSpec& seq, const SpectrumSetTarget& target) {
  seq.validate();
  const auto& pts = target.points;
  if (pts.size() != target.multiplicities.size())
    throw std::invalid_argument("spectrum set: one multiplicity per point required");
  if (pts.size() < 3) throw std::invalid_argument("spectrum set needs an interior point besides 0 and B");
  if (pts.front() != 0 || pts.back() != seq.bound) throw std::invalid_argument("spectrum set must contain 0 and B");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1] < pts[i])) throw std::invalid_argument("spectrum set points must be sorted and distinct");
  if (target.multiplicities.front().is_finite() || target.multiplicities.back().is_finite())
    throw std::invalid_argument("multiplicities at 0 and B must be infinite");
  for (const auto& m : target.multiplicities)
    if (m.is_finite() && m.value() == 0) throw std::invalid_argument("multiplicities must be at least 1");

  const Rational alpha = seq.bound / 2;
  const auto p = partition_sums(seq, alpha, seq.bound);
  if ((p.C + p.D).is_infinite()) return Decision::accept(Witness{CaseLabel::f, {}, {}, {}});
  if (pts.size() == 3)
    return decide(seq, SpectrumTarget{pts[1], seq.bound, Multiplicity::inf(), target.multiplicities[1],
                                      Multiplicity::inf()});
  return Decision::reject(CaseLabel::f, "finite_mass",
                          "C + D = " + to_string(p.C.value() + p.D.value()) + " is finite at alpha = B/2");
}

namespace {

bool has_value(const DiagonalSpec& seq, const Rational& x) {
  if (std::find(seq.finite.begin(), seq.finite.end(), x) != seq.finite.end()) return true;
  for (const auto& t : seq.tails) {
    if (t.kind() == TailKind::Constant) {
      if (t.limit() == x) return true;
    } else if (t.increasing()) {
      if (t.limit() > x && t.term(t.range_between(x, std::nullopt).from) == x) return true;
    } else if (t.limit() < x) {
      auto first_below = t.range_between(std::nullopt, x).from;
      if (first_below > 1 && t.term(first_below - 1) == x) return true;
    }
  }
  return false;
}

// Values A in (1/2, 1) admitting a witness, found interval by interval from 1/2 upward.
std::vector<Rational> scan_upward(const DiagonalSpec& seq) {
  std::vector<Rational> found;
  Rational l(1, 2);
  const Rational one = 1;
  for (int guard = 0;; ++guard) {
    if (guard > 1000000) throw std::logic_error("admissible scan did not terminate");
    auto next = seq.next_value_above(l);
    const bool top = !next || *next == one;
    const Rational u = top ? one : *next;
    const Rational rep = top ? (l + one) / 2 : u;
    const auto p = partition_sums(seq, rep, one);
    const Rational C = p.C.value(), D = p.D.value();
    const Integer m = floor_of(C - D);
    // any witness has N+k >= m+1 and (N+k)A <= C; l(m+1) only grows from here on
    if (l * Rational(m + 1) > C) break;

    Rational n_bound = C / l;
    if (!top) n_bound += D / (one - u);
    else if (D != 0) throw std::logic_error("top interval with nonzero D");
    const Integer n_max = floor_of(n_bound);
    for (Integer N = 1; N <= n_max; ++N) {
      const Rational Nq(N);
      const Integer k_lo = ceil_of(C - D - Nq * u);
      const Integer k_hi = ceil_of(C - D - Nq * l) - 1;
      for (Integer k = k_lo; k <= k_hi; ++k) {
        const Rational A = (C - D - Rational(k)) / Nq;
        if (!(A > l && A <= u && A < one)) continue;
        if (C >= (Nq + Rational(k)) * A) found.push_back(A);
      }
    }
    if (top) break;
    l = u;
  }
  return found;
}

}  // namespace

std::pair<Rational, Rational> breakpoint_interval(const DiagonalSpec& seq, const Rational& A) {
  auto below = seq.prev_value_below(A);
  Rational lower = below ? *below : Rational(0);
  Rational upper = 1;
  if (has_value(seq, A)) {
    upper = A;
  } else if (auto above = seq.next_value_above(A)) {
    upper = *above;
  }
  return {lower, upper};
}

AdmissibleSet admissible_set(const DiagonalSpec& seq) {
  if (seq.bound != 1) throw std::invalid_argument("admissible_set needs B = 1");
  seq.validate();
  const Rational half(1, 2);
  const auto p = partition_sums(seq, half, 1);
  AdmissibleSet out;
  if ((p.C + p.D).is_infinite()) {
    out.full_interval = true;
    return out;
  }
  if (p.sum_d.is_finite() || p.sum_comp.is_finite())
    throw std::invalid_argument("admissible_set needs sum d = sum (1-d) = infinity");

  std::vector<Rational> candidates = scan_upward(seq);
  for (const auto& a : scan_upward(reflect(seq))) candidates.push_back(1 - a);
  candidates.push_back(half);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& A : candidates) {
    auto d = decide_any(seq, A, 1);
    if (!d.feasible) {
      if (A == half) continue;
      throw std::logic_error("admissible scan produced a value that fails decide_any: " + to_string(A));
    }
    auto [lo, hi] = breakpoint_interval(seq, A);
    out.entries.push_back(AdmissibleEntry{A, *d.witness->N, *d.witness->k, lo, hi});
  }
  return out;
}

}  // namespace threept
