#include "threept/suites.hpp"

#include "threept/oracle.hpp"
#include "threept/realize.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

namespace threept {

void SuiteReport::fail(std::string note) {
  ++failures;
  if (notes.size() < 5) notes.push_back(std::move(note));
}

std::int64_t RandomInstances::integer(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

Rational RandomInstances::grid(const Rational& lo, const Rational& hi, std::int64_t den) {
  return lo + (hi - lo) * Rational(integer(0, den), den);
}

Rational RandomInstances::inside(const Rational& lo, const Rational& hi, std::int64_t max_den) {
  for (;;) {
    const std::int64_t q = integer(1, max_den);
    const Rational v = grid(lo, hi, q + 1);
    if (v > lo && v < hi) return v;
  }
}

DiagonalSpec RandomInstances::spec(const Rational& B) {
  for (;;) {
    DiagonalSpec s;
    s.bound = B;
    const auto nf = integer(0, 4);
    for (std::int64_t i = 0; i < nf; ++i) s.finite.push_back(grid(0, B, 8));
    const auto nt = integer(1, 3);
    for (std::int64_t i = 0; i < nt; ++i) {
      const Rational r(integer(1, 3), 4);
      switch (integer(0, 3)) {
        case 0:
          s.tails.push_back(TailAtom::constant(grid(0, B, 4)));
          break;
        case 1:
          s.tails.push_back(TailAtom::geometric_lower(inside(0, B, 4), r));
          break;
        case 2: {
          const Rational L = integer(0, 1) ? B : inside(0, B, 4);
          s.tails.push_back(TailAtom::geometric_upper(L, inside(0, L, 4), r));
          break;
        }
        default: {
          const Rational base = inside(0, B, 4);
          s.tails.push_back(TailAtom::geometric_above(base, inside(0, B - base, 4), r));
          break;
        }
      }
    }
    try {
      s.validate();
      return s;
    } catch (const std::invalid_argument&) {
    }
  }
}

namespace {

std::string join(const std::vector<Rational>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : " ") + to_string(x);
  return out;
}

std::string describe(const SpectrumTarget& t) {
  return "A=" + to_string(t.A) + " B=" + to_string(t.B) + " (" + to_string(t.m0) + "," + to_string(t.mA) + "," +
         to_string(t.mB) + ")";
}

struct Verdict {
  bool threw = false;
  bool feasible = false;
  bool operator==(const Verdict&) const = default;
};

Verdict verdict(const DiagonalSpec& s, const SpectrumTarget& t) {
  try {
    return {false, decide(s, t).feasible};
  } catch (const std::invalid_argument&) {
    return {true, false};
  }
}

}  // namespace

SuiteReport sampling_suite(std::uint64_t seed, std::uint64_t trials, std::uint64_t max_n) {
  SuiteReport report{"sampling", trials, 0, {}};
  RandomInstances rnd(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto n = rnd.integer(3, static_cast<std::int64_t>(std::max<std::uint64_t>(max_n, 3)));
    const auto Z = rnd.integer(1, n - 2);
    const auto N = rnd.integer(1, n - Z - 1);
    const auto K = n - Z - N;
    const Rational B(rnd.integer(1, 4), rnd.integer(1, 3));
    const Rational A = rnd.inside(0, B, 12);
    const auto sampled = sample_diagonal(to_double(A), to_double(B), Z, N, K, rnd.engine()());
    std::vector<Rational> diag;
    for (double x : sampled) diag.push_back(std::clamp(rationalize(x, 1e-9), Rational(0), B));
    DecideOptions options;
    options.tolerance = Rational(n + 1, 1000000000);
    const SpectrumTarget target{A, B, std::uint64_t(Z), std::uint64_t(N), std::uint64_t(K)};
    const Decision d = decide_case_a(DiagonalSpec{B, diag, {}}, target, options);
    if (!d.feasible) report.fail(describe(target) + ": " + d.violation->condition + " on " + join(diag));
  }
  return report;
}

SuiteReport enumeration_suite(std::uint64_t seed, std::uint64_t trials, std::int64_t box) {
  SuiteReport report{"enumeration", trials, 0, {}};
  RandomInstances rnd(seed);
  for (std::uint64_t t = 0; t < trials;) {
    const Rational B(rnd.integer(1, 3));
    const Rational A = rnd.inside(0, B, 6);
    // a divergent sum on both sides with finite C and D: constant tails at 0 and B plus summable extras
    DiagonalSpec s{B, {}, {TailAtom::constant(0), TailAtom::constant(B)}};
    for (auto i = rnd.integer(0, 3); i > 0; --i) s.finite.push_back(rnd.grid(0, B, 12));
    for (auto i = rnd.integer(0, 2); i > 0; --i)
      s.tails.push_back(TailAtom::geometric_lower(rnd.inside(0, 2 * A, 6), Rational(1, 2)));
    for (auto i = rnd.integer(0, 2); i > 0; --i)
      s.tails.push_back(TailAtom::geometric_upper(B, rnd.inside(0, 2 * (B - A), 6), Rational(1, 2)));
    if (t % 2 == 0) {
      // one extra entry x makes C - D - NA a multiple of B: x = kB - r below A, or x = B(1+k) - r at or above A
      const auto q = partition_sums(s, A, B);
      const Rational r = q.C.value() - q.D.value() - rnd.integer(1, 4) * A;
      const Integer k = ceil_of((r + A) / B - 1);
      const Rational below = Rational(k) * B - r, above = Rational(k + 1) * B - r;
      s.finite.push_back(below >= 0 && below < A ? below : above);
    }
    const auto p = partition_sums(s, A, B);
    const Rational C = p.C.value(), D = p.D.value();
    if (C / A + D / (B - A) > box) continue;
    ++t;

    const Decision d = decide_any(s, A, B);
    const auto brute = brute_force_witness(C, D, A, B, box, box);
    std::ostringstream where;
    where << "A=" << to_string(A) << " B=" << to_string(B) << " C=" << to_string(C) << " D=" << to_string(D);
    if (d.feasible != brute.has_value()) {
      report.fail(where.str() + ": decide_any " + (d.feasible ? "feasible" : "infeasible") + ", brute force " +
                  (brute ? "found a witness" : "found none"));
    } else if (brute && (*d.witness->N != brute->first || *d.witness->k != brute->second)) {
      report.fail(where.str() + ": witness (" + to_string(*d.witness->N) + "," + to_string(*d.witness->k) +
                  ") vs brute force (" + std::to_string(brute->first) + "," + std::to_string(brute->second) + ")");
    }
  }
  return report;
}

SuiteReport roundtrip_suite(std::uint64_t seed, std::uint64_t trials, std::uint64_t max_n, double diag_tol,
                            double eig_tol) {
  SuiteReport report{"roundtrip", trials, 0, {}};
  RandomInstances rnd(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto n = rnd.integer(3, static_cast<std::int64_t>(std::max<std::uint64_t>(max_n, 3)));
    const auto Z = rnd.integer(1, n - 2);
    const auto N = rnd.integer(1, n - Z - 1);
    const auto K = n - Z - N;
    const Rational B(rnd.integer(1, 3));
    const Rational A = rnd.inside(0, B, 10);
    const auto eigs = three_point_spectrum(A, B, Z, N, K);

    // random T-transforms keep the diagonal majorized by the spectrum
    std::vector<Rational> diag = eigs;
    for (auto steps = rnd.integer(1, 2 * n); steps > 0; --steps) {
      const auto i = rnd.integer(0, n - 1), j = rnd.integer(0, n - 1);
      const Rational s = rnd.grid(0, 1, 8);
      const Rational x = diag[i], y = diag[j];
      diag[i] = s * x + (1 - s) * y;
      diag[j] = (1 - s) * x + s * y;
    }
    std::shuffle(diag.begin(), diag.end(), rnd.engine());

    const SpectrumTarget target{A, B, std::uint64_t(Z), std::uint64_t(N), std::uint64_t(K)};
    const Decision d = decide_case_a(DiagonalSpec{B, diag, {}}, target);
    if (!d.feasible) {
      report.fail(describe(target) + ": majorized diagonal rejected (" + d.violation->condition + ")");
      continue;
    }
    try {
      const auto m = construct_three_point(diag, A, B, Z, N, K);
      const auto err = realization_error(m, diag, eigs);
      if (!err.symmetric || err.diagonal > diag_tol || err.eigenvalues > eig_tol) {
        std::ostringstream msg;
        msg << describe(target) << ": diagonal error " << err.diagonal << ", eigenvalue error " << err.eigenvalues;
        report.fail(msg.str());
      }
    } catch (const std::exception& e) {
      report.fail(describe(target) + ": " + e.what());
    }
  }
  return report;
}

SuiteReport symmetry_suite(std::uint64_t seed, std::uint64_t trials) {
  SuiteReport report{"symmetry", trials, 0, {}};
  RandomInstances rnd(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Rational B(rnd.integer(1, 3));
    const DiagonalSpec s = rnd.spec(B);
    const DiagonalSpec r = reflect(s);
    const Rational A = rnd.inside(0, B, 12);
    for (int pattern = 0; pattern < 8; ++pattern) {
      auto pick = [&](int bit) {
        return (pattern >> bit) & 1 ? Multiplicity::inf() : Multiplicity(std::uint64_t(rnd.integer(1, 3)));
      };
      const SpectrumTarget target{A, B, pick(0), pick(1), pick(2)};
      const SpectrumTarget mirror{B - A, B, target.mB, target.mA, target.m0};
      const Verdict a = verdict(s, target), b = verdict(r, mirror);
      if (!(a == b))
        report.fail(describe(target) + ": " + (a.feasible ? "feasible" : "infeasible") + " but reflected " +
                    (b.feasible ? "feasible" : "infeasible"));
    }
  }
  return report;
}

SuiteReport kadison_suite(std::uint64_t seed, std::uint64_t trials) {
  SuiteReport report{"kadison", trials, 0, {}};
  RandomInstances rnd(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    DiagonalSpec s;
    const auto n = rnd.integer(1, 12);
    Rational total = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      s.finite.push_back(rnd.grid(0, 1, rnd.integer(1, 12)));
      total += s.finite.back();
    }
    // half of the sequences get an integer sum
    if (t % 2 == 0) {
      const Rational fix = Rational(ceil_of(total)) - total;
      s.finite.push_back(fix);
      total += fix;
    }
    const bool expected = is_integer(total);
    for (int j = 0; j < 4; ++j) {
      const Rational alpha = rnd.inside(0, 1, 12);
      if (kadison_index(s, alpha).feasible() != expected)
        report.fail("sum " + to_string(total) + ", alpha " + to_string(alpha) + ": " + join(s.finite));
    }
  }
  return report;
}

SuiteReport move_mass_suite(std::uint64_t seed, std::uint64_t trials) {
  SuiteReport report{"move_mass", trials, 0, {}};
  RandomInstances rnd(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Rational B(rnd.integer(1, 3));
    const Rational split = rnd.grid(0, B, 6);
    std::vector<Rational> low(rnd.integer(1, 5)), high(rnd.integer(1, 5));
    Rational low_room = 0, high_room = 0;
    for (auto& v : low) low_room += v = rnd.grid(0, split, 10);
    for (auto& v : high) high_room += B - (v = rnd.grid(split, B, 10));
    const Rational room = std::min(low_room, high_room);
    Rational eta;
    switch (t % 4) {
      case 0: eta = 0; break;
      case 1: eta = room; break;
      default: eta = rnd.grid(0, room, 16); break;
    }
    const auto [nl, nh] = move_mass(low, high, eta, B);
    Rational sum_low = 0, sum_new_low = 0, comp_high = 0, comp_new_high = 0;
    bool ok = nl.size() == low.size() && nh.size() == high.size();
    for (std::size_t i = 0; ok && i < low.size(); ++i) {
      ok = nl[i] <= low[i] && nl[i] >= 0;
      sum_low += low[i];
      sum_new_low += nl[i];
    }
    for (std::size_t i = 0; ok && i < high.size(); ++i) {
      ok = high[i] <= nh[i] && nh[i] <= B;
      comp_high += B - high[i];
      comp_new_high += B - nh[i];
    }
    ok = ok && eta + sum_new_low == sum_low && eta + comp_new_high == comp_high;
    if (!ok) report.fail("B=" + to_string(B) + " eta=" + to_string(eta) + " low " + join(low) + " high " + join(high));
  }
  return report;
}

SuiteReport certify_suite(std::uint64_t seed, std::uint64_t trials) {
  SuiteReport report{"certify", 0, 0, {}};
  RandomInstances rnd(seed);
  // trials counts feasible instances with at least one infinite multiplicity
  while (report.trials < trials) {
    const Rational B(rnd.integer(1, 3));
    const DiagonalSpec s = rnd.spec(B);
    const Rational A = rnd.inside(0, B, 12);
    auto pick = [&] {
      const auto v = rnd.integer(0, 3);
      return v == 0 ? Multiplicity::inf() : Multiplicity(std::uint64_t(v));
    };
    const SpectrumTarget target{A, B, pick(), pick(), pick()};
    if (case_of(target) == CaseLabel::a) continue;
    if (!decide(s, target).feasible) continue;
    ++report.trials;
    try {
      const PlanCheck check = verify_plan(s, certify(s, target));
      if (!check.ok) report.fail(describe(target) + ": " + check.failures.front());
    } catch (const std::exception& e) {
      report.fail(describe(target) + ": " + e.what());
    }
  }
  return report;
}

}  // namespace threept
