#pragma once

#include "threept/sequence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace threept {

/// Multiplicity of an eigenvalue: a natural number or infinity.
class Multiplicity {
 public:
  Multiplicity() = default;
  Multiplicity(std::uint64_t n) : count_(n) {}
  Multiplicity(Infinity) : count_(std::nullopt) {}
  static Multiplicity inf() { return Multiplicity(infinity); }

  bool is_infinite() const { return !count_; }
  bool is_finite() const { return count_.has_value(); }
  std::uint64_t value() const;

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

 private:
  std::optional<std::uint64_t> count_ = 1;
};

std::string to_string(const Multiplicity& m);

struct SpectrumTarget {
  Rational A;
  Rational B;
  Multiplicity m0;  // Z
  Multiplicity mA;  // N
  Multiplicity mB;  // K
};

enum class CaseLabel { a, b, c, d, e, f, b_sym, e_sym };
std::string to_string(CaseLabel label);
std::optional<CaseLabel> case_label_from_string(const std::string& text);

struct Witness {
  CaseLabel label = CaseLabel::a;
  std::optional<Integer> N;
  std::optional<Integer> k;
  std::optional<Integer> n;
};

struct Violation {
  std::string condition;    // stable identifier, e.g. "trace_mismatch"
  std::string explanation;  // human-readable
};

struct Decision {
  bool feasible = false;
  CaseLabel label = CaseLabel::a;
  std::optional<Witness> witness;
  std::optional<Violation> violation;

  static Decision accept(Witness w);
  static Decision reject(CaseLabel label, std::string condition, std::string explanation);
};

struct DecideOptions {
  /// Allows zero multiplicities (spectrum contained in {0, A, B} rather than equal to it).
  bool subset_mode = false;
  /// Absolute slack for the case (a) trace equation and inequality; used for rationalized samples.
  Rational tolerance = 0;
};

/// Classifies (m0, mA, mB) into the case it is decided by.
CaseLabel case_of(const SpectrumTarget& target);

Decision decide(const DiagonalSpec& seq, const SpectrumTarget& target, const DecideOptions& options = {});

Decision decide_case_a(const DiagonalSpec& seq, const SpectrumTarget& target, const DecideOptions& options = {});
Decision decide_case_b(const DiagonalSpec& seq, const SpectrumTarget& target, const DecideOptions& options = {});
Decision decide_case_c(const DiagonalSpec& seq, const SpectrumTarget& target, const DecideOptions& options = {});
Decision decide_case_d(const DiagonalSpec& seq, const SpectrumTarget& target, const DecideOptions& options = {});
Decision decide_case_e(const DiagonalSpec& seq, const SpectrumTarget& target, const DecideOptions& options = {});
Decision decide_case_f(const DiagonalSpec& seq, const SpectrumTarget& target, const DecideOptions& options = {});

/// Any-multiplicity question: is the sequence a diagonal of some E with spectrum {0, A, B}?
Decision decide_any(const DiagonalSpec& seq, const Rational& A, const Rational& B);

/// Smallest N >= 1 (with its k) satisfying C - D = NA + kB and C >= (N+k)A, searching
/// N = 1 .. floor(C/A + D/(B-A)).
std::optional<std::pair<Integer, Integer>> search_witness(const Rational& C, const Rational& D, const Rational& A,
                                                          const Rational& B);

struct KadisonIndex {
  enum class Kind { Finite, PlusInfinity, MinusInfinity, NonInteger };
  Kind kind = Kind::Finite;
  Rational value;  // a - b when Finite or NonInteger

  bool feasible() const { return kind != Kind::NonInteger; }
};

/// a - b with a = sum_{d < alpha} d and b = sum_{d >= alpha} (1 - d); infinity - infinity counts as 0.
KadisonIndex kadison_index(const DiagonalSpec& seq, const Rational& alpha);

struct SpectrumSetTarget {
  std::vector<Rational> points;             // sorted, distinct, first 0 and last B
  std::vector<Multiplicity> multiplicities; // same length; infinite at 0 and B
};

Decision decide_spectrum_set(const DiagonalSpec& seq, const SpectrumSetTarget& target);

struct AdmissibleEntry {
  Rational A;
  Integer N;
  Integer k;
  Rational lower;  // breakpoint interval (lower, upper]
  Rational upper;
};

struct AdmissibleSet {
  bool full_interval = false;
  std::vector<AdmissibleEntry> entries;  // sorted by A
};

/// All A in (0, 1) for which the (B = 1) sequence is a diagonal with spectrum {0, A, 1}.
AdmissibleSet admissible_set(const DiagonalSpec& seq);

/// Interval (l, u] of consecutive sequence values around A (0 and 1 when unbounded).
std::pair<Rational, Rational> breakpoint_interval(const DiagonalSpec& seq, const Rational& A);

}  // namespace threept
