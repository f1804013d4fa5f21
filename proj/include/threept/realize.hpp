#pragma once

#include "threept/feasibility.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace threept {

/// Dense real symmetric matrix, row-major. set() writes both triangles.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  std::vector<double> diagonal() const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Prefix-sum test for diag against eigs (both sorted nonincreasing internally), equal totals.
/// A shorter eigenvalue list is padded with zeros.
bool majorization_check(const std::vector<Rational>& eigs, const std::vector<Rational>& diag);

struct PlaneRotation {
  std::size_t i;
  std::size_t j;
  double c;
  double s;
};

struct HermitianConstruction {
  SymmetricMatrix matrix;
  std::vector<PlaneRotation> rotations;
};

/// Symmetric matrix with spectrum eigs and diagonal diag, built from at most n-1 plane rotations
/// of diag(eigs). Throws std::invalid_argument when diag is not majorized by eigs.
HermitianConstruction construct_hermitian_traced(const std::vector<Rational>& eigs, const std::vector<Rational>& diag);
SymmetricMatrix construct_hermitian(const std::vector<Rational>& eigs, const std::vector<Rational>& diag);

/// Eigenvalue list (B x K, A x N, 0 x Z).
std::vector<Rational> three_point_spectrum(const Rational& A, const Rational& B, std::uint64_t Z, std::uint64_t N,
                                           std::uint64_t K);

/// Realizes a feasible case (a) instance. Zero multiplicities are allowed.
SymmetricMatrix construct_three_point(const std::vector<Rational>& seq, const Rational& A, const Rational& B,
                                      std::uint64_t Z, std::uint64_t N, std::uint64_t K);

struct RealizationError {
  double diagonal = 0;    // max |M_ii - d_i|
  double eigenvalues = 0; // max |lambda_i - mu_i| after sorting
  bool symmetric = true;
};

RealizationError realization_error(const SymmetricMatrix& m, const std::vector<Rational>& diag,
                                   const std::vector<Rational>& eigs);

// ---- construction plans for infinite sequences ----

/// A single sequence entry: an explicit term (tail == false, index into finite) or term `index` of tail `atom`.
struct IndexRef {
  bool tail = false;
  std::size_t atom = 0;
  std::uint64_t index = 0;

  static IndexRef finite_term(std::size_t position) { return IndexRef{false, 0, position}; }
  static IndexRef tail_term(std::size_t atom, std::uint64_t i) { return IndexRef{true, atom, i}; }
  friend auto operator<=>(const IndexRef&, const IndexRef&) = default;
};

/// Terms start, start + step, ... of a tail atom.
struct TailSlice {
  std::size_t atom = 0;
  std::uint64_t start = 1;
  std::uint64_t step = 1;
  friend bool operator==(const TailSlice&, const TailSlice&) = default;
};

struct BlockIndices {
  std::vector<IndexRef> refs;
  std::vector<TailSlice> slices;
  bool empty() const { return refs.empty() && slices.empty(); }
};

/// One application of move_mass: `low` entries give up eta, `high` entries absorb it, within [floor, ceiling].
struct Transfer {
  std::vector<IndexRef> low;
  std::vector<IndexRef> high;
  Rational eta;
  Rational floor;
  Rational ceiling;
};

/// Sub-sequence realized by a finite-rank three-point operator (Z or K may be infinite).
struct ThreePointBlock {
  BlockIndices indices;
  Multiplicity zeros;  // Z
  Multiplicity inner;  // N
  Multiplicity outer;  // K
};

/// Sub-sequence realized by shift + scale * Q for a projection Q of the given rank and kernel dimension.
struct ProjectionBlock {
  BlockIndices indices;
  Rational scale;
  Rational shift;
  ExtendedNatural rank;
  ExtendedNatural kernel;
};

using PlanBlock = std::variant<ThreePointBlock, ProjectionBlock>;

struct ConstructionPlan {
  SpectrumTarget target;
  CaseLabel label = CaseLabel::f;
  std::vector<Transfer> transfers;
  std::vector<PlanBlock> blocks;
};

/// Block decomposition realizing a feasible decision. Throws std::invalid_argument on infeasible input.
ConstructionPlan certify(const DiagonalSpec& seq, const SpectrumTarget& target);

struct PlanCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Re-applies the transfers and re-checks every block exactly, the partition of the index set and the
/// total multiplicities.
PlanCheck verify_plan(const DiagonalSpec& seq, const ConstructionPlan& plan);

/// Value of one entry in the untransformed sequence.
Rational value_at(const DiagonalSpec& seq, const IndexRef& ref);

}  // namespace threept
