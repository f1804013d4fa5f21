#pragma once

#include "threept/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace threept {

class SymmetricMatrix;

/// Diagonal of Q diag(spectrum) Q^T for Q from the QR factorization of a Gaussian matrix.
/// The spectrum is B x K, A x N, 0 x Z. Requires Z + N + K <= 64.
std::vector<double> sample_diagonal(double A, double B, std::uint64_t Z, std::uint64_t N, std::uint64_t K,
                                    std::uint64_t seed);

/// Eigenvalues by cyclic Jacobi, sorted nonincreasing. Throws std::runtime_error if 30 sweeps
/// do not bring the off-diagonal norm below tol * ||M||_F.
std::vector<double> eig_multiset(const SymmetricMatrix& m, double tol = 1e-12);

/// Exhaustive scan of N in [1, n_max], k in [-k_max, k_max] for C - D = NA + kB and C >= (N+k)A.
/// Returns the hit with smallest N (then smallest k).
std::optional<std::pair<std::int64_t, std::int64_t>> brute_force_witness(const Rational& C, const Rational& D,
                                                                         const Rational& A, const Rational& B,
                                                                         std::int64_t n_max, std::int64_t k_max);

/// Nearest fraction within tol found from the continued-fraction expansion.
Rational rationalize(double x, double tol = 1e-9);

}  // namespace threept
