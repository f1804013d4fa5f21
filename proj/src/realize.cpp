#include "threept/realize.hpp"

#include "threept/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace threept {

std::vector<double> SymmetricMatrix::diagonal() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)(i, i);
  return out;
}

namespace {

std::vector<Rational> sorted_desc(std::vector<Rational> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

bool majorization_check(const std::vector<Rational>& eigs, const std::vector<Rational>& diag) {
  if (eigs.size() > diag.size()) return false;
  std::vector<Rational> lam = sorted_desc(eigs);
  lam.resize(diag.size(), Rational(0));
  const std::vector<Rational> d = sorted_desc(diag);
  Rational sl = 0, sd = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    sl += lam[i];
    sd += d[i];
    if (sd > sl) return false;
  }
  return sl == sd;
}

HermitianConstruction construct_hermitian_traced(const std::vector<Rational>& eigs, const std::vector<Rational>& diag) {
  if (eigs.size() > diag.size())
    throw std::invalid_argument("construct_hermitian: more eigenvalues than diagonal entries");
  if (!majorization_check(eigs, diag))
    throw std::invalid_argument("construct_hermitian: diagonal is not majorized by the eigenvalues");
  const std::size_t n = diag.size();

  // work in the order of decreasing targets
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });
  std::vector<Rational> target(n);
  for (std::size_t u = 0; u < n; ++u) target[u] = diag[order[u]];

  std::vector<Rational> a = sorted_desc(eigs);
  a.resize(n, Rational(0));
  std::vector<double> m(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u) m[u * n + u] = to_double(a[u]);

  HermitianConstruction out;
  for (;;) {
    // prefix sums of a dominate those of target; the first deficit is preceded by a surplus
    std::size_t j = 0;
    while (j < n && a[j] >= target[j]) ++j;
    if (j == n) break;
    std::size_t i = j;
    while (i > 0 && !(a[i - 1] > target[i - 1])) --i;
    if (i == 0) throw std::logic_error("construct_hermitian: no surplus entry before a deficit");
    --i;

    const Rational delta = std::min(a[i] - target[i], target[j] - a[j]);
    const Rational x = a[i] - delta;
    const double ai = to_double(a[i]), aj = to_double(a[j]);
    const double mid = (ai + aj) / 2, h = (ai - aj) / 2, mij = m[i * n + j];
    const double radius = std::hypot(h, mij);
    const double phi = std::atan2(mij, h);
    const double arg = std::clamp((to_double(x) - mid) / radius, -1.0, 1.0);
    const double theta = (phi + std::acos(arg)) / 2;
    const double c = std::cos(theta), s = std::sin(theta);

    for (std::size_t k = 0; k < n; ++k) {
      const double mki = m[k * n + i], mkj = m[k * n + j];
      m[k * n + i] = c * mki + s * mkj;
      m[k * n + j] = -s * mki + c * mkj;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double mik = m[i * n + k], mjk = m[j * n + k];
      m[i * n + k] = c * mik + s * mjk;
      m[j * n + k] = -s * mik + c * mjk;
    }
    a[i] = x;
    a[j] += delta;
    m[i * n + i] = to_double(a[i]);
    m[j * n + j] = to_double(a[j]);
    out.rotations.push_back(PlaneRotation{order[i], order[j], c, s});
    if (out.rotations.size() >= n) throw std::logic_error("construct_hermitian: rotation budget exceeded");
  }

  SymmetricMatrix result(n);
  for (std::size_t u = 0; u < n; ++u) {
    result.set(order[u], order[u], to_double(diag[order[u]]));
    for (std::size_t v = u + 1; v < n; ++v) result.set(order[u], order[v], (m[u * n + v] + m[v * n + u]) / 2);
  }
  out.matrix = std::move(result);
  return out;
}

SymmetricMatrix construct_hermitian(const std::vector<Rational>& eigs, const std::vector<Rational>& diag) {
  return construct_hermitian_traced(eigs, diag).matrix;
}

std::vector<Rational> three_point_spectrum(const Rational& A, const Rational& B, std::uint64_t Z, std::uint64_t N,
                                           std::uint64_t K) {
  std::vector<Rational> out;
  out.insert(out.end(), K, B);
  out.insert(out.end(), N, A);
  out.insert(out.end(), Z, Rational(0));
  return out;
}

SymmetricMatrix construct_three_point(const std::vector<Rational>& seq, const Rational& A, const Rational& B,
                                      std::uint64_t Z, std::uint64_t N, std::uint64_t K) {
  DiagonalSpec spec{B, seq, {}};
  DecideOptions options;
  options.subset_mode = true;
  const Decision d = decide_case_a(spec, SpectrumTarget{A, B, Z, N, K}, options);
  if (!d.feasible)
    throw std::invalid_argument("construct_three_point: infeasible instance (" + d.violation->condition + ": " +
                                d.violation->explanation + ")");
  return construct_hermitian(three_point_spectrum(A, B, Z, N, K), seq);
}

RealizationError realization_error(const SymmetricMatrix& m, const std::vector<Rational>& diag,
                                   const std::vector<Rational>& eigs) {
  if (m.size() != diag.size()) throw std::invalid_argument("realization_error: dimension mismatch");
  RealizationError err;
  for (std::size_t i = 0; i < m.size(); ++i) {
    err.diagonal = std::max(err.diagonal, std::abs(m(i, i) - to_double(diag[i])));
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) != m(j, i)) err.symmetric = false;
  }
  std::vector<double> expected;
  for (const auto& e : eigs) expected.push_back(to_double(e));
  expected.resize(m.size(), 0.0);
  std::sort(expected.begin(), expected.end(), std::greater<>());
  const std::vector<double> got = eig_multiset(m);
  for (std::size_t i = 0; i < got.size(); ++i)
    err.eigenvalues = std::max(err.eigenvalues, std::abs(got[i] - expected[i]));
  return err;
}

Rational value_at(const DiagonalSpec& seq, const IndexRef& ref) {
  if (!ref.tail) {
    if (ref.index >= seq.finite.size()) throw std::out_of_range("finite position " + std::to_string(ref.index));
    return seq.finite[ref.index];
  }
  if (ref.atom >= seq.tails.size()) throw std::out_of_range("tail atom " + std::to_string(ref.atom));
  if (ref.index == 0) throw std::out_of_range("tail indices start at 1");
  return seq.tails[ref.atom].term(ref.index);
}

}  // namespace threept
