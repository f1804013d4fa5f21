#include "threept/oracle.hpp"

#include "threept/realize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace threept {

std::vector<double> sample_diagonal(double A, double B, std::uint64_t Z, std::uint64_t N, std::uint64_t K,
                                    std::uint64_t seed) {
  const std::uint64_t n = Z + N + K;
  if (n == 0) throw std::invalid_argument("sample_diagonal: empty spectrum");
  if (n > 64) throw std::invalid_argument("sample_diagonal: dimension " + std::to_string(n) + " exceeds 64");

  std::vector<double> spectrum;
  spectrum.insert(spectrum.end(), K, B);
  spectrum.insert(spectrum.end(), N, A);
  spectrum.insert(spectrum.end(), Z, 0.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // columns of q, stored column-major
  std::vector<double> q(n * n);
  for (auto& v : q) v = gauss(rng);

  // modified Gram-Schmidt
  for (std::uint64_t j = 0; j < n; ++j) {
    double* col = &q[j * n];
    for (std::uint64_t p = 0; p < j; ++p) {
      const double* prev = &q[p * n];
      double dot = 0;
      for (std::uint64_t i = 0; i < n; ++i) dot += prev[i] * col[i];
      for (std::uint64_t i = 0; i < n; ++i) col[i] -= dot * prev[i];
    }
    double norm = 0;
    for (std::uint64_t i = 0; i < n; ++i) norm += col[i] * col[i];
    norm = std::sqrt(norm);
    if (norm == 0) throw std::runtime_error("sample_diagonal: degenerate Gaussian draw");
    for (std::uint64_t i = 0; i < n; ++i) col[i] /= norm;
  }

  std::vector<double> diag(n, 0.0);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) diag[i] += q[j * n + i] * q[j * n + i] * spectrum[j];
  return diag;
}

std::vector<double> eig_multiset(const SymmetricMatrix& m, double tol) {
  const std::size_t n = m.size();
  std::vector<double> a(n * n);
  double frob = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = m(i, j);
      frob += m(i, j) * m(i, j);
    }
  frob = std::sqrt(frob);

  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };

  const int max_sweeps = 30;
  bool converged = frob == 0 || off_norm() <= tol * frob;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0) continue;
        const double tau = (a[q * n + q] - a[p * n + p]) / (2 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = a[q * n + p] = 0;
      }
    }
    converged = off_norm() <= tol * frob;
  }
  if (!converged) throw std::runtime_error("eig_multiset: Jacobi sweeps did not converge");

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

namespace {

bool fits(const Integer& v, std::int64_t limit) { return v <= limit && v >= -limit; }

}  // namespace

std::optional<std::pair<std::int64_t, std::int64_t>> brute_force_witness(const Rational& C, const Rational& D,
                                                                         const Rational& A, const Rational& B,
                                                                         std::int64_t n_max, std::int64_t k_max) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer L = 1;
  for (const Rational* v : {&C, &D, &A, &B}) L = boost::multiprecision::lcm(L, Integer(denominator(*v)));
  auto scaled_up = [&](const Rational& v) { return Integer(numerator(v)) * (L / Integer(denominator(v))); };
  const Integer c = scaled_up(C), d = scaled_up(D), a = scaled_up(A), b = scaled_up(B);

  // k b = c - d - N a has at most one solution per N, so the k range is scanned by division
  // 2^40 keeps every product below 2^40 * 2^20 < 2^63 for boxes up to 10^6
  const std::int64_t limit = std::int64_t(1) << 40;
  if (fits(c, limit) && fits(d, limit) && fits(a, limit) && fits(b, limit) && n_max <= 1000000 && k_max <= 1000000) {
    const auto ci = c.convert_to<std::int64_t>(), di = d.convert_to<std::int64_t>();
    const auto ai = a.convert_to<std::int64_t>(), bi = b.convert_to<std::int64_t>();
    for (std::int64_t N = 1; N <= n_max; ++N) {
      const std::int64_t target = ci - di - N * ai;
      if (target % bi != 0) continue;
      const std::int64_t k = target / bi;
      if (k >= -k_max && k <= k_max && ci >= (N + k) * ai) return std::make_pair(N, k);
    }
    return std::nullopt;
  }
  for (std::int64_t N = 1; N <= n_max; ++N) {
    const Integer target = c - d - a * N;
    if (target % b != 0) continue;
    const Integer k = target / b;
    if (k >= -k_max && k <= k_max && c >= a * (N + k)) return std::make_pair(N, k.convert_to<std::int64_t>());
  }
  return std::nullopt;
}

Rational rationalize(double x, double tol) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite input");
  // convergents h/k of the continued fraction of x
  Integer h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
  Integer k_prev = 0, k = 1;
  double rest = x - std::floor(x);
  for (int i = 0; i < 64; ++i) {
    const double approx = h.convert_to<double>() / k.convert_to<double>();
    if (std::abs(approx - x) <= tol || rest == 0) break;
    rest = 1 / rest;
    const double whole = std::floor(rest);
    rest -= whole;
    const Integer a = static_cast<std::int64_t>(whole);
    Integer h_next = a * h + h_prev, k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return Rational(h, k);
}

}  // namespace threept
