#pragma once

// Test-only reference computations. Nothing here calls into the code paths it
// is used to check: dense embeddings instead of path expansion, direct term
// summation instead of closed forms, a general eigensolver instead of the
// self-adjoint one.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "sparsepow/matrix.hpp"

namespace oracle {

using sparsepow::Complex;
using sparsepow::Index;

/// W restricted to [lo, hi] with no boundary correction.
inline Eigen::MatrixXcd dense_embedding(const sparsepow::InfiniteMatrixSpec& spec, Index lo, Index hi) {
  const auto n = static_cast<Eigen::Index>(hi - lo + 1);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (Index m = lo; m <= hi; ++m) {
    for (const auto& e : spec.row(m)) {
      if (e.column >= lo && e.column <= hi) a(m - lo, e.column - lo) = e.value;
    }
  }
  return a;
}

/// ((W - shift I)^j)_{mn} by dense multiplication on an embedding wide enough
/// that no path of length j from m can leave it (half-bandwidth `l`).
inline Complex dense_power_element(const sparsepow::InfiniteMatrixSpec& spec, double shift, Index j,
                                   Index m, Index n, Index l) {
  const Index lo = std::min(m, n) - (j + 1) * l - 1;
  const Index hi = std::max(m, n) + (j + 1) * l + 1;
  Eigen::MatrixXcd a = dense_embedding(spec, lo, hi);
  a -= shift * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  for (Index k = 0; k < j; ++k) p = p * a;
  return p(m - lo, n - lo);
}

/// Element (m, n) of (A - shift I)^j for a window-indexed dense matrix.
inline Complex dense_window_power(const Eigen::MatrixXcd& a, Index lower, double shift, Index j,
                                  Index m, Index n) {
  Eigen::MatrixXcd s = a - shift * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  for (Index k = 0; k < j; ++k) p = p * s;
  return p(m - lower, n - lower);
}

/// Real parts of the eigenvalues from the general (non-Hermitian) solver.
inline std::vector<double> general_eigenvalues(const Eigen::MatrixXcd& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

/// sum_{j >= j_start} |C(alpha, j)| x^j by explicit terms, in long double,
/// with C(alpha, j) built from its defining product. Stops after `max_terms`
/// terms or once a term drops below 1e-18 of the running sum (past j > alpha).
inline long double direct_series(double alpha, double x, Index j_start, Index max_terms = 1'000'000) {
  long double sum = 0.0L;
  long double coeff = 1.0L;  // C(alpha, j)
  long double xp = 1.0L;     // x^j
  for (Index j = 0; j < j_start + max_terms; ++j) {
    if (j > 0) {
      coeff = coeff * (static_cast<long double>(alpha) - static_cast<long double>(j - 1)) /
              static_cast<long double>(j);
      xp *= static_cast<long double>(x);
    }
    if (j < j_start) continue;
    const long double term = std::fabs(coeff) * xp;
    sum += term;
    if (static_cast<double>(j) > alpha + 1 && term < 1e-18L * sum) break;
    if (term == 0.0L && static_cast<double>(j) > alpha) break;
  }
  return sum;
}

/// Random position-dependent (2l+1)-diagonal Hermitian matrix. Every band
/// entry is nonzero. The spectrum lies inside [c, w] by Gershgorin: the
/// diagonal is t0 + u with |u| <= spread and the off-diagonal row sum is at
/// most 2 * sum_k amp_k.
struct RandomBanded {
  Index l = 1;
  std::uint64_t seed = 0;
  std::vector<double> amplitude;  // amp_k for k = 1..l
  double t0 = 0.0;
  double spread = 0.0;
  double c = 0.0;
  double w = 0.0;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [-1, 1), a pure function of (seed, i, k, salt).
  double uniform(Index i, Index k, std::uint64_t salt) const {
    const auto h = mix(seed ^ mix(static_cast<std::uint64_t>(i) * 0x100000001b3ULL ^
                                  mix(static_cast<std::uint64_t>(k) + salt)));
    return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
  }
  // W(i, i + k) for 1 <= k <= l, magnitude in [amp/2, amp].
  Complex upper(Index i, Index k) const {
    const double amp = amplitude[static_cast<std::size_t>(k - 1)];
    const double mag = amp * (0.75 + 0.25 * uniform(i, k, 1));
    const double phase = M_PI * uniform(i, k, 2);
    return std::polar(mag, phase);
  }

  sparsepow::InfiniteMatrixSpec spec() const {
    RandomBanded self = *this;
    sparsepow::RowGenerator gen = [self](Index m) {
      sparsepow::Row r;
      for (Index k = self.l; k >= 1; --k) r.push_back({m - k, std::conj(self.upper(m - k, k))});
      r.push_back({m, Complex{self.t0 + self.spread * self.uniform(m, 0, 3), 0.0}});
      for (Index k = 1; k <= self.l; ++k) r.push_back({m + k, self.upper(m, k)});
      return r;
    };
    return sparsepow::InfiniteMatrixSpec(std::move(gen), static_cast<int>(2 * l + 1),
                                         sparsepow::SpectralEnvelope{c, w, 0.0});
  }

  /// Band with off-diagonal radius R = 2 sum amp_k + spread, centred so that
  /// c / w equals `ratio`.
  static RandomBanded make(Index l, double ratio, std::mt19937_64& rng) {
    RandomBanded b;
    b.l = l;
    b.seed = rng();
    std::uniform_real_distribution<double> amp(0.2, 1.0);
    double radius = 0.0;
    for (Index k = 1; k <= l; ++k) {
      b.amplitude.push_back(amp(rng));
      radius += 2.0 * b.amplitude.back();
    }
    b.spread = 0.5 * amp(rng);
    radius += b.spread;
    b.t0 = radius * (1.0 + ratio) / (1.0 - ratio);
    b.c = b.t0 - radius;
    b.w = b.t0 + radius;
    return b;
  }
};

}  // namespace oracle
