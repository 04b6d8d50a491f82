#pragma once

// Infinite sparse Hermitian matrices given by row generators, and their finite
// sections over an index window [-P, Q] with Hermitian corner corrections.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sparsepow/errors.hpp"

namespace sparsepow {

using Index = std::int64_t;
using Complex = std::complex<double>;

struct RowEntry {
  Index column;
  Complex value;
};

using Row = std::vector<RowEntry>;

/// Produces the nonzero entries of row m. Must be a pure function.
using RowGenerator = std::function<Row(Index)>;

/// Spectral data of W: c = inf sigma(W), an upper bound on ||W||, and the
/// boundary inflation d allowed for truncations.
struct SpectralEnvelope {
  double c = 0.0;
  double norm_bound = 0.0;
  double d = 0.0;

  /// Uniform upper spectral bound w = norm_bound + d shared by W and all W_PQ.
  double w() const noexcept { return norm_bound + d; }

  /// Throws Domain unless 0 <= c <= norm_bound < inf, norm_bound > 0, d >= 0.
  void validate() const;
};

/// Index range [-P, Q].
class Window {
 public:
  /// Largest P or Q accepted; keeps every index arithmetic on the window exact.
  static constexpr Index kMaxExtent = Index{1} << 40;

  Window() = default;
  Window(Index P, Index Q);

  Index P() const noexcept { return P_; }
  Index Q() const noexcept { return Q_; }
  Index lower() const noexcept { return -P_; }
  Index upper() const noexcept { return Q_; }
  Index dimension() const noexcept { return P_ + Q_ + 1; }

  bool contains(Index i) const noexcept { return i >= -P_ && i <= Q_; }
  bool on_boundary(Index i) const noexcept { return i == -P_ || i == Q_; }
  bool interior(Index i) const noexcept { return i > -P_ && i < Q_; }

  /// Zero-based storage position of logical index i.
  Eigen::Index offset(Index i) const noexcept { return static_cast<Eigen::Index>(i + P_); }
  Index index_at(Eigen::Index pos) const noexcept { return static_cast<Index>(pos) - P_; }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Index P_ = 0;
  Index Q_ = 0;
};

/// A row generator with a declared sparsity bound k and spectral envelope.
/// Rows are validated on every access.
class InfiniteMatrixSpec {
 public:
  InfiniteMatrixSpec(RowGenerator generator, int sparsity_bound, SpectralEnvelope envelope);

  /// Row m, checked for the sparsity bound and duplicate columns.
  Row row(Index m) const;

  /// W_mn, zero off the support. Spot-checks Hermitian symmetry against row n.
  Complex entry(Index m, Index n) const;

  /// Verifies entry(m, n) == conj(entry(n, m)) for every stored entry of the
  /// given rows. Throws MalformedSpec on the first mismatch.
  void check_hermitian(std::span<const Index> rows, double tol = 0.0) const;

  int sparsity_bound() const noexcept { return sparsity_bound_; }
  const SpectralEnvelope& envelope() const noexcept { return envelope_; }

 private:
  RowGenerator generator_;
  int sparsity_bound_;
  SpectralEnvelope envelope_;
};

/// Hermitian corrections D supported on {-P, Q} x {-P, Q}.
class BoundarySpec {
 public:
  using Key = std::pair<Index, Index>;

  BoundarySpec() = default;

  /// Throws InvalidBoundary when the entries are not Hermitian.
  explicit BoundarySpec(std::map<Key, Complex> entries);

  static BoundarySpec zero() { return BoundarySpec{}; }

  const std::map<Key, Complex>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Throws InvalidBoundary if any entry sits off the corner set of `window`.
  void check_corners(const Window& window) const;

 private:
  std::map<Key, Complex> entries_;
};

/// Dense Hermitian matrix indexed by a window. Symmetrized on construction.
class FiniteHermitian {
 public:
  FiniteHermitian(Window window, Eigen::MatrixXcd data);

  static FiniteHermitian identity(Window window);

  const Window& window() const noexcept { return window_; }
  const Eigen::MatrixXcd& data() const noexcept { return data_; }
  Eigen::Index size() const noexcept { return data_.rows(); }

  /// Element at logical indices (m, n); throws Range outside the window.
  Complex at(Index m, Index n) const;

 private:
  Window window_;
  Eigen::MatrixXcd data_;
};

/// W_PQ: generator entries on the window plus D on the corners.
FiniteHermitian truncate(const InfiniteMatrixSpec& spec, const Window& window,
                         const BoundarySpec& boundary);

struct ValidationReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// Checks sigma(W_PQ) within [c - tol, norm_bound + d + tol].
ValidationReport validate_truncation(const FiniteHermitian& matrix,
                                     const SpectralEnvelope& envelope, double tol);

/// Translation-invariant generator: row m holds (m + offset, value) for each
/// stencil entry. Throws MalformedSpec for repeated offsets or a stencil that
/// is not Hermitian (value at -o must be the conjugate of the value at o).
InfiniteMatrixSpec banded_spec(const std::vector<std::pair<Index, Complex>>& stencil,
                               SpectralEnvelope envelope);

/// Free-function form of InfiniteMatrixSpec::entry.
inline Complex entry(const InfiniteMatrixSpec& spec, Index m, Index n) {
  return spec.entry(m, n);
}

}  // namespace sparsepow
