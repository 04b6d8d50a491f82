#include "sparsepow/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace sparsepow {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedSpec: return "malformed-spec";
    case ErrorKind::InvalidBoundary: return "invalid-boundary";
    case ErrorKind::DegenerateWindow: return "degenerate-window";
    case ErrorKind::Range: return "range";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::DivergentSeries: return "divergent-series";
    case ErrorKind::SingularOperator: return "singular-operator";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::NotConverged: return "not-converged";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

void SpectralEnvelope::validate() const {
  if (!std::isfinite(c) || !std::isfinite(norm_bound) || !std::isfinite(d)) {
    throw Error(ErrorKind::Domain, "spectral envelope must be finite");
  }
  if (c < 0.0) throw Error(ErrorKind::Domain, "spectral envelope: c must be >= 0");
  if (norm_bound <= 0.0) throw Error(ErrorKind::Domain, "spectral envelope: norm_bound must be > 0");
  if (c > norm_bound) throw Error(ErrorKind::Domain, "spectral envelope: c must not exceed norm_bound");
  if (d < 0.0) throw Error(ErrorKind::Domain, "spectral envelope: d must be >= 0");
}

Window::Window(Index P, Index Q) : P_(P), Q_(Q) {
  if (P < 0 || Q < 0) throw Error(ErrorKind::Range, "window extents P, Q must be nonnegative");
  if (P > kMaxExtent || Q > kMaxExtent) {
    throw Error(ErrorKind::Range, "window extent exceeds the representable index range");
  }
}

InfiniteMatrixSpec::InfiniteMatrixSpec(RowGenerator generator, int sparsity_bound,
                                       SpectralEnvelope envelope)
    : generator_(std::move(generator)), sparsity_bound_(sparsity_bound), envelope_(envelope) {
  if (!generator_) throw Error(ErrorKind::MalformedSpec, "row generator is empty");
  if (sparsity_bound_ < 1) throw Error(ErrorKind::MalformedSpec, "sparsity bound must be positive");
  envelope_.validate();
}

Row InfiniteMatrixSpec::row(Index m) const {
  Row r = generator_(m);
  if (r.size() > static_cast<std::size_t>(sparsity_bound_)) {
    std::ostringstream os;
    os << "row " << m << " has " << r.size() << " entries, sparsity bound is " << sparsity_bound_;
    throw Error(ErrorKind::MalformedSpec, os.str());
  }
  std::set<Index> seen;
  for (const auto& e : r) {
    if (!seen.insert(e.column).second) {
      std::ostringstream os;
      os << "row " << m << " repeats column " << e.column;
      throw Error(ErrorKind::MalformedSpec, os.str());
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      std::ostringstream os;
      os << "row " << m << " has a non-finite entry at column " << e.column;
      throw Error(ErrorKind::MalformedSpec, os.str());
    }
  }
  return r;
}

namespace {

Complex lookup(const Row& r, Index n) {
  for (const auto& e : r) {
    if (e.column == n) return e.value;
  }
  return Complex{0.0, 0.0};
}

void require_conjugate(Index m, Index n, Complex mn, Complex nm, double tol) {
  if (std::abs(mn - std::conj(nm)) > tol) {
    std::ostringstream os;
    os << "generator is not Hermitian: W(" << m << "," << n << ") = " << mn << " but W(" << n
       << "," << m << ") = " << nm;
    throw Error(ErrorKind::MalformedSpec, os.str());
  }
}

}  // namespace

Complex InfiniteMatrixSpec::entry(Index m, Index n) const {
  const Complex mn = lookup(row(m), n);
  const Complex nm = m == n ? mn : lookup(row(n), m);
  require_conjugate(m, n, mn, nm, 0.0);
  return mn;
}

void InfiniteMatrixSpec::check_hermitian(std::span<const Index> rows, double tol) const {
  for (Index m : rows) {
    for (const auto& e : row(m)) {
      require_conjugate(m, e.column, e.value, lookup(row(e.column), m), tol);
    }
  }
}

BoundarySpec::BoundarySpec(std::map<Key, Complex> entries) : entries_(std::move(entries)) {
  for (const auto& [key, value] : entries_) {
    const auto it = entries_.find({key.second, key.first});
    const Complex mirror = it == entries_.end() ? Complex{} : it->second;
    if (value != std::conj(mirror)) {
      std::ostringstream os;
      os << "boundary correction is not Hermitian at (" << key.first << "," << key.second << ")";
      throw Error(ErrorKind::InvalidBoundary, os.str());
    }
  }
}

void BoundarySpec::check_corners(const Window& window) const {
  for (const auto& [key, value] : entries_) {
    if (!window.on_boundary(key.first) || !window.on_boundary(key.second)) {
      std::ostringstream os;
      os << "boundary entry (" << key.first << "," << key.second
         << ") is not a corner of the window [" << window.lower() << "," << window.upper() << "]";
      throw Error(ErrorKind::InvalidBoundary, os.str());
    }
  }
}

FiniteHermitian::FiniteHermitian(Window window, Eigen::MatrixXcd data)
    : window_(window), data_(std::move(data)) {
  if (data_.rows() != window_.dimension() || data_.cols() != window_.dimension()) {
    throw Error(ErrorKind::Range, "matrix shape does not match its window");
  }
  Eigen::MatrixXcd sym = (data_ + data_.adjoint()) * 0.5;
  data_ = std::move(sym);
  // Averaging leaves the diagonal with a zero imaginary part only up to round-off.
  for (Eigen::Index i = 0; i < data_.rows(); ++i) data_(i, i) = data_(i, i).real();
}

FiniteHermitian FiniteHermitian::identity(Window window) {
  const auto n = static_cast<Eigen::Index>(window.dimension());
  return FiniteHermitian(window, Eigen::MatrixXcd::Identity(n, n));
}

Complex FiniteHermitian::at(Index m, Index n) const {
  if (!window_.contains(m) || !window_.contains(n)) {
    std::ostringstream os;
    os << "element (" << m << "," << n << ") lies outside the window [" << window_.lower() << ","
       << window_.upper() << "]";
    throw Error(ErrorKind::Range, os.str());
  }
  return data_(window_.offset(m), window_.offset(n));
}

FiniteHermitian truncate(const InfiniteMatrixSpec& spec, const Window& window,
                         const BoundarySpec& boundary) {
  boundary.check_corners(window);
  if (window.dimension() > Index{1} << 20) {
    throw Error(ErrorKind::Range, "window too large for a dense truncation");
  }
  const auto dim = static_cast<Eigen::Index>(window.dimension());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Index> rows;
  rows.reserve(static_cast<std::size_t>(dim));
  for (Index m = window.lower(); m <= window.upper(); ++m) {
    rows.push_back(m);
    for (const auto& e : spec.row(m)) {
      if (window.contains(e.column)) a(window.offset(m), window.offset(e.column)) = e.value;
    }
  }
  spec.check_hermitian(rows);
  for (const auto& [key, value] : boundary.entries()) {
    a(window.offset(key.first), window.offset(key.second)) += value;
  }
  return FiniteHermitian(window, std::move(a));
}

InfiniteMatrixSpec banded_spec(const std::vector<std::pair<Index, Complex>>& stencil,
                               SpectralEnvelope envelope) {
  if (stencil.empty()) throw Error(ErrorKind::MalformedSpec, "stencil is empty");
  std::map<Index, Complex> by_offset;
  for (const auto& [offset, value] : stencil) {
    if (!by_offset.emplace(offset, value).second) {
      throw Error(ErrorKind::MalformedSpec, "stencil repeats offset " + std::to_string(offset));
    }
  }
  for (const auto& [offset, value] : by_offset) {
    const auto it = by_offset.find(-offset);
    const Complex mirror = it == by_offset.end() ? Complex{} : it->second;
    if (value != std::conj(mirror)) {
      throw Error(ErrorKind::MalformedSpec,
                  "stencil is not Hermitian at offset " + std::to_string(offset));
    }
  }
  Row pattern;
  for (const auto& [offset, value] : by_offset) pattern.push_back({offset, value});
  RowGenerator generator = [pattern](Index m) {
    Row r = pattern;
    for (auto& e : r) e.column += m;
    return r;
  };
  return InfiniteMatrixSpec(std::move(generator), static_cast<int>(pattern.size()), envelope);
}

ValidationReport validate_truncation(const FiniteHermitian& matrix,
                                     const SpectralEnvelope& envelope, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.data(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "eigenvalue solver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  ValidationReport report;
  report.min_eigenvalue = ev.minCoeff();
  report.max_eigenvalue = ev.maxCoeff();
  report.tol = tol;
  report.passed = report.min_eigenvalue >= envelope.c - tol &&
                  report.max_eigenvalue <= envelope.w() + tol;
  return report;
}

}  // namespace sparsepow
