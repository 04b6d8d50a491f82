#include "sparsepow/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "sparsepow/spectral_power.hpp"

namespace sparsepow {

namespace {

void check_driver_premises(const InfiniteMatrixSpec& spec, double alpha) {
  const auto& env = spec.envelope();
  env.validate();
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Domain, "alpha must be finite");
  if (env.c == 0.0 && alpha < 0.0) {
    throw Error(ErrorKind::DivergentSeries,
                "negative alpha requires inf sigma(W) > 0; the envelope has c = 0");
  }
}

}  // namespace

Certificate evaluate_window(const InfiniteMatrixSpec& spec, const BoundaryPolicy& boundary,
                            double alpha, Index m, Index n, const Window& window,
                            const DriverLimits& limits) {
  check_driver_premises(spec, alpha);
  if (!window.contains(m) || !window.contains(n)) {
    throw Error(ErrorKind::Range, "target element lies outside the window");
  }
  if (window.dimension() > limits.max_dimension) {
    std::ostringstream os;
    os << "window dimension " << window.dimension() << " exceeds the limit " << limits.max_dimension;
    throw Error(ErrorKind::Range, os.str());
  }

  const auto& env = spec.envelope();
  const FiniteHermitian truncated = truncate(spec, window, boundary(window));
  const ValidationReport report =
      validate_truncation(truncated, env, limits.validation_rel_tol * env.w());
  if (!report.passed) {
    std::ostringstream os;
    os << "truncation spectrum [" << report.min_eigenvalue << ", " << report.max_eigenvalue
       << "] at P=" << window.P() << ", Q=" << window.Q() << " leaves [" << env.c << ", "
       << env.w() << "]";
    throw Error(ErrorKind::InvalidBoundary, os.str());
  }

  const Complex value = finite_power(truncated, alpha, limits.eigen_tol).at(m, n);
  return certify(value, alpha, env, truncation_depth(spec, window, m, n));
}

Certificate approximate_element(const InfiniteMatrixSpec& spec, const BoundaryPolicy& boundary,
                                double alpha, Index m, Index n, double tol,
                                const DriverLimits& limits) {
  check_driver_premises(spec, alpha);
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "tolerance must be positive");

  const Index base = std::max(std::abs(m), std::abs(n));
  std::optional<Certificate> best;
  for (Index margin = 2;; margin *= 2) {
    const Window window(base + margin, base + margin);
    if (window.dimension() > limits.max_dimension) {
      std::ostringstream os;
      os << "bound did not reach " << tol << " within dimension " << limits.max_dimension;
      if (best) os << "; best bound " << best->bound << " at P=Q=" << best->window.P();
      throw NotConvergedError(os.str(), best);
    }
    Certificate cert = evaluate_window(spec, boundary, alpha, m, n, window, limits);
    if (cert.bound <= tol) return cert;
    if (!best || cert.bound <= best->bound) best = std::move(cert);
  }
}

std::vector<TableRow> convergence_table(const InfiniteMatrixSpec& spec,
                                        const BoundaryPolicy& boundary, double alpha, Index m,
                                        Index n, const std::vector<Window>& windows,
                                        const DriverLimits& limits) {
  std::vector<TableRow> rows;
  rows.reserve(windows.size());
  for (const auto& window : windows) {
    TableRow row;
    row.window = window;
    try {
      row.certificate = evaluate_window(spec, boundary, alpha, m, n, window, limits);
    } catch (const Error& e) {
      row.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<Index, SolveEntry> local_solve(const InfiniteMatrixSpec& spec,
                                        const BoundaryPolicy& boundary,
                                        const std::map<Index, Complex>& rhs,
                                        const std::vector<Index>& out_indices, double tol,
                                        const DriverLimits& limits) {
  spec.envelope().validate();
  if (spec.envelope().c == 0.0) {
    throw Error(ErrorKind::SingularOperator,
                "W x = f needs inf sigma(W) > 0; the envelope has c = 0");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "tolerance must be positive");

  double weight = 0.0;
  for (const auto& [index, f] : rhs) weight += std::abs(f);

  std::map<Index, SolveEntry> solution;
  for (Index m : out_indices) {
    SolveEntry entry{};
    for (const auto& [index, f] : rhs) {
      if (f == Complex{}) continue;
      const Certificate cert = approximate_element(spec, boundary, -1.0, m, index, tol / weight, limits);
      entry.value += cert.value * f;
      entry.bound += cert.bound * std::abs(f);
    }
    solution[m] = entry;
  }
  return solution;
}

}  // namespace sparsepow
