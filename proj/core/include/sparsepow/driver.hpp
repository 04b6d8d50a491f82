#pragma once

// Tolerance-driven evaluation: grow a symmetric window around the target
// element until its certificate meets the requested bound.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparsepow/certificate.hpp"
#include "sparsepow/matrix.hpp"

namespace sparsepow {

/// Chooses the corner correction D for a window. Supplied by the model.
using BoundaryPolicy = std::function<BoundarySpec(const Window&)>;

inline BoundaryPolicy zero_boundary_policy() {
  return [](const Window&) { return BoundarySpec::zero(); };
}

struct DriverLimits {
  Index max_dimension = 4097;
  /// Absolute slack on the spectrum check is validation_rel_tol * w.
  double validation_rel_tol = 1e-9;
  /// Passed to finite_power; negative selects its default.
  double eigen_tol = -1.0;
};

/// Thrown when the dimension limit is hit first. Carries the best
/// certificate seen, if any window was evaluated.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& message, std::optional<Certificate> best)
      : Error(ErrorKind::NotConverged, message), best_(std::move(best)) {}

  const std::optional<Certificate>& best() const noexcept { return best_; }

 private:
  std::optional<Certificate> best_;
};

/// One pass of the pipeline at a fixed window: truncate, validate, take the
/// (m, n) element of W_PQ^alpha, compute j_PQ and certify.
Certificate evaluate_window(const InfiniteMatrixSpec& spec, const BoundaryPolicy& boundary,
                            double alpha, Index m, Index n, const Window& window,
                            const DriverLimits& limits = {});

/// Windows P = Q = max(|m|, |n|) + g for g = 2, 4, 8, ...; returns the first
/// certificate with bound <= tol.
Certificate approximate_element(const InfiniteMatrixSpec& spec, const BoundaryPolicy& boundary,
                                double alpha, Index m, Index n, double tol,
                                const DriverLimits& limits = {});

struct TableRow {
  Window window;
  std::optional<Certificate> certificate;
  std::string error;

  bool ok() const noexcept { return certificate.has_value(); }
};

/// evaluate_window at each requested window, in order. Failures are recorded
/// in the row.
std::vector<TableRow> convergence_table(const InfiniteMatrixSpec& spec,
                                        const BoundaryPolicy& boundary, double alpha, Index m,
                                        Index n, const std::vector<Window>& windows,
                                        const DriverLimits& limits = {});

struct SolveEntry {
  Complex value;
  double bound = 0.0;
};

/// Local solution of W x = f for finitely supported f:
/// x_m = sum_n (W^{-1})_{mn} f_n with each element certified to
/// tol / sum|f_n|, so that each returned bound is at most tol.
std::map<Index, SolveEntry> local_solve(const InfiniteMatrixSpec& spec,
                                        const BoundaryPolicy& boundary,
                                        const std::map<Index, Complex>& rhs,
                                        const std::vector<Index>& out_indices, double tol,
                                        const DriverLimits& limits = {});

}  // namespace sparsepow
