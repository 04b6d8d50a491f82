#pragma once

// Matrix elements of integer powers of W - shift*I by sparse path expansion,
// and the depth up to which those powers agree with the truncated ones.

#include <cstddef>
#include <limits>

#include "sparsepow/matrix.hpp"

namespace sparsepow {

/// Exactness depth j_PQ at element (m, n): for every j < j_pq the (m, n)
/// element of (W - wI)^j equals that of (W_PQ - wI_PQ)^j.
struct TruncationDepth {
  /// Reported when the support reachable from m and n never leaves the
  /// window interior, so every power is exact.
  static constexpr Index kUnbounded = std::numeric_limits<Index>::max();

  Index j_pq = 0;
  Window window;
  Index m = 0;
  Index n = 0;

  bool unbounded() const noexcept { return j_pq == kUnbounded; }
};

inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 20;

/// ((W - shift*I)^j)_{mn}. Throws BudgetExceeded when a frontier holds more
/// than `node_budget` indices.
Complex integer_power_element(const InfiniteMatrixSpec& spec, double shift, Index j, Index m,
                              Index n, std::size_t node_budget = kDefaultNodeBudget);

/// Frontier-propagation depth. For each endpoint p the support frontier is
/// grown one row at a time; its depth is the first step at which it reaches an
/// index outside [-P+1, Q-1]. The result is the smaller of the two, 1 when an
/// endpoint lies on the boundary, and 0 when it lies outside the window.
TruncationDepth truncation_depth(const InfiniteMatrixSpec& spec, const Window& window, Index m,
                                 Index n);

/// 1 + floor(min(min(m,n) + P - 1, Q - max(m,n) - 1) / l) for a fully
/// populated (2l+1)-diagonal matrix. Throws Domain unless l >= 1,
/// -P <= min(m,n) - 1 and Q >= max(m,n) + 1.
Index banded_depth_closed_form(Index l, const Window& window, Index m, Index n);

}  // namespace sparsepow
