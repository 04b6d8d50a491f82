#include "sparsepow/series.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sparsepow {

Complex integer_power_element(const InfiniteMatrixSpec& spec, double shift, Index j, Index m,
                              Index n, std::size_t node_budget) {
  if (j < 0) throw Error(ErrorKind::Domain, "power must be nonnegative");

  // Row vector e_m^T (W - shift I)^step, keyed by column.
  std::map<Index, Complex> frontier{{m, Complex{1.0, 0.0}}};
  for (Index step = 0; step < j; ++step) {
    std::map<Index, Complex> next;
    for (const auto& [r, coeff] : frontier) {
      bool has_diagonal = false;
      for (const auto& e : spec.row(r)) {
        Complex v = e.value;
        if (e.column == r) {
          v -= shift;
          has_diagonal = true;
        }
        next[e.column] += coeff * v;
      }
      if (!has_diagonal && shift != 0.0) next[r] -= coeff * shift;
    }
    if (next.size() > node_budget) {
      std::ostringstream os;
      os << "path expansion frontier reached " << next.size() << " indices at depth " << step + 1
         << " (budget " << node_budget << ")";
      throw Error(ErrorKind::BudgetExceeded, os.str());
    }
    frontier = std::move(next);
  }
  const auto it = frontier.find(n);
  return it == frontier.end() ? Complex{} : it->second;
}

namespace {

Index endpoint_depth(const InfiniteMatrixSpec& spec, const Window& window, Index p) {
  if (!window.contains(p)) return 0;
  if (!window.interior(p)) return 1;

  std::set<Index> visited{p};
  std::vector<Index> frontier{p};
  for (Index depth = 1;; ++depth) {
    std::vector<Index> next;
    for (Index r : frontier) {
      for (const auto& e : spec.row(r)) {
        if (!visited.insert(e.column).second) continue;
        if (!window.interior(e.column)) return depth;
        next.push_back(e.column);
      }
    }
    if (next.empty()) return TruncationDepth::kUnbounded;
    frontier = std::move(next);
  }
}

}  // namespace

TruncationDepth truncation_depth(const InfiniteMatrixSpec& spec, const Window& window, Index m,
                                 Index n) {
  TruncationDepth depth;
  depth.window = window;
  depth.m = m;
  depth.n = n;
  if (!window.contains(m) || !window.contains(n)) return depth;
  depth.j_pq = std::min(endpoint_depth(spec, window, m), endpoint_depth(spec, window, n));
  return depth;
}

Index banded_depth_closed_form(Index l, const Window& window, Index m, Index n) {
  const Index lo = std::min(m, n);
  const Index hi = std::max(m, n);
  if (l < 1) throw Error(ErrorKind::Domain, "half-bandwidth must be positive");
  if (-window.P() > lo - 1 || window.Q() < hi + 1) {
    throw Error(ErrorKind::Domain, "element is not strictly inside the window");
  }
  return 1 + std::min(lo + window.P() - 1, window.Q() - hi - 1) / l;
}

}  // namespace sparsepow
