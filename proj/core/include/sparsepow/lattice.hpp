#pragma once

// One-dimensional lattice scalar field:
//
//   x^dagger M x = a sum_n |x_n|^2 + b sum_n |x_n - x_{n-1}|^2
//
// M is tridiagonal with stencil (-b, a + 2b, -b) and spectrum [a, a + 4b].
// With periodic boundary conditions its finite sections are circulant and
// are diagonalized by the discrete Fourier basis.

#include "sparsepow/matrix.hpp"

namespace sparsepow {

struct LatticeModelParams {
  double a = 1.0;
  double b = 1.0;

  /// Throws Domain unless a >= 0 and b > 0. The massless case a = 0 is
  /// accepted; its spectrum touches zero, so only alpha >= 0 is meaningful.
  void validate() const;
};

/// Banded generator with stencil {-1: -b, 0: a + 2b, 1: -b} and envelope
/// (c = a, norm_bound = a + 4b, d = 0).
InfiniteMatrixSpec lattice_spec(const LatticeModelParams& params);

/// Corner correction giving x^dagger M_PQ x the wrap term b |x_Q - x_{-P}|^2:
/// D(-P, Q) = D(Q, -P) = -b. Throws DegenerateWindow for dimension 1.
BoundarySpec periodic_boundary(const Window& window, const LatticeModelParams& params);

/// Eigenvalues of the periodic section, read off the discrete Fourier
/// transform of the first row of the assembled circulant. Entry k belongs to
/// the Fourier mode exp(2 pi i k n / N).
std::vector<double> circulant_eigenvalues(const Window& window, const LatticeModelParams& params);

/// (M_PQ^alpha)_{mn} = (1/N) sum_k lambda_k^alpha cos(2 pi k (m - n) / N).
double circulant_power_element(const Window& window, const LatticeModelParams& params,
                               double alpha, Index m, Index n);

/// lambda(kappa) = a + 2b - 2b cos(2 pi kappa), the symbol of the infinite stencil.
double lattice_symbol(const LatticeModelParams& params, double kappa);

struct QuadratureOptions {
  double tol = 1e-12;
  Index min_points = 16;
  Index max_points = Index{1} << 24;
};

/// M^alpha_{mn} = int_0^1 lambda(kappa)^alpha cos(2 pi kappa (m - n)) dkappa by
/// the periodic trapezoid rule on doubling grids, with a Richardson column.
double dispersion_integral_element(const LatticeModelParams& params, double alpha, Index m,
                                   Index n, const QuadratureOptions& options = {});

}  // namespace sparsepow
