#pragma once

#include "sparsepow/matrix.hpp"

namespace sparsepow {

/// Negative `tol` selects the default 1e-10 * max|lambda|.
inline constexpr double kDefaultEigenTol = -1.0;

/// M^alpha = U diag(lambda^alpha) U^dagger.
///
/// Eigenvalues in [-tol, 0) are clamped to zero for alpha >= 0. A negative
/// eigenvalue below -tol is a Domain error unless alpha is an integer; an
/// eigenvalue within tol of zero is a Singularity error when alpha < 0.
/// alpha == 0 and alpha == 1 return the identity and the input unchanged.
FiniteHermitian finite_power(const FiniteHermitian& matrix, double alpha,
                             double tol = kDefaultEigenTol);

/// Partial sum w^alpha * sum_{j < terms} C(alpha, j) ((M - wI)/w)^j.
/// Requires sigma(M) within [0, w] (up to tol) and, when the spectrum touches
/// zero, alpha >= 0. Intended as a cross-check of finite_power.
FiniteHermitian finite_power_series(const FiniteHermitian& matrix, double alpha, double w,
                                    Index terms, double tol = kDefaultEigenTol);

/// Generalized binomial coefficient via C(a, j) = C(a, j-1) (a - j + 1) / j.
double binomial_coefficient(double alpha, Index j);

}  // namespace sparsepow
