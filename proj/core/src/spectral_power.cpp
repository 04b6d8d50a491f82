#include "sparsepow/spectral_power.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace sparsepow {

namespace {

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> decompose(const FiniteHermitian& matrix,
                                                           bool vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      matrix.data(), vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "eigendecomposition did not converge");
  }
  return solver;
}

double resolve_tol(const Eigen::VectorXd& eigenvalues, double tol) {
  if (tol >= 0.0) return tol;
  return 1e-10 * eigenvalues.cwiseAbs().maxCoeff();
}

double scalar_power(double lambda, double alpha, double tol) {
  if (std::abs(lambda) <= tol) {
    if (alpha < 0.0) {
      std::ostringstream os;
      os << "eigenvalue " << lambda << " is within " << tol << " of zero and alpha = " << alpha
         << " is negative";
      throw Error(ErrorKind::Singularity, os.str());
    }
    return alpha == 0.0 ? 1.0 : 0.0;
  }
  if (lambda < 0.0 && !is_integer(alpha)) {
    std::ostringstream os;
    os << "eigenvalue " << lambda << " is negative and alpha = " << alpha << " is not an integer";
    throw Error(ErrorKind::Domain, os.str());
  }
  return std::pow(lambda, alpha);
}

}  // namespace

FiniteHermitian finite_power(const FiniteHermitian& matrix, double alpha, double tol) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Domain, "alpha must be finite");
  if (alpha == 0.0) return FiniteHermitian::identity(matrix.window());
  if (alpha == 1.0) return matrix;

  const auto solver = decompose(matrix, true);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double t = resolve_tol(ev, tol);
  Eigen::VectorXd powered(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) powered(i) = scalar_power(ev(i), alpha, t);

  const Eigen::MatrixXcd& u = solver.eigenvectors();
  Eigen::MatrixXcd result = u * powered.asDiagonal() * u.adjoint();
  return FiniteHermitian(matrix.window(), std::move(result));
}

FiniteHermitian finite_power_series(const FiniteHermitian& matrix, double alpha, double w,
                                    Index terms, double tol) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Domain, "alpha must be finite");
  if (!(w > 0.0)) throw Error(ErrorKind::Domain, "series centre w must be positive");
  if (terms < 1) throw Error(ErrorKind::Domain, "number of series terms must be positive");

  const auto solver = decompose(matrix, false);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double t = resolve_tol(ev, tol);
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (lo < -t || hi > w + t) {
    std::ostringstream os;
    os << "spectrum [" << lo << ", " << hi << "] is not inside [0, " << w << "]";
    throw Error(ErrorKind::Domain, os.str());
  }
  if (lo <= t && alpha < 0.0) {
    throw Error(ErrorKind::Singularity, "spectrum touches zero and alpha is negative");
  }

  const auto n = matrix.size();
  const Eigen::MatrixXcd x = (matrix.data() - w * Eigen::MatrixXcd::Identity(n, n)) / w;
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  double coeff = 1.0;
  for (Index j = 0; j < terms; ++j) {
    if (j > 0) {
      coeff *= (alpha - static_cast<double>(j) + 1.0) / static_cast<double>(j);
      power = power * x;
    }
    sum += coeff * power;
  }
  sum *= std::pow(w, alpha);
  return FiniteHermitian(matrix.window(), std::move(sum));
}

double binomial_coefficient(double alpha, Index j) {
  if (j < 0) throw Error(ErrorKind::Domain, "binomial index must be nonnegative");
  double c = 1.0;
  for (Index i = 1; i <= j; ++i) {
    c *= (alpha - static_cast<double>(i) + 1.0) / static_cast<double>(i);
    if (c == 0.0) break;
  }
  return c;
}

}  // namespace sparsepow
