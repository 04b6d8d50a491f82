#include "sparsepow/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sparsepow {

void LatticeModelParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorKind::Domain, "lattice a, b must be finite");
  if (a < 0.0) throw Error(ErrorKind::Domain, "lattice mass coefficient a must be >= 0");
  if (b <= 0.0) throw Error(ErrorKind::Domain, "lattice coupling b must be > 0");
}

InfiniteMatrixSpec lattice_spec(const LatticeModelParams& params) {
  params.validate();
  const double diag = params.a + 2.0 * params.b;
  const double off = -params.b;
  RowGenerator generator = [diag, off](Index m) {
    return Row{{m - 1, Complex{off, 0.0}}, {m, Complex{diag, 0.0}}, {m + 1, Complex{off, 0.0}}};
  };
  return InfiniteMatrixSpec(std::move(generator), 3,
                            SpectralEnvelope{params.a, params.a + 4.0 * params.b, 0.0});
}

BoundarySpec periodic_boundary(const Window& window, const LatticeModelParams& params) {
  params.validate();
  if (window.dimension() < 2) {
    throw Error(ErrorKind::DegenerateWindow, "periodic boundary needs at least two sites");
  }
  const Complex wrap{-params.b, 0.0};
  return BoundarySpec({{{window.lower(), window.upper()}, wrap},
                       {{window.upper(), window.lower()}, wrap}});
}

std::vector<double> circulant_eigenvalues(const Window& window, const LatticeModelParams& params) {
  const FiniteHermitian m = truncate(lattice_spec(params), window, periodic_boundary(window, params));
  const auto n = m.size();
  const auto& data = m.data();

  // A circulant matrix is fixed by its first row; every row must be its shift.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (data(i, j) != data(0, (j - i + n) % n)) {
        throw Error(ErrorKind::NumericalFailure, "periodic lattice section is not circulant");
      }
    }
  }

  std::vector<double> lambda(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex sum{};
    for (Eigen::Index r = 0; r < n; ++r) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * r) % n) / static_cast<double>(n);
      sum += data(0, r) * std::polar(1.0, angle);
    }
    lambda[static_cast<std::size_t>(k)] = sum.real();
  }
  return lambda;
}

double circulant_power_element(const Window& window, const LatticeModelParams& params,
                               double alpha, Index m, Index n) {
  if (!window.contains(m) || !window.contains(n)) {
    throw Error(ErrorKind::Range, "element lies outside the window");
  }
  const std::vector<double> lambda = circulant_eigenvalues(window, params);
  const Index size = window.dimension();
  const Index shift = ((m - n) % size + size) % size;

  double sum = 0.0;
  for (Index k = 0; k < size; ++k) {
    const double ev = lambda[static_cast<std::size_t>(k)];
    double p;
    if (ev <= 0.0) {
      if (alpha < 0.0) {
        std::ostringstream os;
        os << "circulant eigenvalue " << ev << " is not positive and alpha = " << alpha << " < 0";
        throw Error(ErrorKind::Singularity, os.str());
      }
      p = alpha == 0.0 ? 1.0 : 0.0;
    } else {
      p = std::pow(ev, alpha);
    }
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>((k * shift) % size) / static_cast<double>(size);
    sum += p * std::cos(angle);
  }
  return sum / static_cast<double>(size);
}

double lattice_symbol(const LatticeModelParams& params, double kappa) {
  const double s = std::sin(std::numbers::pi * kappa);
  return params.a + 4.0 * params.b * s * s;
}

namespace {

// Integrand at kappa = num / den, with the cosine argument reduced exactly.
double integrand(const LatticeModelParams& params, double alpha, Index offset, Index num, Index den) {
  const double lambda = lattice_symbol(params, static_cast<double>(num) / static_cast<double>(den));
  const double p = lambda > 0.0 ? std::pow(lambda, alpha) : (alpha == 0.0 ? 1.0 : 0.0);
  const Index phase = (num * offset) % den;
  return p * std::cos(2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(den));
}

}  // namespace

double dispersion_integral_element(const LatticeModelParams& params, double alpha, Index m,
                                   Index n, const QuadratureOptions& options) {
  params.validate();
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Domain, "alpha must be finite");
  if (params.a == 0.0 && alpha < 0.0) {
    throw Error(ErrorKind::Singularity, "the symbol vanishes at kappa = 0 and alpha is negative");
  }
  if (options.min_points < 2 || options.max_points < options.min_points) {
    throw Error(ErrorKind::Domain, "invalid quadrature point limits");
  }

  const Index offset = m >= n ? m - n : n - m;
  Index points = options.min_points;
  double sum = 0.0;
  for (Index i = 0; i < points; ++i) sum += integrand(params, alpha, offset, i, points);
  double trap = sum / static_cast<double>(points);
  double richardson = trap;
  double prev_trap = trap;
  double prev_richardson = trap;

  for (int level = 0; points * 2 <= options.max_points; ++level) {
    // Midpoints of the current grid complete the next one.
    for (Index i = 0; i < points; ++i) sum += integrand(params, alpha, offset, 2 * i + 1, 2 * points);
    points *= 2;
    prev_trap = trap;
    prev_richardson = richardson;
    trap = sum / static_cast<double>(points);
    richardson = (4.0 * trap - prev_trap) / 3.0;
    if (level == 0) continue;

    const double err_trap = std::abs(trap - prev_trap);
    const double err_rich = std::abs(richardson - prev_richardson);
    const double best = err_trap <= err_rich ? trap : richardson;
    if (std::min(err_trap, err_rich) <= options.tol * std::max(1.0, std::abs(best))) return best;
  }
  std::ostringstream os;
  os << "trapezoid quadrature did not reach " << options.tol << " with " << points << " points";
  throw Error(ErrorKind::NumericalFailure, os.str());
}

}  // namespace sparsepow
