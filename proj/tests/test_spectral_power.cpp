#include <doctest.h>

#include "oracles.hpp"
#include "sparsepow/lattice.hpp"
#include "sparsepow/spectral_power.hpp"

using namespace sparsepow;

namespace {

FiniteHermitian periodic_lattice(Index P, Index Q, double a = 1.0, double b = 1.0) {
  const LatticeModelParams params{a, b};
  const Window window(P, Q);
  return truncate(lattice_spec(params), window, periodic_boundary(window, params));
}

FiniteHermitian diagonal(std::initializer_list<double> values) {
  const auto n = static_cast<Index>(values.size());
  Eigen::VectorXcd d(n);
  Eigen::Index i = 0;
  for (double v : values) d(i++) = v;
  return FiniteHermitian(Window(0, n - 1), d.asDiagonal());
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("binomial coefficients") {
  for (Index j = 0; j < 8; ++j) CHECK(binomial_coefficient(-1.0, j) == (j % 2 == 0 ? 1.0 : -1.0));
  CHECK(binomial_coefficient(0.5, 2) == -0.125);
  CHECK(binomial_coefficient(3.0, 5) == 0.0);
  CHECK(binomial_coefficient(5.0, 2) == 10.0);
  CHECK(binomial_coefficient(2.5, 0) == 1.0);
  CHECK_THROWS_AS(binomial_coefficient(1.0, -1), Error);
}

TEST_CASE("finite_power on trivial inputs") {
  const auto id = FiniteHermitian::identity(Window(1, 1));
  CHECK(max_abs(finite_power(id, -0.5).data() - id.data()) <= 1e-14);

  const auto d = finite_power(diagonal({4.0, 9.0}), 0.5);
  CHECK(d.at(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d.at(1, 1).real() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(d.at(0, 1)) <= 1e-14);

  const auto m = periodic_lattice(3, 4);
  CHECK(finite_power(m, 1.0).data() == m.data());
  CHECK(finite_power(m, 0.0).data() == Eigen::MatrixXcd::Identity(m.size(), m.size()));
}

TEST_CASE("3x3 periodic lattice squared matches dense squaring") {
  const auto m = periodic_lattice(1, 1);
  const Eigen::MatrixXcd dense = m.data() * m.data();
  CHECK(dense(1, 1).real() == 11.0);
  const auto p = finite_power(m, 2.0);
  CHECK(max_abs(p.data() - dense) <= 1e-12);
  CHECK(p.at(0, 0).real() == doctest::Approx(11.0).epsilon(1e-13));
}

TEST_CASE("finite_power domain errors") {
  const auto indefinite = diagonal({-1.0, 2.0});
  try {
    finite_power(indefinite, 0.5);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  // Integer powers of indefinite matrices are well defined.
  CHECK(finite_power(indefinite, 2.0).at(0, 0).real() == doctest::Approx(1.0));
  CHECK(finite_power(indefinite, -1.0).at(0, 0).real() == doctest::Approx(-1.0));

  const auto singular = diagonal({0.0, 2.0});
  try {
    finite_power(singular, -0.5);
    FAIL("expected singularity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singularity);
  }
  // Round-off negatives are clamped for alpha >= 0.
  const auto almost = diagonal({-1e-14, 2.0});
  CHECK(finite_power(almost, 0.5).at(0, 0) == Complex{0.0, 0.0});
}

TEST_CASE("power identities on lattice sections") {
  for (Index P : {1, 4, 10, 31}) {
    const auto m = periodic_lattice(P, P + 1, 0.5, 1.5);
    const auto root = finite_power(m, 0.5);
    const Eigen::MatrixXcd squared = root.data() * root.data();
    CHECK(max_abs(squared - m.data()) <= 1e-9 * max_abs(m.data()));
    const auto inv = finite_power(m, -1.0);
    const Eigen::MatrixXcd prod = inv.data() * m.data();
    CHECK(max_abs(prod - Eigen::MatrixXcd::Identity(m.size(), m.size())) <= 1e-9);
    CHECK((root.data() - root.data().adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("finite_power_series") {
  SUBCASE("identity converges to 1 for any alpha") {
    const auto id = FiniteHermitian::identity(Window(1, 0));
    for (double alpha : {-1.5, -0.5, 0.5, 2.5}) {
      const auto s = finite_power_series(id, alpha, 2.0, 80);
      CHECK(s.at(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("geometric series for alpha = -1") {
    const auto one = diagonal({1.0});
    const double got = finite_power_series(one, -1.0, 2.0, 20).at(0, 0).real();
    // 2^-1 * sum_{j<20} (1/2)^j = 1 - 2^-20
    CHECK(got == doctest::Approx(1.0 - std::ldexp(1.0, -20)).epsilon(1e-15));
    CHECK(std::abs(got - 1.0) <= 2.0 * std::ldexp(1.0, -19));
  }
  SUBCASE("one term is w^alpha I") {
    const auto m = periodic_lattice(2, 2);
    const auto s = finite_power_series(m, 0.5, 5.0, 1);
    CHECK(max_abs(s.data() - std::sqrt(5.0) * Eigen::MatrixXcd::Identity(m.size(), m.size())) <= 1e-15);
  }
  SUBCASE("agrees with the spectral route within the tail bound") {
    const auto m = periodic_lattice(4, 4);  // spectrum in [1, 5]
    const double c = 1.0;
    const double w = 5.0;
    for (double alpha : {-1.0, -0.5, 0.5, 1.5}) {
      const auto spectral = finite_power(m, alpha);
      for (Index terms : {5, 20, 60}) {
        const auto series = finite_power_series(m, alpha, w, terms);
        const double tail = std::pow(w, alpha) * static_cast<double>(oracle::direct_series(alpha, (w - c) / w, terms));
        CHECK(max_abs(series.data() - spectral.data()) <= tail + 1e-12);
      }
    }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(finite_power_series(periodic_lattice(2, 2), 0.5, 3.0, 10), Error);
    CHECK_THROWS_AS(finite_power_series(diagonal({0.0, 1.0}), -0.5, 2.0, 10), Error);
    CHECK_THROWS_AS(finite_power_series(diagonal({1.0}), 0.5, 2.0, 0), Error);
  }
}
