#include <doctest.h>

#include <cmath>
#include <random>

#include "quadax/conjugate.hpp"
#include "quadax/error.hpp"
#include "support/oracles.hpp"

using namespace quadax;

TEST_CASE("implied quadric of simple systems") {
  const SymMat m1 = implied_quadric(ConjugateSystem({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(frobenius(m1.dense() - Mat::identity(3)) < 1e-15);

  const SymMat m2 = implied_quadric(ConjugateSystem({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}}));
  CHECK(m2(0, 0) == doctest::Approx(1.0 / 9.0));
  CHECK(m2(1, 1) == doctest::Approx(0.25));
  CHECK(m2(2, 2) == doctest::Approx(1.0));
  CHECK(std::abs(m2(0, 1)) < 1e-16);
}

TEST_CASE("implied quadric of a random system is Q A^-2 Q^T") {
  const Ellipsoid ell({3.0, 2.0, 1.0});
  const RandomSystem rs = random_system(ell, 17);
  const Mat want = rs.frame * Mat::diagonal(Vec{1.0 / 9.0, 0.25, 1.0}) * rs.frame.transpose();
  CHECK(frobenius(implied_quadric(rs.system).dense() - want) < 1e-13);
}

TEST_CASE("conjugacy residual") {
  const Ellipsoid ell({3.0, 2.0, 1.0});
  CHECK(check_conjugacy({1, 0, 0}, {0, 1, 0}, ell) == 0.0);
  CHECK(check_conjugacy({1, 0, 0}, {1, 0, 0}, ell) == doctest::Approx(1.0 / 9.0));
  // t = pi/4 pair on the (2, 1) ellipse
  const Ellipsoid e2({2.0, 1.0});
  const double r = std::sqrt(2.0);
  CHECK(std::abs(check_conjugacy({r, r / 2}, {-r, r / 2}, e2)) < 1e-15);
}

TEST_CASE("sum of squares and volume") {
  const ConjugateSystem id({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(sum_of_squares(id) == doctest::Approx(3.0));
  CHECK(volume(id) == doctest::Approx(1.0));
  const ConjugateSystem d({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  CHECK(sum_of_squares(d) == doctest::Approx(14.0));
  CHECK(volume(d) == doctest::Approx(6.0));
  const Ellipsoid ell({3.0, 2.0, 1.0});
  for (std::uint64_t s = 0; s < 50; ++s) {
    const RandomSystem rs = random_system(ell, s);
    CHECK(std::abs(sum_of_squares(rs.system) - 14.0) <= 1e-9 * 14.0);
    CHECK(std::abs(std::abs(volume(rs.system)) - 6.0) <= 1e-9 * 6.0);
  }
}

TEST_CASE("random_system properties") {
  const Ellipsoid ell({3.0, 2.0, 1.0});
  const RandomSystem aligned = random_system(ell, 3, true, true);
  CHECK(frobenius(aligned.system.matrix() - Mat::diagonal(Vec{3.0, 2.0, 1.0})) < 1e-15);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RandomSystem rs = random_system(ell, s);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        // conjugacy is measured in the ellipsoid's own frame
        const Vec ei = rs.frame.transpose() * rs.system.diameter(i);
        const Vec ej = rs.frame.transpose() * rs.system.diameter(j);
        CHECK(std::abs(check_conjugacy(ei, ej, ell)) <= 1e-10);
      }
    const SymEigen e = sym_eigen(implied_quadric(rs.system));
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(e.values[2] == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  }
}

TEST_CASE("axes_oracle on known systems") {
  const AxesResult id = axes_oracle(ConjugateSystem({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  for (double l : id.lengths) CHECK(l == doctest::Approx(1.0));

  const double r = std::sqrt(2.0);
  const AxesResult two = canonicalize(axes_oracle(ConjugateSystem({{r, r / 2}, {-r, r / 2}})));
  CHECK(two.lengths[0] == doctest::Approx(2.0));
  CHECK(two.lengths[1] == doctest::Approx(1.0));
  CHECK(line_angle(two.directions[0], {1, 0}) < 1e-12);

  const Ellipsoid ell({3.0, 2.0, 1.0});
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RandomSystem rs = random_system(ell, s);
    const AxesResult a = axes_oracle(rs.system);
    const oracle::Axes ref = oracle::eigen_axes(rs.system.diameters());
    const oracle::AxesError err = oracle::compare(a, ref);
    CHECK(err.length <= 1e-10);
    CHECK(err.angle <= 1e-10);
    for (std::size_t k = 0; k < 3; ++k) CHECK(line_angle(a.directions[k], rs.frame.col(k)) < 1e-10);
  }
}

TEST_CASE("canonicalize orders lengths and fixes signs") {
  AxesResult r;
  r.lengths = {1.0, 3.0, 2.0};
  r.directions = {{0, 0, -1}, {-1, 0, 0}, {0, 1, 0}};
  const AxesResult c = canonicalize(r);
  CHECK(c.lengths == std::vector<double>{3.0, 2.0, 1.0});
  CHECK(c.directions[0][0] == 1.0);
  CHECK(c.directions[2][2] == 1.0);
}

TEST_CASE("degenerate and invalid systems are refused") {
  CHECK_THROWS_AS(ConjugateSystem({{1, 0, 0}, {2, 0, 0}, {0, 0, 1}}), Error);
  CHECK_THROWS_AS(Ellipsoid({1.0, 2.0}), Error);
  CHECK_THROWS_AS(Ellipsoid({1.0, -1.0}), Error);
  CHECK_FALSE(Ellipsoid({2.0, 2.0, 1.0}).strict());
}
