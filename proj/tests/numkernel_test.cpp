#include <doctest.h>

#include <cmath>
#include <random>

#include "quadax/error.hpp"
#include "quadax/numkernel.hpp"
#include "support/oracles.hpp"

using namespace quadax;

TEST_CASE("sym_eigen: diagonal matrix keeps its entries and the unit vectors") {
  const SymEigen e = sym_eigen(SymMat::diagonal(Vec{1.0, 4.0}));
  CHECK(e.values[0] == doctest::Approx(4.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(oracle::line_angle(e.vectors.col(0), Vec{0.0, 1.0}) < 1e-14);
  CHECK(oracle::line_angle(e.vectors.col(1), Vec{1.0, 0.0}) < 1e-14);
}

TEST_CASE("sym_eigen: identity has a triple eigenvalue and an orthonormal basis") {
  const SymEigen e = sym_eigen(SymMat::diagonal(Vec{1.0, 1.0, 1.0}));
  for (std::size_t k = 0; k < 3; ++k) CHECK(e.values[k] == doctest::Approx(1.0));
  const Mat G = e.vectors.transpose() * e.vectors;
  CHECK(frobenius(G - Mat::identity(3)) < 1e-14);
}

TEST_CASE("sym_eigen: X X^T of a rotated conjugate pair") {
  const double r = std::sqrt(2.0);
  const Mat X = Mat::from_columns(std::vector<Vec>{{r, r / 2}, {-r, r / 2}});
  const SymEigen e = sym_eigen(SymMat::from(X * X.transpose()));
  CHECK(e.values[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sym_eigen: reconstruction on random symmetric matrices") {
  std::mt19937_64 g(11);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = trial % 2 ? 3 : 2;
    SymMat m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m.set(i, j, n01(g));
    const SymEigen e = sym_eigen(m);
    const Mat rec = e.vectors * Mat::diagonal(e.values) * e.vectors.transpose();
    REQUIRE(frobenius(rec - m.dense()) <= 1e-11 * frobenius(m.dense()));
    for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] >= e.values[k]);
  }
}

TEST_CASE("sym_eigen rejects non-finite input") {
  SymMat m(2);
  m.set(0, 1, std::nan(""));
  CHECK_THROWS_AS(sym_eigen(m), Error);
}

TEST_CASE("real_roots: small cases") {
  auto values = [](const RealPoly& p) {
    std::vector<double> v;
    for (const RealRoot& r : real_roots(p)) v.push_back(r.value);
    return v;
  };
  const auto a = values(RealPoly{-1.0, 0.0, 1.0});
  REQUIRE(a.size() == 2);
  CHECK(a[0] == doctest::Approx(-1.0));
  CHECK(a[1] == doctest::Approx(1.0));

  const auto b = values(RealPoly{-1.0, -2.0, 3.0});
  REQUIRE(b.size() == 2);
  CHECK(b[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(1.0).epsilon(1e-15));

  // high-precision reference values, frozen
  const auto c = values(RealPoly{1.0, 4.0, -44.0, 0.0, 24.0});
  const double want[] = {-1.3898490093813487542, -0.11227965246202711422, 0.20600267428747233441,
                         1.2961259875559035340};
  REQUIRE(c.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(c[static_cast<std::size_t>(k)] - want[k]) <= 1e-14);

  CHECK(values(RealPoly{1.0, 0.0, 1.0}).empty());
  CHECK_THROWS_AS(real_roots(RealPoly{}), Error);
}

TEST_CASE("real_roots: bracket restricts the result") {
  const auto r = real_roots(RealPoly{1.0, 4.0, -44.0, 0.0, 24.0}, std::make_pair(0.0, 1.0));
  REQUIRE(r.size() == 1);
  CHECK(r[0].value == doctest::Approx(0.20600267428747233441));
}

TEST_CASE("real_roots: double root is found once and flagged") {
  // (x - 1/3)^2 (x + 2)
  const RealPoly p{2.0 / 9.0, 1.0 / 9.0 - 4.0 / 3.0, 2.0 - 2.0 / 3.0, 1.0};
  const auto r = real_roots(p);
  REQUIRE(r.size() == 2);
  CHECK(r[0].value == doctest::Approx(-2.0));
  CHECK(r[1].value == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
  CHECK(r[1].multiple);
}

TEST_CASE("real_roots: planted roots are recovered") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> roots;
    const std::size_t deg = 1 + trial % 4;
    while (roots.size() < deg) {
      const double x = u(g);
      bool ok = true;
      for (double y : roots) ok = ok && std::abs(x - y) > 1e-3;
      if (ok) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> c{1.0};
    for (double x : roots) {
      std::vector<double> n(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) n[i + 1] += c[i], n[i] -= x * c[i];
      c = n;
    }
    const auto got = real_roots(RealPoly(c));
    REQUIRE(got.size() == roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k)
      REQUIRE(std::abs(got[k].value - roots[k]) <= 1e-9 * std::max(1.0, std::abs(roots[k])));
  }
}

TEST_CASE("dense linear algebra helpers") {
  const Mat a = Mat::from_columns(std::vector<Vec>{{2.0, 1.0, 0.0}, {1.0, 3.0, 1.0}, {0.0, 1.0, 4.0}});
  CHECK(det(a) == doctest::Approx(18.0));
  CHECK(frobenius(a * inverse(a) - Mat::identity(3)) < 1e-14);
  const Vec x = solve(a, Vec{1.0, 2.0, 3.0});
  CHECK(norm(a * x - Vec{1.0, 2.0, 3.0}) < 1e-14);
  CHECK_THROWS_AS(inverse(Mat(2, 2)), Error);
  CHECK(norm(cross(Vec{1.0, 0.0, 0.0}, Vec{0.0, 1.0, 0.0}) - Vec{0.0, 0.0, 1.0}) == 0.0);
}
