#include <doctest.h>

#include <cmath>
#include <random>

#include "quadax/chasles.hpp"
#include "quadax/error.hpp"
#include "support/oracles.hpp"

using namespace quadax;

namespace {

const ConjugateSystem kAligned({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}});

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("frame of the principal configuration") {
  const ChaslesFrame f = build_frame(kAligned, 0);
  CHECK(oracle::line_angle(f.normal_at_P, {1, 0, 0}) == 0.0);
  CHECK(oracle::line_angle(f.section_axes[0], {0, 0, 1}) == 0.0);  // minor, rho2 = 1
  CHECK(oracle::line_angle(f.section_axes[1], {0, 1, 0}) == 0.0);  // major, rho3 = 2
  CHECK(f.section_lengths[0] == doctest::Approx(1.0));
  CHECK(f.section_lengths[1] == doctest::Approx(2.0));
  CHECK(f.rytz.branch == RytzBranch::Principal);
  CHECK(f.apex_local()[0] > 0.0);
}

TEST_CASE("frame of random systems is orthonormal") {
  const Ellipsoid ell({3.0, 2.0, 1.0});
  for (std::uint64_t s = 0; s < 200; ++s) {
    const ChaslesFrame f = build_frame(random_system(ell, s).system, s % 3);
    REQUIRE(f.orthogonality_residual() <= 1e-10);
    const Vec w = f.P + Vec{0.3, -0.2, 0.7};
    CHECK(norm(f.to_world(f.to_local(w)) - w) <= 1e-12 * norm(w));
  }
}

TEST_CASE("sphere: circle branch in Rytz, symmetric section refused") {
  const ConjugateSystem sphere({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const ChaslesFrame f = build_frame(sphere, 0);
  CHECK(f.rytz.branch == RytzBranch::Circle);
  CHECK_THROWS_AS(dual_focal_conics(f), Error);
}

TEST_CASE("dual focal conics of the principal configuration") {
  // rho2^2 = 1, rho3^2 = 4: a = 1, b = 3
  const DualFocalConics c = dual_focal_conics(build_frame(kAligned, 0));
  CHECK(c.a == doctest::Approx(1.0));
  CHECK(c.b == doctest::Approx(3.0));
  CHECK(c.ellipse.sq[0] == doctest::Approx(4.0));
  CHECK(c.ellipse.sq[1] == doctest::Approx(3.0));
  CHECK(c.hyperbola.sq[0] == doctest::Approx(1.0));
  CHECK(c.hyperbola.sq[1] == doctest::Approx(-3.0));
  CHECK(norm(c.apex - Vec{3, 0, 0}) < 1e-15);
}

TEST_CASE("dual focal conic planes are orthogonal for random systems") {
  const Ellipsoid ell({3.0, 2.0, 1.0});
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DualFocalConics c = dual_focal_conics(build_frame(random_system(ell, s).system, 0));
    CHECK(std::abs(dot(c.ellipse.plane_normal(), c.hyperbola.plane_normal())) <= 1e-10);
    CHECK(c.a > 0.0);
    CHECK(c.b > 0.0);
  }
}

TEST_CASE("central projection of the focal ellipse") {
  const Ellipsoid ell({3.0, 2.0, 1.0});
  int ellipses = 0, hyperbolas = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DualFocalConics c = dual_focal_conics(build_frame(random_system(ell, s).system, 0));
    ProjectionTrace p;
    try {
      p = project_focal_ellipse(c);
    } catch (const Error&) {
      continue;
    }
    CHECK(p.fit_residual <= 1e-13);
    CHECK(p.closed_form_distance <= 1e-10);
    // the major axis AB lies on the fixed line m
    CHECK(p.fixed_line_residual <= 1e-11);
    const double y = c.apex[1];
    if (y * y > c.b) {
      CHECK(p.kind == ConicKind::Ellipse);
      ++ellipses;
    } else {
      CHECK(p.kind == ConicKind::Hyperbola);
      ++hyperbolas;
    }
  }
  CHECK(ellipses > 0);
  CHECK(hyperbolas > 0);
}

TEST_CASE("pinned quartic instance a=1, b=2, apex (2, 1, sqrt 3)") {
  const QuarticInstance q = quartic_instance(1, 2, 2, 1, std::sqrt(3.0));
  CHECK(std::abs(q.alpha) <= 1e-14);
  const double printed[] = {1, 4, -44, 0, 24};
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(q.printed_quartic[k] - printed[k]) <= 1e-13);
  // geometric form, proportional to 6y^4 - 11y^2 + 2y + 1
  const double geo[] = {1, 2, -11, 0, 6};
  const double s = q.quartic[0];
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(q.quartic[k] / s - geo[k]) <= 1e-13);
  CHECK_FALSE(q.printed_matches_geometry);
  CHECK(q.validation_residual <= 1e-12);
  // z'^2 from 0 = ab - bx'^2 + (a+b)y'^2 + az'^2
  const double zsq = -(1.0 * 2.0 - 2.0 * 4.0 + 3.0 * 1.0) / 1.0;
  CHECK(zsq == 3.0);
}

TEST_CASE("alpha from the eliminated system equals the closed form") {
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> pos(0.2, 4.0), any(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = pos(g), b = pos(g), x = pos(g), y = any(g), z = any(g);
    if (std::abs(y) < 1e-3) continue;
    const QuarticInstance q = quartic_instance(a, b, x, y, z);
    const double terms = a * b + b * x * x + (a + b) * y * y + a * z * z;
    REQUIRE(std::abs(q.alpha_from_system - q.alpha) <= 1e-12 * terms);
    REQUIRE(q.validation_residual <= 1e-10);
    for (const IntersectionPoint& p : intersection_points(q))
      if (p.accepted) {
        REQUIRE(p.residual_projection <= 1e-8);
        REQUIRE(p.residual_ellipse <= 1e-8);
      }
  }
  CHECK_THROWS_AS(quartic_instance(1, 2, 2, 0, 1), Error);
  CHECK_THROWS_AS(quartic_instance(-1, 2, 2, 1, 1), Error);
}

TEST_CASE("x' = 0: closed form for a = b = y' = 1, z' = 0") {
  const X0Roots r = special_case_x0(1, 1, 1, 0);
  CHECK(r.alpha == doctest::Approx(3.0));
  CHECK(r.y[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.y[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(r.rejected[0]);
  CHECK_FALSE(r.rejected[1]);
  CHECK(r.residual[0] <= 1e-15);
  CHECK(r.residual[1] <= 1e-15);
  CHECK(r.note.find("y = y'") != std::string::npos);
}

TEST_CASE("x' = 0: closed form agrees with the numeric quartic and quadratic roots") {
  std::mt19937_64 g(32);
  std::uniform_real_distribution<double> pos(0.2, 4.0), any(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = pos(g), b = pos(g), y = any(g), z = any(g);
    const X0Roots r = special_case_x0(a, b, y, z);
    const double beta = 2 * a * b * y, gamma = b * b * y * y;
    const auto quad = real_roots(RealPoly{-gamma, -beta, r.alpha});
    const auto quart = real_roots(quartic_instance(a, b, 0.0, y, z).quartic);
    REQUIRE(quad.size() == 2);
    REQUIRE(quart.size() == 2);
    std::array<double, 2> want{r.y[0], r.y[1]};
    std::sort(want.begin(), want.end());
    for (std::size_t k = 0; k < 2; ++k) {
      REQUIRE(std::abs(quad[k].value - want[k]) <= 1e-10 * std::max(1.0, std::abs(want[k])));
      REQUIRE(std::abs(quart[k].value - want[k]) <= 1e-10 * std::max(1.0, std::abs(want[k])));
    }
  }
}

TEST_CASE("y' = 0: focal hyperbola membership") {
  const Y0Result on = special_case_y0(1, 2, std::sqrt(3.0), 2);
  CHECK(on.on_hyperbola);
  CHECK(std::abs(on.alpha0) <= 1e-14);
  const Y0Result off = special_case_y0(1, 2, 2, 0);
  CHECK_FALSE(off.on_hyperbola);
  CHECK(off.alpha0 == doctest::Approx(-6.0));
  for (const Vec& e : on.edges) CHECK(norm(e) == doctest::Approx(1.0));
}

TEST_CASE("common edges, diagonal lines and lengths of a random system") {
  const Ellipsoid ell({3.0, 2.0, 1.0});
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ChaslesResult r = chasles_axes(random_system(ell, s).system);
    const ChaslesTrace& t = r.trace;
    CHECK(t.edges.cone_residual <= 1e-8);
    CHECK(t.lines.orthogonality_residual <= 1e-10);
    CHECK(t.lines.commutator_residual <= 1e-8);
    for (const AxisLength& l : t.lengths) CHECK(l.spread <= 1e-8);
  }
}

TEST_CASE("end to end: principal configuration is exact") {
  const ChaslesResult r = chasles_axes(kAligned);
  CHECK_FALSE(r.degenerate_flag);
  const AxesResult a = canonicalize(r.axes);
  CHECK(a.lengths[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(a.lengths[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(a.lengths[2] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t k = 0; k < 3; ++k) CHECK(oracle::line_angle(a.directions[k], Vec::unit(3, k)) <= 1e-14);
}

TEST_CASE("end to end: random systems on (3,2,1) against the oracle") {
  const Ellipsoid ell({3.0, 2.0, 1.0});
  for (std::uint64_t s = 100; s < 300; ++s) {
    const RandomSystem rs = random_system(ell, s);
    const ChaslesResult r = chasles_axes(rs.system);
    const oracle::AxesError e = oracle::compare(r.axes, oracle::eigen_axes(rs.system.diameters()));
    REQUIRE(e.length <= 1e-8);
    REQUIRE(e.angle <= 1e-7);
    for (double l : r.axes.lengths) CHECK((rel(l, 3.0) <= 1e-8 || rel(l, 2.0) <= 1e-8 || rel(l, 1.0) <= 1e-8));
  }
}

TEST_CASE("end to end: fixed role with P in a principal plane") {
  // P = (3 cos t, 2 sin t, 0) lies in the plane z = 0
  const double t = 0.4;
  const ConjugateSystem sys({{3 * std::cos(t), 2 * std::sin(t), 0}, {-3 * std::sin(t), 2 * std::cos(t), 0}, {0, 0, 1}});
  ChaslesOptions opt;
  opt.role = 0;
  const ChaslesResult r = chasles_axes(sys, opt);
  CHECK(r.trace.branch != "general");
  const oracle::AxesError e = oracle::compare(r.axes, oracle::eigen_axes(sys.diameters()));
  CHECK(e.length <= 1e-8);
  CHECK(e.angle <= 1e-7);
}
