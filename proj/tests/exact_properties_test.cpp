#include <doctest.h>

#include <random>

#include "quadax/constructibility.hpp"
#include "support/oracles.hpp"

using namespace quadax;

namespace {

Rat small_rat(std::mt19937_64& g, int num = 9, int den = 6) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  Rat r(n(g), d(g));
  r.canonicalize();
  return r;
}

QuadFieldElem small_elem(std::mt19937_64& g, const Int& d) { return QuadFieldElem(d, small_rat(g), small_rat(g)); }

const std::vector<Int> kFields{2, 3, 5, 6, 7, 10, 15};

}  // namespace

TEST_CASE("field axioms of Q(sqrt d) on random elements") {
  std::mt19937_64 g(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const Int& d = kFields[static_cast<std::size_t>(trial) % kFields.size()];
    const QuadFieldElem x = small_elem(g, d), y = small_elem(g, d), z = small_elem(g, d);
    const QuadFieldElem zero(d), one(d, 1, 0);
    REQUIRE((x + y) + z == x + (y + z));
    REQUIRE((x * y) * z == x * (y * z));
    REQUIRE(x + y == y + x);
    REQUIRE(x * y == y * x);
    REQUIRE(x * (y + z) == x * y + x * z);
    REQUIRE(x + zero == x);
    REQUIRE(x * one == x);
    REQUIRE(x + (-x) == zero);
    if (!x.is_zero()) {
      REQUIRE(x * x.inverse() == one);
      REQUIRE((y / x) * x == y);
    }
    REQUIRE((x * y).norm() == x.norm() * y.norm());
  }
}

TEST_CASE("planted roots in Q(sqrt d): exact search agrees with the float oracle") {
  std::mt19937_64 g(42);
  int with_surd = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Int& d = kFields[static_cast<std::size_t>(trial) % kFields.size()];
    QuadFieldElem r = small_elem(g, d);
    if (trial % 4 == 0) r = QuadFieldElem(d, r.lam(), 0);
    if (!r.is_rational()) ++with_surd;
    const QuadFieldElem b = small_elem(g, d), c = small_elem(g, d), one(d, 1, 0);
    // (x - r)(x^2 + b x + c)
    const std::vector<QuadFieldElem> coeffs{-r * c, c - r * b, b - r, one};
    const QFPoly p(d, coeffs);
    const QFRootSearch s = qf_root_search(p);
    REQUIRE(std::find(s.roots.begin(), s.roots.end(), r) != s.roots.end());
    for (const QuadFieldElem& x : s.roots) REQUIRE(p(x).is_zero());
    std::vector<std::pair<Rat, Rat>> exact;
    for (const QuadFieldElem& x : s.roots) exact.emplace_back(x.lam(), x.nu());
    std::sort(exact.begin(), exact.end());
    CAPTURE(to_string(p));
    REQUIRE(exact == oracle::float_field_roots(p));
  }
  CHECK(with_surd > 100);
}

TEST_CASE("products of two rational quadratics are planar with a factor witness") {
  std::mt19937_64 g(43);
  for (int trial = 0; trial < 200; ++trial) {
    const RatPoly f1({small_rat(g), small_rat(g), 1}), f2({small_rat(g), small_rat(g), 1});
    Rat k(1 + trial % 5, 1 + trial % 3);
    k.canonicalize();
    const RatPoly q = k * (f1 * f2);
    const ConstructibilityReport r = quartic_constructibility(q);
    REQUIRE(r.verdict == Verdict::Planar);
    REQUIRE(r.routes_agree);
    const StandardRoute& s = *r.standard;
    if (s.split) {
      REQUIRE(s.split->f1 * s.split->f2 == s.monic);
    } else {
      // a rational root was found first: the factors multiply back
      RatPoly prod({1});
      for (const RatPoly& f : s.factors) prod = prod * f;
      REQUIRE(prod == s.monic);
      for (const RatPoly& f : s.factors) REQUIRE(f.degree() <= 2);
    }
  }
}

TEST_CASE("field route and standard resolvent agree on random shaped quartics") {
  std::mt19937_64 g(44);
  std::uniform_int_distribution<int> lead(2, 30);
  for (int trial = 0; trial < 150; ++trial) {
    int k4 = lead(g);
    Rat root;
    if (rational_sqrt(Rat(k4), root)) ++k4;
    if (rational_sqrt(Rat(k4), root)) ++k4;
    const RatPoly q({small_rat(g), small_rat(g), small_rat(g), 0, k4});
    if (q[0] == 0) continue;
    const ConstructibilityReport r = quartic_constructibility(q);
    REQUIRE(r.field.has_value());
    REQUIRE(r.routes_agree);
    REQUIRE(r.field->search.branches_agree);
  }
}
