#include <doctest.h>

#include <algorithm>

#include "quadax/constructibility.hpp"
#include "quadax/error.hpp"

using namespace quadax;

namespace {

const RatPoly kPinned({1, 4, -44, 0, 24});  // 24y^4 - 44y^2 + 4y + 1

bool has_note(const ConstructibilityReport& r, const std::string& needle) {
  return std::any_of(r.notes.begin(), r.notes.end(), [&](const std::string& n) { return n.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("standard route on the pinned quartic") {
  const StandardRoute s = standard_route(kPinned);
  CHECK(s.root_test.roots.empty());
  CHECK(s.resolvent == RatPoly({-2, -1, 11, 6}));
  CHECK(s.resolvent_test.roots.empty());
  CHECK(s.resolvent_test.candidate_count == 12);
  CHECK_FALSE(s.split.has_value());
  CHECK(s.irreducible);
  CHECK(s.verdict == Verdict::Solid);
}

TEST_CASE("resolvent system and depressed cubic of the pinned quartic") {
  const ResolventSystem r = resolvent_system(kPinned);
  CHECK(r.D == 6);
  CHECK(r.s == 2);
  CHECK(r.normalization == "sqrt(24) = 2*sqrt(6)");
  CHECK(r.equations.size() == 3);
  // c^3 + 11/6 sqrt6 c^2 - c - 2 sqrt6
  const auto& c = r.cubic.coeffs();
  REQUIRE(c.size() == 4);
  CHECK(c[2] == QuadFieldElem(Int(6), 0, Rat(11, 6)));
  CHECK(c[1] == QuadFieldElem(Int(6), -1, 0));
  CHECK(c[0] == QuadFieldElem(Int(6), 0, -2));
  // shift c = w - 11/18 sqrt6, i.e. c + 11/(3 sqrt6) is a root of the shifted cubic
  CHECK(r.shift == QuadFieldElem(Int(6), 0, Rat(11, 18)));
  CHECK(r.P == Rat(-139, 18));
  CHECK(r.R == Rat(328, 243));
  const auto& w = r.depressed.coeffs();
  CHECK(w[3] == QuadFieldElem(Int(6), 1, 0));
  CHECK(w[2].is_zero());
  CHECK(w[1] == QuadFieldElem(Int(6), Rat(-139, 18), 0));
  CHECK(w[0] == QuadFieldElem(Int(6), 0, Rat(328, 243)));
}

TEST_CASE("resolvent system rejects other shapes") {
  CHECK_THROWS_AS(resolvent_system(RatPoly({1, 0, 0, 1, 1})), Error);   // cubic term
  CHECK_THROWS_AS(resolvent_system(RatPoly({1, 0, 0, 0, 4})), Error);   // square leading coefficient
  CHECK_THROWS_AS(resolvent_system(RatPoly({1, 0, 1})), Error);         // degree 2
  CHECK(resolvent_system(RatPoly({1, 0, 0, 0, -3})).D == 3);             // sign flipped first
}

TEST_CASE("field search on the depressed cubic exhausts both branches") {
  const QFRootSearch s = qf_root_search(resolvent_system(kPinned).depressed);
  CHECK_FALSE(s.found());
  CHECK(s.resultant_test.roots.empty());
  REQUIRE(s.branches.size() == 2);
  CHECK(s.branches[0].equation == RatPoly({Rat(328, 243), Rat(-139, 18), 0, 6}));
  CHECK(s.branches[1].equation == RatPoly({Rat(328, 243), Rat(139, 9), 0, -48}));
  for (const SplitBranch& b : s.branches) CHECK(b.roots.empty());
  CHECK(s.branches_agree);
  REQUIRE(s.printed.has_value());
  CHECK_FALSE(s.printed->lam_zero_matches);
  CHECK_FALSE(s.printed->lam_nonzero_matches);
  CHECK(s.printed->same_conclusion);
  CHECK(s.printed->note.find("differs") != std::string::npos);
}

TEST_CASE("field search finds planted roots") {
  // (x - (1 + sqrt5)) (x^2 + x + 1)
  const Int d(5);
  const QuadFieldElem r(d, 1, 1);
  const QuadFieldElem one(d, 1, 0);
  const std::vector<QuadFieldElem> c{-r, one - r, one - r, one};
  const QFRootSearch s = qf_root_search(QFPoly(d, c));
  REQUIRE(s.roots.size() == 1);
  CHECK(s.roots[0] == r);

  // rational root 2 over Q(sqrt6): (x - 2)(x^2 - sqrt6)
  const Int d6(6);
  const std::vector<QuadFieldElem> c2{QuadFieldElem(d6, 0, 2), QuadFieldElem(d6, 0, -1), QuadFieldElem(d6, -2, 0),
                                      QuadFieldElem(d6, 1, 0)};
  const QFRootSearch s2 = qf_root_search(QFPoly(d6, c2));
  REQUIRE(s2.roots.size() == 1);
  CHECK(s2.roots[0] == QuadFieldElem(d6, 2, 0));
}

TEST_CASE("verdicts of small quartics") {
  const ConstructibilityReport pinned = quartic_constructibility(kPinned);
  CHECK(pinned.verdict == Verdict::Solid);
  CHECK(pinned.field.has_value());
  CHECK(pinned.field->verdict == Verdict::Solid);
  CHECK(pinned.routes_agree);
  CHECK(has_note(pinned, "differs"));

  const ConstructibilityReport two = quartic_constructibility(RatPoly({6, 0, -5, 0, 1}));
  CHECK(two.verdict == Verdict::Planar);
  REQUIRE(two.standard->split.has_value());
  CHECK(two.standard->split->f1 * two.standard->split->f2 == RatPoly({6, 0, -5, 0, 1}));

  const ConstructibilityReport quad = quartic_constructibility(RatPoly({-1, 0, 0, 0, 1}));
  CHECK(quad.verdict == Verdict::Planar);
  CHECK(quad.standard->root_test.roots == std::vector<Rat>{-1, 1});

  // (y + 1)(y^3 - 2) has a root, but the cubic factor does not split
  const ConstructibilityReport mixed = quartic_constructibility(RatPoly({-2, -2, 0, 1, 1}));
  CHECK(mixed.verdict == Verdict::ReduciblePlanar);

  // irreducible with a rational resolvent root: y^4 - 2 (roots +-2^(1/4), constructible)
  CHECK(quartic_constructibility(RatPoly({-2, 0, 0, 0, 1})).verdict == Verdict::Planar);
  // x^4 + x + 1: Galois group S4
  CHECK(quartic_constructibility(RatPoly({1, 1, 0, 0, 1})).verdict == Verdict::Solid);

  CHECK_THROWS_AS(quartic_constructibility(RatPoly({1, 0, 1})), Error);
}

TEST_CASE("exact instance: pinned parameters") {
  CHECK(alpha_zero_zsq(1, 2, 2, 1) == 3);
  const InstanceReport r = instance_constructibility(1, 2, 2, 1, 3);
  CHECK(r.instance.alpha == 0);
  CHECK(r.branch == "alpha=0");
  CHECK(r.instance.printed == kPinned);
  CHECK(r.report.verdict == Verdict::Solid);
  REQUIRE(r.report.standard.has_value());
  REQUIRE(r.report.field.has_value());
  CHECK(r.report.standard->verdict == Verdict::Solid);
  CHECK(r.report.field->verdict == Verdict::Solid);
  REQUIRE(r.geometric.has_value());
  CHECK(r.geometric->quartic == RatPoly({1, 2, -11, 0, 6}));
  CHECK(r.geometric->verdict == Verdict::Solid);
}

TEST_CASE("exact instance: synthetic planar alpha = 0 case") {
  const InstanceReport r = instance_constructibility(Rat(1, 3), 1, Rat(7, 2), Rat(8, 3), Rat(263, 36));
  CHECK(r.instance.alpha == 0);
  CHECK(r.report.verdict == Verdict::Planar);
  CHECK(r.report.routes_agree);
  REQUIRE(r.report.field.has_value());
  REQUIRE(r.report.field->search.roots.size() == 1);
  CHECK(r.report.field->search.roots[0] == QuadFieldElem(Int(3), 0, Rat(-74, 63)));
}

TEST_CASE("exact instance: x' = 0 drops to a quadratic") {
  const InstanceReport r = instance_constructibility(1, 1, 0, 1, 0);
  CHECK(r.branch == "x'=0");
  CHECK(r.report.verdict == Verdict::Planar);
  REQUIRE(r.closed_form_roots.size() == 2);
  CHECK(r.closed_form_roots[0] == QuadFieldElem(Int(2), 1, 0));
  CHECK(r.closed_form_roots[1] == QuadFieldElem(Int(2), Rat(-1, 3), 0));
  CHECK(r.rejected == std::vector<bool>{true, false});
  CHECK(has_note(r.report, "equals y'"));
}

TEST_CASE("exact instance: y' = 0 membership test is exact") {
  const InstanceReport on = instance_constructibility(1, 2, 2, 0, 6);  // 2 - 8 + 6 = 0
  CHECK(on.branch == "y'=0");
  REQUIRE(on.on_focal_hyperbola.has_value());
  CHECK(*on.on_focal_hyperbola);
  const InstanceReport off = instance_constructibility(1, 2, 2, 0, Rat(599999, 100000));
  CHECK_FALSE(*off.on_focal_hyperbola);
}

TEST_CASE("exact instance: general branch and input checks") {
  const InstanceReport r = instance_constructibility(1, 2, 3, 1, 5);
  CHECK(r.branch == "general");
  CHECK(r.report.verdict == Verdict::Solid);
  CHECK(instance_constructibility(Rat(1, 4), 1, 1, Rat(1, 2), Rat(7, 4)).report.verdict == Verdict::ReduciblePlanar);
  CHECK_THROWS_AS(instance_constructibility(0, 1, 1, 1, 1), Error);
  CHECK_THROWS_AS(instance_constructibility(1, -1, 1, 1, 1), Error);
  CHECK_THROWS_AS(instance_constructibility(1, 1, 1, 1, -1), Error);
}
