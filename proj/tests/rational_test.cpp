#include <doctest.h>

#include "quadax/error.hpp"
#include "quadax/rational.hpp"

using namespace quadax;

TEST_CASE("parse_rat accepts integers and fractions only") {
  CHECK(parse_rat("3") == Rat(3));
  CHECK(parse_rat("-1/2") == Rat(-1, 2));
  CHECK(parse_rat(" +6/4 ") == Rat(3, 2));
  CHECK(parse_rat("263/36") == Rat(263, 36));
  CHECK(parse_rat("123456789012345678901234567890/7") * 7 == Rat(Int("123456789012345678901234567890")));
  for (const char* bad : {"0.5", "1e3", "1/0", "", "abc", "1/2/3", "--1", "1/-2", "1.0/2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rat(bad), Error);
  }
}

TEST_CASE("to_string keeps canonical form") {
  CHECK(to_string(parse_rat("6/4")) == "3/2");
  CHECK(to_string(parse_rat("-4/2")) == "-2");
  CHECK(to_string(Int(-17)) == "-17");
}

TEST_CASE("squarefree helpers") {
  CHECK(is_squarefree(Int(6)));
  CHECK_FALSE(is_squarefree(Int(24)));
  CHECK(is_squarefree(Int(1)));
  Rat s;
  Int f;
  squarefree_split(Rat(24), s, f);
  CHECK(s == 2);
  CHECK(f == 6);
  squarefree_split(Rat(3, 8), s, f);
  CHECK(s * s * f == Rat(3, 8));
  CHECK(is_squarefree(f));
  Rat r;
  CHECK(rational_sqrt(Rat(9, 16), r));
  CHECK(r == Rat(3, 4));
  CHECK_FALSE(rational_sqrt(Rat(2), r));
}

TEST_CASE("Q(sqrt d) arithmetic") {
  const QuadFieldElem x(Int(6), 1, 2), y(Int(6), Rat(1, 3), -1);
  CHECK(x * y == QuadFieldElem(Int(6), Rat(1, 3) - 12, Rat(2, 3) - 1));
  CHECK(x * x.inverse() == QuadFieldElem(Int(6), 1, 0));
  CHECK(x.norm() == 1 - 24);
  CHECK((x / y) * y == x);
  CHECK(to_string(QuadFieldElem(Int(6), Rat(5, 3), Rat(2, 3))) == "5/3 + 2/3*sqrt6");
  CHECK_THROWS_AS(QuadFieldElem(Int(6)).inverse(), Error);
  CHECK_THROWS_AS(QuadFieldElem(Int(4), 1, 1), Error);
  // rationals mix with any field, two different fields do not
  CHECK(QuadFieldElem(Int(2), 3, 0) + QuadFieldElem(Int(5), 0, 1) == QuadFieldElem(Int(5), 3, 1));
  CHECK_THROWS_AS(QuadFieldElem(Int(2), 0, 1) + QuadFieldElem(Int(5), 0, 1), Error);
}

TEST_CASE("RatPoly operations") {
  const RatPoly p({-1, 0, 1});  // x^2 - 1
  const RatPoly q({1, 1});      // x + 1
  CHECK(p.divide_exact(q) == RatPoly({-1, 1}));
  CHECK_THROWS_AS(p.divide_exact(RatPoly({2, 1})), Error);
  RatPoly quo, rem;
  p.divmod(RatPoly({2, 1}), quo, rem);
  CHECK(quo * RatPoly({2, 1}) + rem == p);
  CHECK(RatPoly({Rat(1, 2), Rat(-1, 3)}).primitive() == RatPoly({-3, 2}));
  CHECK(p(Rat(1, 2)) == Rat(-3, 4));
  CHECK(p.derivative() == RatPoly({0, 2}));
  CHECK(to_string(RatPoly({1, 4, -44, 0, 24}), "y") == "24*y^4 - 44*y^2 + 4*y + 1");
}

TEST_CASE("factorize and divisors") {
  const auto f = factorize(Int(360));
  CHECK(f.size() == 3);
  CHECK(divisors(Int(12)) == std::vector<Int>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(Int(-6)) == std::vector<Int>{1, 2, 3, 6});
  // two 15-digit primes
  const Int p("100000000000031"), q("100000000000067");
  const auto g = factorize(p * q);
  REQUIRE(g.size() == 2);
  CHECK(g[0].first * g[1].first == p * q);
}

TEST_CASE("rational root test") {
  const RationalRootReport a = rational_root_test(RatPoly({-2, -1, 11, 6}));
  CHECK(a.roots.empty());
  CHECK(a.candidate_count == 12);
  // +-1, +-2, +-1/2, +-1/3, +-2/3, +-1/6
  for (const Rat& c : {Rat(1), Rat(2), Rat(1, 2), Rat(1, 3), Rat(2, 3), Rat(1, 6)}) {
    CHECK(std::find(a.candidates.begin(), a.candidates.end(), c) != a.candidates.end());
    CHECK(std::find(a.candidates.begin(), a.candidates.end(), -c) != a.candidates.end());
  }
  CHECK(rational_root_test(RatPoly({1, 4, -44, 0, 24})).roots.empty());
  // (2x - 1)(x^2 + 1)
  CHECK(rational_root_test(RatPoly({-1, 2, -1, 2})).roots == std::vector<Rat>{Rat(1, 2)});
  // x^2 (x - 3)
  CHECK(rational_root_test(RatPoly({0, 0, -3, 1})).roots == std::vector<Rat>{0, 3});
}
