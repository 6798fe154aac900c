#pragma once

// Ruler-and-compass constructibility of the roots of the intersection
// quartic, decided exactly by two independent routes:
//
//   standard-resolvent  reducibility over Q (rational roots, then quadratic
//                       factors read off the rational roots of the resolvent
//                       cubic), otherwise the resolvent criterion;
//   field-resolvent     (sqrt(k4) y^2 + c)^2 - (d y + e)^2 for quartics with
//                       no cubic term, giving a cubic in c over Q(sqrt D)
//                       whose roots in that field are searched exhaustively.

#include <optional>
#include <string>
#include <vector>

#include "quadax/rational.hpp"

namespace quadax {

/// Planar: every root is constructible. ReduciblePlanar: reducible over Q,
/// the roots of the linear factors are constructible, those of an
/// irreducible cubic factor are not. Solid: no root is constructible.
enum class Verdict { Planar, ReduciblePlanar, Solid };
std::string to_string(Verdict v);

/// Sparse polynomial in (lam, nu).
struct BiPoly {
  struct Term {
    unsigned i = 0, j = 0;  // lam^i nu^j
    Rat c;
  };
  std::vector<Term> terms;  // sorted by (i + j, i) descending, no zeros

  void add(unsigned i, unsigned j, const Rat& c);
  Rat coeff(unsigned i, unsigned j) const;
  /// Polynomial in lam at a fixed nu.
  RatPoly at_nu(const Rat& nu) const;
  /// Polynomial in nu at a fixed lam.
  RatPoly at_lam(const Rat& lam) const;
  unsigned degree_lam() const;
};

std::string to_string(const BiPoly& p);

/// One branch of the split for a cubic w^3 + P w + R sqrt D.
struct SplitBranch {
  std::string name;               // "lam = 0" or "lam != 0"
  RatPoly equation;               // in nu
  std::optional<RatPoly> lam_squared;  // lam^2 as a polynomial in nu (lam != 0 branch)
  RationalRootReport test;
  std::vector<QuadFieldElem> roots;  // accepted (lam, nu)
};

/// The surd part as transcribed in the classical argument, where the cube
/// of nu sqrt D was taken as nu^3 sqrt D instead of D nu^3 sqrt D. Both
/// branches are rebuilt under that reading and compared with the derived ones.
struct PrintedSplitCheck {
  RatPoly lam_zero;      // nu^3 + P nu + R
  RatPoly lam_nonzero;   // (1 - 9D) nu^3 - 2P nu + R
  bool lam_zero_matches = false;
  bool lam_nonzero_matches = false;
  RationalRootReport lam_zero_test, lam_nonzero_test;
  bool same_conclusion = false;  // printed branches also have no admissible root
  std::string note;
};

struct QFRootSearch {
  QFPoly poly;                // monic normalisation of the input
  BiPoly A, B;                // poly(lam + nu sqrt d) = A + B sqrt d
  RatPoly resultant;          // Res_lam(A, B) as a polynomial in nu
  RationalRootReport resultant_test;
  std::vector<SplitBranch> branches;        // when poly = w^3 + P w + R sqrt d
  std::optional<PrintedSplitCheck> printed;  // idem
  std::vector<QuadFieldElem> roots;          // every root in Q(sqrt d), sorted
  bool branches_agree = true;                // branch roots == resultant roots

  bool found() const { return !roots.empty(); }
};

/// All roots of p in Q(sqrt d). Exhaustive: the rational roots nu of the
/// resultant in lam, then the rational roots lam of A(., nu) that also kill B.
QFRootSearch qf_root_search(const QFPoly& p);

struct ResolventSystem {
  RatPoly quartic;         // as given
  RatPoly normalized;      // sign flipped so that k4 > 0
  Rat k4, k2, k1, k0;
  Rat s;                   // k4 = s^2 D
  Int D;
  std::string normalization;  // e.g. "sqrt(24) = 2*sqrt(6)"
  std::vector<std::string> equations;  // the three coefficient equations
  QFPoly cubic;            // in c, monic
  QuadFieldElem shift;     // c = w - shift
  QFPoly depressed;        // in w: w^3 + P w + R sqrt D
  Rat P, R;
};

/// Throws InvalidInput("unsupported quartic shape for field route") unless
/// q has degree 4, no cubic term and a leading coefficient that is not a
/// perfect square up to sign.
ResolventSystem resolvent_system(const RatPoly& q);

struct QuadraticSplit {
  RatPoly f1, f2;  // monic rational quadratics, monic(q) = f1 * f2
  Rat z;           // resolvent root q + s that produced it
};

struct StandardRoute {
  RatPoly quartic;
  RatPoly monic;
  RationalRootReport root_test;
  std::vector<RatPoly> factors;  // irreducible-over-Q factorisation found (monic)
  RatPoly resolvent;             // primitive z^3 - c z^2 + (bd - 4e) z - (b^2 e - 4ce + d^2)
  RationalRootReport resolvent_test;
  std::optional<QuadraticSplit> split;
  bool irreducible = false;
  Verdict verdict = Verdict::Solid;
};

StandardRoute standard_route(const RatPoly& q);

struct FieldRoute {
  ResolventSystem system;
  QFRootSearch search;
  Verdict verdict = Verdict::Solid;
};

struct ConstructibilityReport {
  Verdict verdict = Verdict::Solid;
  std::vector<std::string> methods;  // "standard-resolvent", "field-resolvent", "closed-form", ...
  RatPoly quartic;                   // the polynomial the verdict is about
  std::optional<StandardRoute> standard;
  std::optional<FieldRoute> field;
  bool routes_agree = true;  // field root found <=> resolvent has a rational root
  std::vector<std::string> notes;
};

/// Standard route always; the field route as well whenever q has its shape.
/// Throws InvalidInput when q does not have degree 4.
ConstructibilityReport quartic_constructibility(const RatPoly& q);

/// Exact intersection-quartic data; only z'^2 enters.
struct ExactInstance {
  Rat a, b, x, y, zsq;
  Rat alpha;              // ab - bx'^2 + (a+b)y'^2 + a z'^2
  RatPoly geometric;      // (alpha y^2 - 2ab y' y - b^2 y'^2)^2 - 4b x'^2 y'^2 (a+b)(b - y^2) y^2
  RatPoly printed;        // same with the constant b^2 y'^2 replaced by y'^2 b, primitive
};

ExactInstance exact_instance(const Rat& a, const Rat& b, const Rat& x, const Rat& y, const Rat& zsq);

/// z'^2 that makes alpha vanish: -(ab - bx'^2 + (a+b)y'^2) / a.
Rat alpha_zero_zsq(const Rat& a, const Rat& b, const Rat& x, const Rat& y);

struct InstanceReport {
  ExactInstance instance;
  std::string branch;   // "alpha=0", "x'=0", "y'=0", "general"
  ConstructibilityReport report;     // on the quartic the branch works with
  std::optional<ConstructibilityReport> geometric;  // cross-check when printed != geometric
  std::vector<QuadFieldElem> closed_form_roots;  // x' = 0: roots of alpha y^2 - 2ab y' y - b^2 y'^2
  std::vector<bool> rejected;                     // y = y', parallel to closed_form_roots
  std::optional<bool> on_focal_hyperbola;  // y' = 0: alpha0 == 0 exactly
};

/// Constructibility for exact parameters. With alpha = 0 both routes run
/// on the reduced quartic and the geometric quartic is cross-checked.
/// x' = 0 drops to a quadratic (planar), y' = 0 is decided without a quartic.
/// Throws InvalidInput for a <= 0, b <= 0 or z'^2 < 0.
InstanceReport instance_constructibility(const Rat& a, const Rat& b, const Rat& x, const Rat& y, const Rat& zsq);

}  // namespace quadax
