#include "quadax/constructibility.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "quadax/error.hpp"

namespace quadax {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Planar: return "planar";
    case Verdict::ReduciblePlanar: return "reducible-planar";
    case Verdict::Solid: return "solid";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// BiPoly

void BiPoly::add(unsigned i, unsigned j, const Rat& c) {
  if (c == 0) return;
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    if (it->i == i && it->j == j) {
      it->c += c;
      if (it->c == 0) terms.erase(it);
      return;
    }
  }
  terms.push_back({i, j, c});
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (x.i + x.j != y.i + y.j) return x.i + x.j > y.i + y.j;
    return x.i > y.i;
  });
}

Rat BiPoly::coeff(unsigned i, unsigned j) const {
  for (const auto& t : terms)
    if (t.i == i && t.j == j) return t.c;
  return 0;
}

namespace {

Rat pow_rat(const Rat& x, unsigned k) {
  Rat r = 1;
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

RatPoly BiPoly::at_nu(const Rat& nu) const {
  std::vector<Rat> c(degree_lam() + 1);
  for (const auto& t : terms) c[t.i] += t.c * pow_rat(nu, t.j);
  return RatPoly(std::move(c));
}

RatPoly BiPoly::at_lam(const Rat& lam) const {
  unsigned dn = 0;
  for (const auto& t : terms) dn = std::max(dn, t.j);
  std::vector<Rat> c(dn + 1);
  for (const auto& t : terms) c[t.j] += t.c * pow_rat(lam, t.i);
  return RatPoly(std::move(c));
}

unsigned BiPoly::degree_lam() const {
  unsigned d = 0;
  for (const auto& t : terms) d = std::max(d, t.i);
  return d;
}

std::string to_string(const BiPoly& p) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms) {
    std::string v = to_string(t.c);
    const bool neg = v.front() == '-';
    if (neg) v = v.substr(1);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    const bool bare = t.i + t.j > 0 && v == "1";
    if (!bare) os << v;
    auto var = [&](const char* name, unsigned k, bool lead) {
      if (k == 0) return;
      if (!lead) os << "*";
      os << name;
      if (k > 1) os << "^" << k;
    };
    var("lam", t.i, bare);
    var("nu", t.j, bare && t.i == 0);
  }
  return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// Helpers over Q(sqrt d)

using QFVec = std::vector<QuadFieldElem>;

QFVec qf_mul(const QFVec& a, const QFVec& b, const Int& d) {
  if (a.empty() || b.empty()) return {};
  QFVec c(a.size() + b.size() - 1, QuadFieldElem(d));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  return c;
}

// p(x - s) by Horner on polynomials.
QFVec qf_shift(const QFVec& p, const QuadFieldElem& s, const Int& d) {
  QFVec acc;
  const QFVec lin{-s, QuadFieldElem(d, 1)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = qf_mul(acc, lin, d);
    if (acc.empty()) acc.push_back(QuadFieldElem(d));
    acc[0] = acc[0] + *it;
  }
  return acc;
}

Rat binom(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rat(r);
}

// p(lam + nu sqrt d) = A + B sqrt d
void split_parts(const QFPoly& p, BiPoly& A, BiPoly& B) {
  const Rat d(p.d());
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const Rat& l = p.coeffs()[k].lam();
    const Rat& m = p.coeffs()[k].nu();
    for (unsigned j = 0; j <= k; ++j) {
      const unsigned i = static_cast<unsigned>(k) - j;
      const Rat c = binom(static_cast<unsigned>(k), j);
      if (j % 2 == 0) {
        const Rat w = c * pow_rat(d, j / 2);
        A.add(i, j, l * w);
        B.add(i, j, m * w);
      } else {
        // (lam^i nu^j) d^((j-1)/2) sqrt d
        A.add(i, j, m * c * pow_rat(d, (j + 1) / 2));
        B.add(i, j, l * c * pow_rat(d, (j - 1) / 2));
      }
    }
  }
}

Rat determinant(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rat f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

// Sylvester resultant with fixed formal degrees (coefficient vectors
// ascending, padded).
Rat sylvester(const std::vector<Rat>& f, const std::vector<Rat>& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1, N = m + n;
  std::vector<std::vector<Rat>> s(N, std::vector<Rat>(N));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g[n - k];
  return determinant(std::move(s));
}

std::vector<Rat> padded(const RatPoly& p, std::size_t len) {
  std::vector<Rat> c(len);
  for (std::size_t i = 0; i < len; ++i) c[i] = p[i];
  return c;
}

// Newton interpolation through (xs[i], ys[i]), returned in the monomial basis.
RatPoly interpolate(const std::vector<Rat>& xs, std::vector<Rat> ys) {
  const std::size_t n = xs.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - k]);
  RatPoly acc;
  for (std::size_t k = n; k-- > 0;) acc = acc * RatPoly({-xs[k], 1}) + RatPoly({ys[k]});
  return acc;
}

RatPoly monomial(const Rat& c, unsigned k) {
  std::vector<Rat> v(k + 1);
  v[k] = c;
  return RatPoly(std::move(v));
}

bool admissible_lam(const Rat& lam_sq, Rat& lam) { return lam_sq > 0 && rational_sqrt(lam_sq, lam); }

void sort_roots(std::vector<QuadFieldElem>& r) {
  std::sort(r.begin(), r.end(), [](const QuadFieldElem& x, const QuadFieldElem& y) {
    return x.lam() != y.lam() ? x.lam() < y.lam() : x.nu() < y.nu();
  });
  r.erase(std::unique(r.begin(), r.end()), r.end());
}

// Branch structure for the shape w^3 + P w + R sqrt d, read off A and B:
// A is odd in lam, A/lam = lam^2 + a0(nu), B is even in lam.
void derive_branches(QFRootSearch& s) {
  const auto& c = s.poly.coeffs();
  if (s.poly.degree() != 3 || !c[2].is_zero() || !c[1].is_rational() || c[0].lam() != 0) return;
  for (const auto& t : s.A.terms)
    if (t.i % 2 == 0) return;
  for (const auto& t : s.B.terms)
    if (t.i % 2 == 1) return;

  // A / lam = lam^2 * A2(nu) + A0(nu)
  RatPoly a2, a0;
  for (const auto& t : s.A.terms) {
    if (t.i == 3) a2 = a2 + monomial(t.c, t.j);
    else if (t.i == 1) a0 = a0 + monomial(t.c, t.j);
    else return;
  }
  if (a2.degree() != 0) return;
  const RatPoly lam_sq = (Rat(-1) / a2[0]) * a0;

  SplitBranch zero;
  zero.name = "lam = 0";
  zero.equation = s.B.at_lam(0);
  zero.test = rational_root_test(zero.equation);
  for (const auto& nu : zero.test.roots) {
    const QuadFieldElem r(s.poly.d(), 0, nu);
    if (s.poly(r).is_zero()) zero.roots.push_back(r);
  }

  SplitBranch nonzero;
  nonzero.name = "lam != 0";
  nonzero.lam_squared = lam_sq;
  // substitute lam^2 -> lam_sq(nu) into B
  RatPoly eq;
  for (const auto& t : s.B.terms) {
    RatPoly term = monomial(t.c, t.j);
    for (unsigned k = 0; k < t.i / 2; ++k) term = term * lam_sq;
    eq = eq + term;
  }
  nonzero.equation = eq;
  nonzero.test = rational_root_test(eq);
  for (const auto& nu : nonzero.test.roots) {
    Rat lam;
    if (!admissible_lam(lam_sq(nu), lam)) continue;
    for (const Rat& l : {lam, Rat(-lam)}) {
      const QuadFieldElem r(s.poly.d(), l, nu);
      if (s.poly(r).is_zero()) nonzero.roots.push_back(r);
    }
  }

  // The transcribed reading: the nu^3 term of the surd part without the factor d.
  const Rat D(s.poly.d());
  const Rat P = c[1].lam(), R = c[0].nu();
  PrintedSplitCheck pc;
  pc.lam_zero = RatPoly({R, P, 0, 1});
  pc.lam_nonzero = RatPoly({R, -2 * P, 0, 1 - 9 * D});
  pc.lam_zero_matches = pc.lam_zero == zero.equation;
  pc.lam_nonzero_matches = pc.lam_nonzero == nonzero.equation;
  pc.lam_zero_test = rational_root_test(pc.lam_zero);
  pc.lam_nonzero_test = rational_root_test(pc.lam_nonzero);
  bool printed_admissible = !pc.lam_zero_test.roots.empty();
  for (const auto& nu : pc.lam_nonzero_test.roots) {
    Rat lam;
    if (admissible_lam(lam_sq(nu), lam)) printed_admissible = true;
  }
  const bool derived_admissible = !zero.roots.empty() || !nonzero.roots.empty();
  pc.same_conclusion = printed_admissible == derived_admissible;
  std::ostringstream note;
  if (pc.lam_zero_matches && pc.lam_nonzero_matches) {
    note << "transcribed split agrees with the derived split";
  } else {
    note << "transcribed split differs from the derived split: the surd part of (lam + nu sqrt" << s.poly.d()
         << ")^3 contributes " << to_string(D) << "*nu^3, not nu^3; lam = 0 branch " << to_string(pc.lam_zero, "nu")
         << " vs derived " << to_string(zero.equation, "nu") << "; lam != 0 branch "
         << to_string(pc.lam_nonzero, "nu") << " vs derived " << to_string(nonzero.equation, "nu") << "; "
         << (pc.same_conclusion ? "both readings reach the same conclusion"
                                : "the readings reach different conclusions, the derived one is used");
  }
  pc.note = note.str();

  s.branches = {std::move(zero), std::move(nonzero)};
  s.printed = std::move(pc);
}

}  // namespace

QFRootSearch qf_root_search(const QFPoly& p) {
  if (p.degree() < 1) throw invalid_input("root search needs a polynomial of degree >= 1");
  const Int& d = p.d();
  QFRootSearch s;
  const QuadFieldElem lead_inv = p.coeffs().back().inverse();
  QFVec monic;
  for (const auto& c : p.coeffs()) monic.push_back(c * lead_inv);
  s.poly = QFPoly(d, monic);
  split_parts(s.poly, s.A, s.B);

  const unsigned n = static_cast<unsigned>(s.poly.degree());
  if (n == 1) {
    s.roots.push_back(-s.poly.coeffs()[0]);
    return s;
  }
  // A has lam-degree n with leading coefficient 1, B has lam-degree n - 1
  // (formally; its leading coefficient n nu + ... may vanish at a sample).
  // Bezout bounds the degree of the resultant in nu by n^2.
  const unsigned samples = n * n + 1, checks = 2;
  std::vector<Rat> xs, ys;
  for (unsigned k = 0; k < samples + checks; ++k) {
    const Rat nu(static_cast<long>(k) - static_cast<long>(samples / 2));
    xs.push_back(nu);
    ys.push_back(sylvester(padded(s.A.at_nu(nu), n + 1), padded(s.B.at_nu(nu), n)));
  }
  s.resultant = interpolate(std::vector<Rat>(xs.begin(), xs.begin() + samples),
                            std::vector<Rat>(ys.begin(), ys.begin() + samples));
  for (unsigned k = samples; k < samples + checks; ++k)
    if (s.resultant(xs[k]) != ys[k]) throw degenerate("resultant interpolation is inconsistent");
  // A and B have no common factor for p != 0 (their common zeros are pairs of
  // roots of p and its conjugate), so the resultant cannot vanish identically.
  if (s.resultant.is_zero()) throw degenerate("resultant vanished identically");

  s.resultant_test = rational_root_test(s.resultant);
  for (const auto& nu : s.resultant_test.roots) {
    const RatPoly a = s.A.at_nu(nu);
    for (const auto& lam : rational_root_test(a).roots) {
      const QuadFieldElem r(d, lam, nu);
      if (s.poly(r).is_zero()) s.roots.push_back(r);
    }
  }
  sort_roots(s.roots);

  derive_branches(s);
  if (!s.branches.empty()) {
    std::vector<QuadFieldElem> from_branches;
    for (const auto& b : s.branches) from_branches.insert(from_branches.end(), b.roots.begin(), b.roots.end());
    sort_roots(from_branches);
    s.branches_agree = from_branches == s.roots;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Field route

ResolventSystem resolvent_system(const RatPoly& q) {
  static const char* kShape = "unsupported quartic shape for field route";
  if (q.degree() != 4 || q[3] != 0) throw invalid_input(kShape);
  ResolventSystem sys;
  sys.quartic = q;
  sys.normalized = q.lead() < 0 ? Rat(-1) * q : q;
  const RatPoly& n = sys.normalized;
  sys.k4 = n[4];
  sys.k2 = n[2];
  sys.k1 = n[1];
  sys.k0 = n[0];
  squarefree_split(sys.k4, sys.s, sys.D);
  if (sys.D == 1) throw invalid_input(kShape);

  std::ostringstream norm;
  norm << "sqrt(" << to_string(sys.k4) << ") = ";
  if (sys.s != 1) norm << to_string(sys.s) << "*";
  norm << "sqrt(" << to_string(sys.D) << ")";
  sys.normalization = norm.str();
  const std::string root = "sqrt(" + to_string(sys.k4) + ")";
  sys.equations = {"2*" + root + "*c - d^2 = " + to_string(sys.k2), "-2*d*e = " + to_string(sys.k1),
                   "c^2 - e^2 = " + to_string(sys.k0)};

  // d^2 = 2 sqrt(k4) c - k2, e^2 = c^2 - k0, d^2 e^2 = k1^2 / 4; divided by
  // 2 sqrt(k4) = 2 s sqrt(D) and using 1/sqrt(D) = sqrt(D)/D.
  const Rat two_sD = 2 * sys.s * Rat(sys.D);
  const Int& D = sys.D;
  QFVec cubic{QuadFieldElem(D, 0, (sys.k0 * sys.k2 - sys.k1 * sys.k1 / 4) / two_sD), QuadFieldElem(D, -sys.k0),
              QuadFieldElem(D, 0, -sys.k2 / two_sD), QuadFieldElem(D, 1)};
  sys.cubic = QFPoly(D, cubic);
  sys.shift = cubic[2] / QuadFieldElem(D, 3);
  // w = c + shift, so depressed(w) = cubic(w - shift)
  sys.depressed = QFPoly(D, qf_shift(cubic, sys.shift, D));
  const auto& dc = sys.depressed.coeffs();
  if (dc.size() != 4 || !dc[2].is_zero() || !dc[1].is_rational() || dc[0].lam() != 0)
    throw degenerate("depressed cubic lost its w^3 + P w + R sqrt D shape");
  sys.P = dc[1].lam();
  sys.R = dc[0].nu();
  return sys;
}

// ---------------------------------------------------------------------------
// Standard route

StandardRoute standard_route(const RatPoly& q) {
  if (q.degree() != 4) throw invalid_input("quartic constructibility needs degree 4, got " + std::to_string(q.degree()));
  StandardRoute st;
  st.quartic = q;
  st.monic = (Rat(1) / q.lead()) * q;
  const Rat b = st.monic[3], c = st.monic[2], d = st.monic[1], e = st.monic[0];
  st.resolvent = RatPoly({-(b * b * e - 4 * c * e + d * d), b * d - 4 * e, -c, 1}).primitive();
  st.resolvent_test = rational_root_test(st.resolvent);
  st.root_test = rational_root_test(q);

  RatPoly rest = st.monic;
  for (const auto& r : st.root_test.roots) {
    const RatPoly lin({-r, 1});
    RatPoly quo, rem;
    rest.divmod(lin, quo, rem);
    while (rem.is_zero()) {
      st.factors.push_back(lin);
      rest = quo;
      rest.divmod(lin, quo, rem);
    }
  }
  if (rest.degree() >= 1 && rest.degree() <= 2) st.factors.push_back(rest);

  if (rest.degree() <= 2) {
    st.verdict = Verdict::Planar;
    return st;
  }
  if (rest.degree() == 3) {
    // no rational root left, so the cubic is irreducible over Q
    st.factors.push_back(rest);
    st.verdict = Verdict::ReduciblePlanar;
    return st;
  }
  // Degree 4 without rational roots: a split into rational quadratics
  // (t^2 + p t + q)(t^2 + r t + s) has q + s a rational resolvent root with
  // qs = e, p + r = b, pr = c - z and ps + qr = d.
  for (const auto& z : st.resolvent_test.roots) {
    Rat s1, s2;
    if (!rational_sqrt(z * z - 4 * e, s1) || !rational_sqrt(b * b - 4 * (c - z), s2)) continue;
    const Rat qv = (z + s1) / 2, sv = (z - s1) / 2;
    for (int sign : {1, -1}) {
      const Rat pv = (b + sign * s2) / 2, rv = (b - sign * s2) / 2;
      if (pv * sv + qv * rv != d) continue;
      RatPoly f1({qv, pv, 1}), f2({sv, rv, 1});
      if (!(f1 * f2 == st.monic)) continue;
      st.split = QuadraticSplit{f1, f2, z};
      st.factors = {f1, f2};
      st.verdict = Verdict::Planar;
      return st;
    }
  }
  st.irreducible = true;
  st.factors = {st.monic};
  // Galois group inside D4 iff the resolvent has a rational root.
  st.verdict = st.resolvent_test.roots.empty() ? Verdict::Solid : Verdict::Planar;
  return st;
}

ConstructibilityReport quartic_constructibility(const RatPoly& q) {
  ConstructibilityReport rep;
  rep.quartic = q;
  rep.standard = standard_route(q);
  rep.methods.push_back("standard-resolvent");
  rep.verdict = rep.standard->verdict;

  if (q[3] == 0) {
    try {
      FieldRoute fr;
      fr.system = resolvent_system(q);
      fr.search = qf_root_search(fr.system.depressed);
      fr.verdict = fr.search.found() ? Verdict::Planar : Verdict::Solid;
      rep.field = std::move(fr);
      rep.methods.push_back("field-resolvent");
    } catch (const Error& e) {
      rep.notes.push_back(std::string("field route skipped: ") + e.what());
    }
  }
  if (rep.field) {
    const bool resolvent_root = !rep.standard->resolvent_test.roots.empty();
    rep.routes_agree = rep.field->search.found() == resolvent_root;
    if (!rep.routes_agree)
      rep.notes.push_back("field route and standard resolvent disagree on the existence of a constructible c");
    if (!rep.field->search.branches_agree)
      rep.notes.push_back("branch analysis and resultant search found different roots");
    if (rep.field->search.printed && !rep.field->search.printed->lam_zero_matches)
      rep.notes.push_back(rep.field->search.printed->note);
    if (rep.standard->verdict == Verdict::ReduciblePlanar && !rep.field->search.found())
      rep.notes.push_back("no c in the quadratic field: the quartic has a rational root but no quadratic split");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Exact instances

namespace {

RatPoly instance_quartic(const Rat& a, const Rat& b, const Rat& x, const Rat& y, const Rat& alpha,
                         const Rat& gamma) {
  // (alpha Y^2 - 2ab y' Y - gamma)^2 - 4b x'^2 y'^2 (a+b)(b - Y^2) Y^2
  const RatPoly inner({-gamma, -2 * a * b * y, alpha});
  const Rat k = 4 * b * x * x * y * y * (a + b);
  const RatPoly tail({0, 0, k * b, 0, -k});
  return inner * inner - tail;
}

}  // namespace

Rat alpha_zero_zsq(const Rat& a, const Rat& b, const Rat& x, const Rat& y) {
  if (a == 0) throw invalid_input("a must be nonzero");
  return -(a * b - b * x * x + (a + b) * y * y) / a;
}

ExactInstance exact_instance(const Rat& a, const Rat& b, const Rat& x, const Rat& y, const Rat& zsq) {
  if (a <= 0 || b <= 0) throw invalid_input("a and b must be positive");
  if (zsq < 0) throw invalid_input("z'^2 must be nonnegative");
  ExactInstance in{a, b, x, y, zsq, 0, {}, {}};
  in.alpha = a * b - b * x * x + (a + b) * y * y + a * zsq;
  in.geometric = instance_quartic(a, b, x, y, in.alpha, b * b * y * y);
  if (!in.geometric.is_zero()) in.geometric = in.geometric.primitive();
  in.printed = instance_quartic(a, b, x, y, in.alpha, y * y * b);
  if (!in.printed.is_zero()) in.printed = in.printed.primitive();
  return in;
}

InstanceReport instance_constructibility(const Rat& a, const Rat& b, const Rat& x, const Rat& y, const Rat& zsq) {
  InstanceReport out;
  out.instance = exact_instance(a, b, x, y, zsq);
  const ExactInstance& in = out.instance;
  ConstructibilityReport& rep = out.report;

  if (y == 0) {
    // O in the plane of the focal hyperbola: the edges run to its foci
    // (+-sqrt(a+b), 0, 0), square roots of rationals.
    out.branch = "y'=0";
    const Rat alpha0 = a * b - b * x * x + a * zsq;
    out.on_focal_hyperbola = alpha0 == 0;
    rep.verdict = Verdict::Planar;
    rep.methods.push_back("closed-form");
    rep.notes.push_back("y' = 0: common edges through the foci (+-sqrt(a+b), 0, 0); alpha0 = " + to_string(alpha0) +
                        (alpha0 == 0 ? ", O lies on the focal hyperbola" : ", O is off the focal hyperbola"));
    return out;
  }

  if (x == 0) {
    // The quartic collapses to the square of alpha Y^2 - 2ab y' Y - b^2 y'^2.
    out.branch = "x'=0";
    rep.verdict = Verdict::Planar;
    rep.methods.push_back("closed-form");
    const Rat gamma = b * b * y * y;
    auto push = [&](const QuadFieldElem& r) {
      out.closed_form_roots.push_back(r);
      out.rejected.push_back(r.is_rational() && r.lam() == y);
    };
    if (in.alpha == 0) {
      push(QuadFieldElem(Int(2), -gamma / (2 * a * b * y)));
      rep.quartic = RatPoly({-gamma, -2 * a * b * y});
      rep.notes.push_back("x' = 0 and alpha = 0: the equation is linear");
    } else {
      rep.quartic = RatPoly({-gamma, -2 * a * b * y, in.alpha});
      // Y = (ab y' +- b y' sqrt(a^2 + alpha)) / alpha
      const Rat disc = a * a + in.alpha;
      const Rat base = a * b * y / in.alpha, scale = b * y / in.alpha;
      if (disc < 0) {
        rep.notes.push_back("x' = 0: no real roots (a^2 + alpha < 0)");
      } else if (disc == 0) {
        push(QuadFieldElem(Int(2), base));
      } else {
        Rat sq;
        Int f;
        squarefree_split(disc, sq, f);
        for (int sign : {1, -1}) {
          if (f == 1) push(QuadFieldElem(Int(2), base + sign * scale * sq));
          else push(QuadFieldElem(f, base, sign * scale * sq));
        }
      }
      rep.notes.push_back("x' = 0: degree drops to the quadratic " + to_string(rep.quartic, "y"));
    }
    for (std::size_t i = 0; i < out.rejected.size(); ++i)
      if (out.rejected[i])
        rep.notes.push_back("root y = " + to_string(out.closed_form_roots[i]) +
                            " rejected: it equals y', the projection ray is parallel to the image plane");
    return out;
  }

  if (in.alpha == 0) {
    out.branch = "alpha=0";
    rep = quartic_constructibility(in.printed);
    if (!(in.printed == in.geometric)) {
      out.geometric = quartic_constructibility(in.geometric);
      rep.notes.push_back("reduced quartic uses the constant y'^2 b; the geometric constant b^2 y'^2 gives " +
                          to_string(in.geometric, "y") + " with verdict " + to_string(out.geometric->verdict));
      if (out.geometric->verdict != rep.verdict) {
        rep.routes_agree = false;
        rep.notes.push_back("reduced and geometric quartics disagree on the verdict");
      }
    }
    return out;
  }

  out.branch = "general";
  rep = quartic_constructibility(in.geometric);
  return out;
}

}  // namespace quadax
