#include "quadax/rytz.hpp"

#include <cmath>

#include "quadax/error.hpp"

namespace quadax {

std::string to_string(RytzBranch b) {
  switch (b) {
    case RytzBranch::General: return "general";
    case RytzBranch::Principal: return "principal";
    case RytzBranch::Circle: return "circle";
  }
  return "unknown";
}

RytzTrace rytz_axes(const Vec& P, const Vec& Q) {
  if (P.size() != 2 || Q.size() != 2) throw invalid_input("rytz_axes expects 2-vectors");
  if (!P.all_finite() || !Q.all_finite()) throw invalid_input("non-finite conjugate pair");
  const double np = norm(P), nq = norm(Q);
  const double orient = cross2(P, Q);
  if (np == 0.0 || nq == 0.0 || std::abs(orient) <= 1e-12 * np * nq) throw degenerate("degenerate conjugate pair");

  RytzTrace t;
  t.P = P;
  t.Q = Q;
  // |PM| = |PL| = |OQ| on the normal at P; M is the point with |OM| = a - b.
  const Vec qrot = orient > 0.0 ? perp(Q) : -perp(Q);
  t.M = P + qrot;
  t.L = P - qrot;

  const double om = norm(t.M), ol = norm(t.L);
  const double major = 0.5 * (ol + om);
  // |OL| - |OM| cancels badly for thin ellipses; the area ab = |P x Q| does not
  const double minor = std::abs(orient) / major;
  t.axis_lengths = {major, minor};

  if (om <= 1e-12 * ol) {
    t.branch = RytzBranch::Circle;
    t.axis_dirs = {P / np, perp(P / np)};
    t.T = Q / nq * minor;
    t.Pprime = P / np * major;
    t.major_segment = "OP'";
    return t;
  }

  const Vec m = t.M / om, l = t.L / ol;
  const Vec inner = m + l, outer = m - l;
  // The internal bisector of angle LOM is the major axis: M and L are mirror
  // images of each other in it.
  const Vec major_dir = norm(inner) >= norm(outer) ? normalized(inner) : perp(normalized(outer));
  const Vec minor_dir = perp(major_dir);
  t.axis_dirs = {major_dir, minor_dir};

  if (std::abs(dot(P, Q)) <= 1e-12 * np * nq) {
    // Both parallels through P coincide with line OM.
    t.branch = RytzBranch::Principal;
    t.T = m * minor;
    t.Pprime = m * major;
    t.major_segment = "OP'";
    return t;
  }

  // P + s d = mu m  =>  mu = (P x d) / (m x d)
  const auto cut = [&](const Vec& d) { return m * (cross2(P, d) / cross2(m, d)); };
  t.T = cut(major_dir);
  t.Pprime = cut(minor_dir);
  t.major_segment = norm(t.T) > norm(t.Pprime) ? "OT" : "OP'";
  return t;
}

SectionPair section_ellipse(const ConjugateSystem& sys, std::size_t j, std::size_t k) {
  if (sys.dim() != 3) throw invalid_input("section_ellipse expects a 3D system");
  if (j >= 3 || k >= 3 || j == k) throw invalid_input("section_ellipse needs two distinct diameter indices");
  const Vec& xj = sys.diameter(j);
  const Vec& xk = sys.diameter(k);
  SectionPair s;
  const Vec e1 = normalized(xj);
  const Vec e2 = normalized(xk - e1 * dot(e1, xk));
  s.basis = {e1, e2};
  s.p2 = Vec{dot(xj, e1), dot(xj, e2)};
  s.q2 = Vec{dot(xk, e1), dot(xk, e2)};
  return s;
}

}  // namespace quadax
