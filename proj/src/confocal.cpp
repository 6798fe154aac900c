#include "quadax/confocal.hpp"

#include <algorithm>
#include <cmath>

#include "quadax/error.hpp"

namespace quadax {

namespace {

// g(lambda) = sum p_i^2 / (a_i^2 - lambda) - 1 has the same roots as f of the
// polynomial form and increases from -inf to +inf between consecutive poles.
//
// A root close to a pole a_k^2 makes a_k^2 - lambda tiny, and forming it by
// subtraction would lose the digits the coordinate recovery divides by. The
// root is therefore carried as an offset from its nearer pole,
// lambda = a_k^2 - sign * t, and every table entry is formed as
// (a_i^2 - a_k^2) + sign * t with the pole gaps taken as (a_i - a_k)(a_i + a_k).
struct PoleOffset {
  std::size_t pole = 0;
  double sign = 1.0;  // +1: lambda below the pole, -1: above
  double t = 0.0;
};

double pole_gap(const Ellipsoid& ell, std::size_t i, std::size_t k) {
  return (ell.axis(i) - ell.axis(k)) * (ell.axis(i) + ell.axis(k));
}

double g_offset(const Ellipsoid& ell, const Vec& p, std::size_t k, double sign, double t) {
  double s = -1.0;
  for (std::size_t i = 0; i < ell.dim(); ++i) s += p[i] * p[i] / (pole_gap(ell, i, k) + sign * t);
  return s;
}

// g increases in lambda, i.e. decreases in t for sign = +1 and increases for
// sign = -1. The root lies in (0, width).
double bisect_offset(const Ellipsoid& ell, const Vec& p, std::size_t k, double sign, double width) {
  double lo = 0.0, hi = width;
  for (int it = 0; it < 4000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g = g_offset(ell, p, k, sign, mid);
    if (g == 0.0) return mid;
    if ((g > 0.0) == (sign > 0.0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Root between the poles a_upper^2 > a_lower^2 (lower = npos for the
// unbounded interval below a_n^2).
PoleOffset root_between(const Ellipsoid& ell, const Vec& p, std::size_t upper, std::size_t lower) {
  if (lower == static_cast<std::size_t>(-1)) {
    double width = std::max(1.0, ell.axis_sq(upper));
    while (g_offset(ell, p, upper, 1.0, width) >= 0.0) width *= 2.0;
    return {upper, 1.0, bisect_offset(ell, p, upper, 1.0, width)};
  }
  const double gap = pole_gap(ell, upper, lower);
  const double half = 0.5 * gap;
  // g at the midpoint decides which pole is nearer to the root
  if (g_offset(ell, p, upper, 1.0, half) > 0.0) return {lower, -1.0, bisect_offset(ell, p, lower, -1.0, half)};
  return {upper, 1.0, bisect_offset(ell, p, upper, 1.0, half)};
}

}  // namespace

Vec ConfocalTriple::normal(std::size_t j) const {
  Vec n(dim());
  for (std::size_t i = 0; i < dim(); ++i) n[i] = point[i] / table(i, j);
  return normalized(n);
}

bool ConfocalTriple::interlaced() const {
  const std::size_t n = dim();
  for (std::size_t j = 0; j < n; ++j) {
    const double upper = base.axis_sq(n - 1 - j);
    if (!(lambdas[j] < upper)) return false;
    if (j > 0 && !(lambdas[j] > base.axis_sq(n - j))) return false;
    if (j > 0 && !(table(0, j) < table(0, j - 1))) return false;
  }
  return true;
}

ConfocalTriple lambda_roots(const Ellipsoid& ell, const Vec& p) {
  const std::size_t n = ell.dim();
  if (p.size() != n) throw invalid_input("point dimension does not match ellipsoid");
  if (!p.all_finite()) throw invalid_input("non-finite point");
  if (!ell.strict()) throw invalid_input("non-strict ellipsoid");
  const double pn = norm(p);
  for (std::size_t i = 0; i < n; ++i)
    if (pn == 0.0 || std::abs(p[i]) <= 1e-12 * pn) throw invalid_input("point on coordinate hyperplane");

  std::vector<double> lambdas(n);
  Mat table(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    // lambda^1 in (-inf, a_n^2), lambda^j in (a_{n-j+2}^2, a_{n-j+1}^2)
    const std::size_t upper = n - 1 - j;
    const std::size_t lower = j == 0 ? static_cast<std::size_t>(-1) : n - j;
    const PoleOffset r = root_between(ell, p, upper, lower);
    lambdas[j] = ell.axis_sq(r.pole) - r.sign * r.t;
    for (std::size_t i = 0; i < n; ++i) table(i, j) = i == r.pole ? r.sign * r.t : pole_gap(ell, i, r.pole) + r.sign * r.t;
  }
  return ConfocalTriple{ell, p, std::move(lambdas), std::move(table)};
}

RecoveredCoordinates recover_coordinates(const ConfocalTriple& t) {
  const std::size_t n = t.dim();
  RecoveredCoordinates out;
  for (std::size_t i = 0; i < n; ++i) {
    double num = 1.0, den = 1.0;
    for (std::size_t j = 0; j < n; ++j) num *= t.sq(i, j);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) den *= t.sq(i, i) - t.sq(j, i);
    if (den == 0.0) throw degenerate("degenerate confocal configuration");
    out.squares.push_back(num / den);
    out.abs.push_back(std::sqrt(std::max(0.0, num / den)));
  }
  return out;
}

IdentityCheck norm_square_identity(const ConfocalTriple& t) {
  IdentityCheck c;
  c.lhs = norm2(t.point);
  for (std::size_t j = 0; j < t.dim(); ++j) c.rhs += t.sq(j, j);
  return c;
}

double orthogonality_residual(const ConfocalTriple& t, std::size_t j, std::size_t k) {
  if (j == k) throw invalid_input("orthogonality residual needs two distinct confocals");
  double s = 0.0, nj = 0.0, nk = 0.0;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    const double p2 = t.point[i] * t.point[i];
    s += p2 / (t.sq(i, j) * t.sq(i, k));
    nj += p2 / (t.sq(i, j) * t.sq(i, j));
    nk += p2 / (t.sq(i, k) * t.sq(i, k));
  }
  const double factor = t.sq(0, k) - t.sq(0, j);
  return factor * s / (std::abs(factor) * std::sqrt(nj * nk));
}

Vec pole(const Vec& h, const Ellipsoid& ell) {
  if (h.size() != ell.dim()) throw invalid_input("hyperplane dimension does not match ellipsoid");
  if (norm(h) == 0.0) throw invalid_input("hyperplane coefficients must not all vanish");
  Vec xi(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) xi[i] = h[i] * ell.axis_sq(i);
  return xi;
}

std::vector<SupportDistance> support_distances(const ConfocalTriple& t) {
  const std::size_t n = t.dim();
  std::vector<SupportDistance> out;
  for (std::size_t j = 0; j < n; ++j) {
    double num = 1.0, den = 1.0, inv = 0.0;
    for (std::size_t i = 0; i < n; ++i) num *= t.sq(i, j);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) den *= t.sq(0, j) - t.sq(0, k);
    for (std::size_t i = 0; i < n; ++i) inv += t.point[i] * t.point[i] / (t.sq(i, j) * t.sq(i, j));
    out.push_back({num / den, 1.0 / inv});
  }
  return out;
}

DualSystem dual_system(const ConfocalTriple& t) {
  const std::size_t n = t.dim();
  DualSystem d;
  d.center = t.point;
  d.origin_coords = Vec(n);
  for (std::size_t j = 0; j < n; ++j) {
    d.frame.push_back(t.normal(j));
    d.origin_coords[j] = -dot(t.point, d.frame.back());
  }
  d.squared_axes.assign(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double s = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      d.squared_axes[i][j] = t.sq(i, j);
      s += d.origin_coords[j] * d.origin_coords[j] / t.sq(i, j);
    }
    d.origin_residuals.push_back(s);
  }
  return d;
}

Vec SignedConic::plane_normal() const { return normalized(cross(frame[0], frame[1])); }

Vec SignedConic::point_at(double t, int branch) const {
  const double s0 = sq[0], s1 = sq[1];
  if (s0 > 0.0 && s1 > 0.0) return origin + frame[0] * (std::sqrt(s0) * std::cos(t)) + frame[1] * (std::sqrt(s1) * std::sin(t));
  const double sign = branch >= 0 ? 1.0 : -1.0;
  if (s0 > 0.0 && s1 < 0.0)
    return origin + frame[0] * (sign * std::sqrt(s0) * std::cosh(t)) + frame[1] * (std::sqrt(-s1) * std::sinh(t));
  if (s0 < 0.0 && s1 > 0.0)
    return origin + frame[0] * (std::sqrt(-s0) * std::sinh(t)) + frame[1] * (sign * std::sqrt(s1) * std::cosh(t));
  throw degenerate("conic has no real points");
}

double SignedConic::residual(const Vec& x) const {
  const Vec d = x - origin;
  const double u = dot(d, frame[0]), v = dot(d, frame[1]);
  return u * u / sq[0] + v * v / sq[1] - 1.0;
}

FocalQuadric focal_quadric(const Ellipsoid& ell, std::size_t k) {
  const std::size_t n = ell.dim();
  if (k < 1 || k > n) throw invalid_input("focal quadric index out of range");
  if (!ell.strict()) throw invalid_input("non-strict ellipsoid");
  FocalQuadric f;
  f.k = k;
  const double ak2 = ell.axis_sq(k - 1);
  f.imaginary = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k - 1) continue;
    f.signed_sq.push_back(ell.axis_sq(i) - ak2);
    if (f.signed_sq.back() > 0.0) f.imaginary = false;
  }
  if (n == 3) {
    std::array<Vec, 2> frame;
    std::size_t m = 0;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != k - 1) frame[m++] = Vec::unit(3, i);
    f.conic = SignedConic{Vec(3), frame, {f.signed_sq[0], f.signed_sq[1]}};
  }
  return f;
}

CentralSection central_section_radii(const Ellipsoid& ell, const Vec& x) {
  if (std::abs(ell.residual(x)) > 1e-9) throw invalid_input("point is not on the ellipsoid");
  const ConfocalTriple t = lambda_roots(ell, x);
  CentralSection s;
  for (std::size_t j = 1; j < t.dim(); ++j) {
    s.radii_sq.push_back(t.sq(0, 0) - t.sq(0, j));
    s.directions.push_back(t.normal(j));
  }
  return s;
}

ConeQuadric focal_cone(const Vec& apex, const SignedConic& c) {
  if (apex.size() != 3) throw invalid_input("focal cones are three-dimensional");
  const Vec e3 = c.plane_normal();
  const Vec d = apex - c.origin;
  const double h = dot(d, e3);
  if (std::abs(h) <= 1e-12 * std::max(1.0, norm(d))) throw degenerate("degenerate cone");
  const double xi0 = dot(d, c.frame[0]), eta0 = dot(d, c.frame[1]);
  // The ray apex + t u meets the plane where t = -h / (u . e3); clearing the
  // denominator (u . e3)^2 leaves a quadratic form in u.
  const Vec l1 = e3 * xi0 - c.frame[0] * h;
  const Vec l2 = e3 * eta0 - c.frame[1] * h;
  const Mat k = outer(l1, l1) * (1.0 / c.sq[0]) + outer(l2, l2) * (1.0 / c.sq[1]) - outer(e3, e3);
  // rescale so that the form does not carry the h^2 magnitude of l1, l2
  return ConeQuadric{apex, SymMat::from(k * (1.0 / (h * h)))};
}

ConeAxesReport shared_axes(const SymMat& ke, const SymMat& kh) {
  ConeAxesReport r;
  const Mat e = ke.dense(), h = kh.dense();
  const Mat we = e * (1.0 / frobenius(e)), wh = h * (1.0 / frobenius(h));
  r.commutator_residual = frobenius(we * wh - wh * we);
  // A generic combination separates eigenvalues that either form repeats.
  const double mix = 0.6180339887498949;
  const SymEigen eig = sym_eigen(SymMat::from(we + wh * mix));
  const double spread = std::abs(eig.values[0]) + std::abs(eig.values[2]);
  for (std::size_t k = 0; k + 1 < 3; ++k)
    if (eig.values[k] - eig.values[k + 1] <= 1e-9 * spread) r.repeated_eigenvalues = true;
  const SymMat swe = SymMat::from(we), swh = SymMat::from(wh);
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec l = eig.vectors.col(k);
    r.frame.push_back(l);
    r.ellipse_eigs.push_back(swe.quad(l));
    r.hyperbola_eigs.push_back(swh.quad(l));
  }
  return r;
}

ConeAxesReport cone_axes_check(const Vec& apex, const Ellipsoid& ell) {
  if (ell.dim() != 3) throw invalid_input("focal cones are three-dimensional");
  if (apex.size() != 3 || !apex.all_finite()) throw invalid_input("apex must be a finite 3-vector");
  const double an = norm(apex);
  if (an == 0.0) throw invalid_input("apex at the centre: both focal conic planes pass through it");
  const FocalQuadric fe = focal_quadric(ell, 3), fh = focal_quadric(ell, 2);
  const auto flagged = [](std::string why) {
    ConeAxesReport r;
    r.degenerate = true;
    r.reason = std::move(why);
    return r;
  };
  if (std::abs(apex[2]) <= 1e-12 * an) return flagged("apex in the focal ellipse plane");
  if (std::abs(apex[1]) <= 1e-12 * an) return flagged("apex in the focal hyperbola plane");
  const ConeQuadric ce = focal_cone(apex, *fe.conic);
  const ConeQuadric ch = focal_cone(apex, *fh.conic);
  return shared_axes(ce.form, ch.form);
}

std::vector<ConeEdge> cone_common_edges(const Vec& apex, const SignedConic& ellipse, const SymMat& other) {
  if (ellipse.sq[0] <= 0.0 || ellipse.sq[1] <= 0.0) throw invalid_input("cone_common_edges expects an ellipse");
  const Vec c = ellipse.origin - apex;
  const Vec f0 = ellipse.frame[0] * std::sqrt(ellipse.sq[0]);
  const Vec f1 = ellipse.frame[1] * std::sqrt(ellipse.sq[1]);
  const double kn = frobenius(other.dense());
  if (kn == 0.0) throw degenerate("degenerate cone");
  // u(th) = c + f0 cos th + f1 sin th;  g(th) = u^T K u
  const double kcc = other.quad(c), k00 = other.quad(f0), k11 = other.quad(f1);
  const double k01 = other.bilinear(f0, f1), kc0 = other.bilinear(c, f0), kc1 = other.bilinear(c, f1);
  const auto g = [&](double th) {
    const double co = std::cos(th), si = std::sin(th);
    return kcc + k00 * co * co + k11 * si * si + 2.0 * k01 * co * si + 2.0 * kc0 * co + 2.0 * kc1 * si;
  };
  const auto dg = [&](double th) {
    const double co = std::cos(th), si = std::sin(th);
    return 2.0 * (k11 - k00) * co * si + 2.0 * k01 * (co * co - si * si) - 2.0 * kc0 * si + 2.0 * kc1 * co;
  };
  const auto unit_u = [&](double th) { return normalized(c + f0 * std::cos(th) + f1 * std::sin(th)); };

  // Shift the angle origin so that the point at t = inf is far from a root.
  double shift = 0.0, best = -1.0;
  for (int k = 0; k < 12; ++k) {
    const double th = 0.5235987755982988 * k;
    const double v = std::abs(g(th + 3.141592653589793)) / kn;
    if (v > best) best = v, shift = th;
  }
  // With th = shift + 2 atan t and cos, sin of (shift + phi) expanded, the
  // product g * (1 + t^2)^2 is a quartic in t; sample-and-solve keeps the
  // expansion honest: interpolate the quartic through five exact values.
  std::vector<double> ts{-2.0, -1.0, 0.0, 1.0, 2.0}, vs;
  for (double t : ts) vs.push_back(g(shift + 2.0 * std::atan(t)) * (1.0 + t * t) * (1.0 + t * t));
  // Newton divided differences into monomial coefficients.
  std::vector<double> dd = vs;
  for (std::size_t k = 1; k < 5; ++k)
    for (std::size_t i = 4; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (ts[i] - ts[i - k]);
  std::vector<double> coeffs(5, 0.0), basis{1.0};
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t i = 0; i < basis.size(); ++i) coeffs[i] += dd[k] * basis[i];
    std::vector<double> next(basis.size() + 1, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      next[i + 1] += basis[i];
      next[i] -= ts[k] * basis[i];
    }
    basis = std::move(next);
  }
  const double cmax = std::max({std::abs(coeffs[0]), std::abs(coeffs[1]), std::abs(coeffs[2]), std::abs(coeffs[3]),
                                std::abs(coeffs[4])});
  for (double& x : coeffs)
    if (std::abs(x) <= 1e-15 * cmax) x = 0.0;

  std::vector<ConeEdge> out;
  const RealPoly quartic(coeffs);
  if (quartic.degree() < 1) return out;
  for (const RealRoot& r : real_roots(quartic)) {
    double th = shift + 2.0 * std::atan(r.value);
    for (int it = 0; it < 8; ++it) {
      const double d = dg(th);
      if (d == 0.0) break;
      const double step = g(th) / d;
      if (!std::isfinite(step) || std::abs(step) > 0.1) break;
      th -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(th))) break;
    }
    const Vec u = unit_u(th);
    out.push_back({u, th, std::abs(other.quad(u)) / kn, r.multiple});
  }
  return out;
}

std::vector<ConeEdge> focal_cone_edges(const Vec& apex, const Ellipsoid& ell) {
  if (ell.dim() != 3) throw invalid_input("focal cones are three-dimensional");
  const FocalQuadric fe = focal_quadric(ell, 3), fh = focal_quadric(ell, 2);
  const ConeQuadric ch = focal_cone(apex, *fh.conic);
  return cone_common_edges(apex, *fe.conic, ch.form);
}

double intercept_length(const Vec& x, const Vec& edge_dir, const Vec& n) {
  const double un = dot(edge_dir, n);
  if (un == 0.0) throw degenerate("edge parallel to the cutting hyperplane");
  return std::abs(dot(x, n) / un) * norm(edge_dir);
}

}  // namespace quadax
