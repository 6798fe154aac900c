#include "quadax/chasles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "quadax/error.hpp"

namespace quadax {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this (relative to |P|) an apex coordinate is treated as zero and
// the in-plane branch is taken.
constexpr double kZeroApex = 1e-12;
// Edge lines closer than this (radians) mean P is near a principal plane;
// the intercepts then lose digits, so the next role is tried.
constexpr double kGoodSeparation = 0.05;

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

// (alpha y^2 - 2aby' y - gamma)^2 - 4 b x'^2 y'^2 (a+b)(b - y^2) y^2
std::vector<double> expand_quartic(double alpha, double a, double b, double x, double y, double gamma) {
  const double p = 2.0 * a * b * y;  // linear coefficient of the reduced quadratic
  const double w = 4.0 * b * x * x * y * y * (a + b);
  return {
      gamma * gamma,
      2.0 * p * gamma,
      p * p - 2.0 * alpha * gamma - w * b,
      -2.0 * alpha * p,
      alpha * alpha + w,
  };
}

SymMat whiten(const SymMat& k) {
  const double f = frobenius(k.dense());
  if (f == 0.0) throw degenerate("degenerate cone");
  return SymMat::from(k.dense() * (1.0 / f));
}

// Keeps a degeneracy from one construction step distinguishable in the
// error message.
template <class F>
auto step(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StepError&) {
    throw;
  } catch (const Error& e) {
    throw StepError(name, e);
  }
}

}  // namespace

// ---------------------------------------------------------------- frame

double ChaslesFrame::orthogonality_residual() const {
  const auto fr = frame();
  return max_abs({dot(fr[0], fr[1]), dot(fr[0], fr[2]), dot(fr[1], fr[2])});
}

Vec ChaslesFrame::apex_local() const {
  const auto fr = frame();
  return Vec{-dot(P, fr[0]), -dot(P, fr[1]), -dot(P, fr[2])};
}

Vec ChaslesFrame::to_world(const Vec& l) const {
  const auto fr = frame();
  return P + fr[0] * l[0] + fr[1] * l[1] + fr[2] * l[2];
}

Vec ChaslesFrame::to_local(const Vec& w) const {
  const auto fr = frame();
  const Vec d = w - P;
  return Vec{dot(d, fr[0]), dot(d, fr[1]), dot(d, fr[2])};
}

ChaslesFrame build_frame(const ConjugateSystem& sys, std::size_t role) {
  if (sys.dim() != 3) throw invalid_input("the Chasles construction needs a 3D system");
  if (role > 2) throw invalid_input("role must be 0, 1 or 2");
  const std::size_t j = (role + 1) % 3, k = (role + 2) % 3;
  ChaslesFrame f;
  f.role = role;
  f.O = Vec(3);
  f.P = sys.diameter(role);
  f.Q = sys.diameter(j);
  f.R = sys.diameter(k);
  f.section = section_ellipse(sys, j, k);
  f.rytz = rytz_axes(f.section.p2, f.section.q2);

  Vec n1 = normalized(cross(f.Q, f.R));
  Vec n2 = f.section.lift(f.rytz.axis_dirs[1]);
  Vec n3 = f.section.lift(f.rytz.axis_dirs[0]);
  // x' > 0, y' >= 0, z' >= 0 (the construction is symmetric in these planes)
  if (dot(f.P, n1) > 0.0) n1 *= -1.0;
  if (dot(f.P, n2) > 0.0) n2 *= -1.0;
  if (dot(f.P, n3) > 0.0) n3 *= -1.0;
  f.normal_at_P = n1;
  f.section_axes = {n2, n3};
  f.section_lengths = {f.rytz.axis_lengths[1], f.rytz.axis_lengths[0]};
  return f;
}

DualFocalConics dual_focal_conics(const ChaslesFrame& f) {
  const double rho2 = f.section_lengths[0], rho3 = f.section_lengths[1];
  // rho3^2 - rho2^2 = |OL| |OM| without cancellation
  const double b = f.rytz.branch == RytzBranch::Circle ? 0.0 : norm(f.rytz.L) * norm(f.rytz.M);
  if (!(b > 1e-12 * rho3 * rho3)) throw degenerate("rotationally symmetric section");
  DualFocalConics c;
  c.a = rho2 * rho2;
  c.b = b;
  const auto fr = f.frame();
  c.ellipse = SignedConic{f.P, {fr[0], fr[1]}, {c.a + c.b, c.b}};
  c.hyperbola = SignedConic{f.P, {fr[0], fr[2]}, {c.a, -c.b}};
  c.apex = f.apex_local();
  return c;
}

// ---------------------------------------------------------------- projection

double PlaneConic::operator()(double X, double Z) const {
  return c[0] * X * X + c[1] * X * Z + c[2] * Z * Z + c[3] * X + c[4] * Z + c[5];
}

PlaneConic PlaneConic::normalized() const {
  double n = 0.0;
  std::size_t big = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    n += c[i] * c[i];
    if (std::abs(c[i]) > std::abs(c[big])) big = i;
  }
  n = std::sqrt(n);
  if (n == 0.0) throw degenerate("zero conic");
  PlaneConic out = *this;
  const double s = c[big] < 0.0 ? -1.0 / n : 1.0 / n;
  for (double& v : out.c) v *= s;
  return out;
}

std::string to_string(ConicKind k) {
  switch (k) {
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Parabola: return "parabola";
    case ConicKind::Hyperbola: return "hyperbola";
  }
  return "unknown";
}

namespace {

// One-sided Jacobi: rotates column pairs of D until they are orthogonal,
// accumulating the rotations in V; the column of V belonging to the shortest
// column of D is the smallest right singular vector.
template <class RowFn>
Vec smallest_right_singular(const std::vector<Point2>& pts, RowFn row) {
  const std::size_t m = pts.size();
  std::vector<std::array<double, 6>> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = row(pts[i]);
  Mat V = Mat::identity(6);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t k = j + 1; k < 6; ++k) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (const auto& r : d) alpha += r[j] * r[j], beta += r[k] * r[k], gamma += r[j] * r[k];
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), sn = c * t;
        for (auto& r : d) {
          const double x = r[j], y = r[k];
          r[j] = c * x - sn * y, r[k] = sn * x + c * y;
        }
        for (std::size_t i = 0; i < 6; ++i) {
          const double x = V(i, j), y = V(i, k);
          V(i, j) = c * x - sn * y, V(i, k) = sn * x + c * y;
        }
      }
    if (!rotated) break;
  }
  std::size_t best = 0;
  double best_norm = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < 6; ++j) {
    double n2 = 0.0;
    for (const auto& r : d) n2 += r[j] * r[j];
    if (n2 < best_norm) best_norm = n2, best = j;
  }
  return V.col(best);
}

}  // namespace

ProjectionTrace project_focal_ellipse(const DualFocalConics& cs) {
  const double a = cs.a, b = cs.b;
  const double xp = cs.apex[0], yp = cs.apex[1], zp = cs.apex[2];
  const double ra = std::sqrt(a + b), rb = std::sqrt(b);
  const double scale = ra + std::abs(xp) + std::abs(zp);
  if (std::abs(zp) <= kZeroApex * scale) throw degenerate("centre of projection in the focal ellipse plane");

  // (x, y, 0) -> O + t ((x, y, 0) - O) with y-coordinate 0
  const auto project = [&](double x, double y) -> std::optional<Point2> {
    if (std::abs(yp - y) <= 1e-12 * (rb + std::abs(yp))) return std::nullopt;
    const double t = yp / (yp - y);
    return Point2{xp + t * (x - xp), zp * (1.0 - t)};
  };
  const auto unproject = [&](const Point2& p) {
    const double d = zp - p[1];
    return Point2{(zp * p[0] - xp * p[1]) / d, -yp * p[1] / d};
  };

  ProjectionTrace tr;
  const int count = 48;
  for (int k = 0; k < count; ++k) {
    const double th = 2.0 * kPi * (k + 0.5) / count;
    const double y = rb * std::sin(th);
    if (std::abs(yp - y) < 0.02 * rb) continue;  // nearly parallel ray
    if (auto p = project(ra * std::cos(th), y); p && std::abs((*p)[0]) <= 50.0 * scale && std::abs((*p)[1]) <= 50.0 * scale)
      tr.samples.push_back(*p);
  }
  if (tr.samples.size() < 6) throw degenerate("too few finite projected points");

  // smallest right singular vector of the design matrix D in scaled
  // coordinates; one-sided Jacobi on D itself, since D^T D would square
  // its condition number
  const auto row = [&](const Point2& p) {
    const double X = p[0] / scale, Z = p[1] / scale;
    return std::array<double, 6>{X * X, X * Z, Z * Z, X, Z, 1.0};
  };
  const Vec v = smallest_right_singular(tr.samples, row);
  for (const Point2& p : tr.samples) {
    const auto r = row(p);
    double s = 0.0, rn = 0.0;
    for (std::size_t i = 0; i < 6; ++i) s += r[i] * v[i], rn += r[i] * r[i];
    tr.fit_residual = std::max(tr.fit_residual, std::abs(s) / std::sqrt(rn));
  }
  const double s2 = scale * scale;
  tr.fitted = PlaneConic{{v[0] / s2, v[1] / s2, v[2] / s2, v[3] / scale, v[4] / scale, v[5]}}.normalized();

  const double e = a + b;
  tr.closed_form =
      PlaneConic{{zp * zp / e, -2.0 * xp * zp / e, xp * xp / e + yp * yp / b - 1.0, 0.0, 2.0 * zp, -zp * zp}}.normalized();
  double dplus = 0.0, dminus = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    dplus += std::pow(tr.fitted.c[i] - tr.closed_form.c[i], 2);
    dminus += std::pow(tr.fitted.c[i] + tr.closed_form.c[i], 2);
  }
  tr.closed_form_distance = std::sqrt(std::min(dplus, dminus));

  // discriminant of the closed form is -4 z'^2 (y'^2/b - 1)/(a+b)
  const double gap = yp * yp - b;
  tr.kind = std::abs(gap) <= 1e-12 * b ? ConicKind::Parabola : (gap > 0.0 ? ConicKind::Ellipse : ConicKind::Hyperbola);

  tr.A = {ra, 0.0};
  tr.B = {-ra, 0.0};
  const double unit_scale = 1.0 / std::max(1.0, e);
  tr.fixed_line_residual = std::max(std::abs(tr.fitted(ra, 0.0)), std::abs(tr.fitted(-ra, 0.0))) * unit_scale;

  tr.Cbar = project(0.0, rb);
  tr.Dbar = project(0.0, -rb);
  if (tr.Cbar && tr.Dbar) {
    const Point2 k{0.5 * ((*tr.Cbar)[0] + (*tr.Dbar)[0]), 0.5 * ((*tr.Cbar)[1] + (*tr.Dbar)[1])};
    tr.image_center = k;
    // the diameter conjugate to CbarDbar runs parallel to m through k
    const auto& q = tr.closed_form.c;
    const double qa = q[0], qb = q[1] * k[1] + q[3], qc = q[2] * k[1] * k[1] + q[4] * k[1] + q[5];
    const double disc = qb * qb - 4.0 * qa * qc;
    if (qa != 0.0 && disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double r1 = (-qb + sq) / (2.0 * qa), r2 = (-qb - sq) / (2.0 * qa);
      tr.Ebar = Point2{std::max(r1, r2), k[1]};
      tr.Fbar = Point2{std::min(r1, r2), k[1]};
      tr.E = unproject(*tr.Ebar);
      tr.F = unproject(*tr.Fbar);
      if (tr.kind == ConicKind::Ellipse) {
        const Vec kc{(*tr.Cbar)[0] - k[0], (*tr.Cbar)[1] - k[1]};
        const Vec ke{(*tr.Ebar)[0] - k[0], (*tr.Ebar)[1] - k[1]};
        try {
          tr.image_axes = rytz_axes(kc, ke);
        } catch (const Error&) {
          // collinear pair: the image axes stay unannotated
        }
      }
    }
  }
  return tr;
}

// ---------------------------------------------------------------- quartic

QuarticInstance quartic_instance(double a, double b, double x, double y, double z) {
  for (double v : {a, b, x, y, z})
    if (!std::isfinite(v)) throw invalid_input("non-finite quartic parameter");
  if (!(a > 0.0) || !(b > 0.0)) throw invalid_input("a and b must be positive");
  if (y == 0.0) throw invalid_input("y' = 0: apex in the focal hyperbola plane, use the y' = 0 branch");

  QuarticInstance q;
  q.a = a, q.b = b, q.x = x, q.y = y, q.z = z;
  q.alpha = a * b - b * x * x + (a + b) * y * y + a * z * z;
  // L(t) = y'^2 (a+b)(b - t^2) + (b x'^2 - a z'^2) t^2 - ab (y' - t)^2 has
  // t^2-coefficient -alpha
  const auto L = [&](double t) { return y * y * (a + b) * (b - t * t) + (b * x * x - a * z * z) * t * t - a * b * (y - t) * (y - t); };
  q.alpha_from_system = -(L(1.0) + L(-1.0) - 2.0 * L(0.0)) / 2.0;
  q.beta_const = 2.0 * a * b * y;
  q.beta_x = 2.0 * b * x * y;
  q.gamma = b * b * y * y;
  q.printed_gamma = y * y * b;
  q.quartic = RealPoly(expand_quartic(q.alpha, a, b, x, y, q.gamma));
  auto printed = expand_quartic(q.alpha, a, b, x, y, q.printed_gamma);
  for (double& c : printed) c /= q.printed_gamma * q.printed_gamma;
  q.printed_quartic = RealPoly(printed);

  // direct evaluation of the squared first equation with x^2 from the ellipse
  const double rb = std::sqrt(b);
  for (int k = 0; k < 10; ++k) {
    const double t = rb * (-1.0 + 2.0 * (k + 0.37) / 10.0);
    const double x2 = (a + b) * (b - t * t) / b;
    const double inner = b * y * y * x2 + (b * x * x - a * z * z) * t * t - a * b * (y - t) * (y - t);
    const double g = inner * inner - 4.0 * b * b * x * x * y * y * x2 * t * t;
    const double mag = q.quartic.scale_at(t) + std::abs(inner) * (std::abs(b * y * y * x2) + std::abs(b * x * x - a * z * z) * t * t +
                                                               a * b * (y - t) * (y - t));
    q.validation_residual = std::max(q.validation_residual, std::abs(q.quartic(t) - g) / mag);
  }

  const auto unit = [](const RealPoly& p) {
    std::vector<double> c(5, 0.0);
    double m = 0.0;
    for (std::size_t i = 0; i < 5; ++i) c[i] = p[i], m = std::max(m, std::abs(c[i]));
    for (double& v : c) v /= m;
    return c;
  };
  const auto g1 = unit(q.quartic), g2 = unit(q.printed_quartic);
  q.printed_matches_geometry = true;
  for (std::size_t i = 0; i < 5; ++i)
    if (std::abs(g1[i] - g2[i]) > 1e-12) q.printed_matches_geometry = false;
  return q;
}

namespace {

struct PointResiduals {
  double projection, ellipse, reduced;
};

PointResiduals point_residuals(const QuarticInstance& q, double x, double y) {
  const double a = q.a, b = q.b, xp = q.x, yp = q.y, zp = q.z;
  const double u = yp * x - xp * y;
  const double first = b * u * u - a * zp * zp * y * y - a * b * (yp - y) * (yp - y);
  const double first_mag = b * (std::abs(yp * x) + std::abs(xp * y)) * (std::abs(yp * x) + std::abs(xp * y)) +
                           a * zp * zp * y * y + a * b * (std::abs(yp) + std::abs(y)) * (std::abs(yp) + std::abs(y));
  const double ell = x * x / (a + b) + y * y / b - 1.0;
  const double beta = 2.0 * yp * b * (a - xp * x);
  const double red = q.alpha * y * y - beta * y - q.gamma;
  const double red_mag = std::abs(q.alpha) * y * y + std::abs(beta * y) + std::abs(q.gamma);
  return {std::abs(first) / first_mag, std::abs(ell), std::abs(red) / red_mag};
}

}  // namespace

std::vector<IntersectionPoint> intersection_points(const QuarticInstance& q, double tol) {
  const double rb = std::sqrt(q.b), ra = std::sqrt(q.a + q.b);
  std::vector<IntersectionPoint> out;
  const double xscale = ra + std::abs(q.x) + std::abs(q.y) + std::abs(q.z);
  if (std::abs(q.x) <= kZeroApex * xscale) {
    // the quartic is a perfect square; use the closed form and both x signs
    const X0Roots r = special_case_x0(q.a, q.b, q.y, q.z);
    for (int k = 0; k < 2; ++k) {
      const double y = r.y[k];
      const double x2 = (q.a + q.b) * (q.b - y * y) / q.b;
      for (double sx : {1.0, -1.0}) {
        IntersectionPoint p;
        p.y = y;
        p.x = sx * std::sqrt(std::max(0.0, x2));
        const auto res = point_residuals(q, p.x, y);
        p.residual_projection = res.projection, p.residual_ellipse = res.ellipse, p.residual_reduced = res.reduced;
        p.accepted = !r.rejected[k] && res.projection <= tol && res.ellipse <= tol;
        p.note = r.rejected[k] ? r.note : "x' = 0 closed form";
        out.push_back(p);
      }
    }
    return out;
  }

  // roots in s = y / sqrt(b), so that [-1, 1] is the ellipse's range
  std::vector<double> c(5);
  double cmax = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    c[k] = q.quartic[k] * std::pow(rb, static_cast<double>(k));
    cmax = std::max(cmax, std::abs(c[k]));
  }
  for (double& v : c) v /= cmax;
  for (const RealRoot& r : real_roots(RealPoly(c))) {
    IntersectionPoint p;
    p.y = r.value * rb;
    p.multiple = r.multiple;
    p.x = -(q.alpha * p.y * p.y - q.beta_const * p.y - q.gamma) / (q.beta_x * p.y);
    const auto res = point_residuals(q, p.x, p.y);
    p.residual_projection = res.projection, p.residual_ellipse = res.ellipse, p.residual_reduced = res.reduced;
    if (std::abs(p.y - q.y) <= 1e-12 * (rb + std::abs(q.y))) {
      p.note = "y = y' rejected: ray parallel to the hyperbola plane";
    } else if (!(res.projection <= tol && res.ellipse <= tol)) {
      p.note = "extraneous root of the squared equation";
    } else {
      p.accepted = true;
    }
    out.push_back(p);
  }
  return out;
}

X0Roots special_case_x0(double a, double b, double y, double z) {
  if (!(a > 0.0) || !(b > 0.0)) throw invalid_input("a and b must be positive");
  if (y == 0.0) throw invalid_input("y' = 0: apex in the focal hyperbola plane, use the y' = 0 branch");
  X0Roots r;
  r.alpha = a * b + (a + b) * y * y + a * z * z;
  const double root = std::sqrt(a * a + r.alpha);
  // larger-magnitude root first from the formula, the other from the product
  // -gamma/alpha of the two roots to avoid cancellation
  const double y1 = y * b * (a + root) / r.alpha;
  const double y2 = -(b * b * y * y / r.alpha) / y1;
  r.y = {y1, y2};
  const double beta = 2.0 * a * b * y, gamma = b * b * y * y;
  for (int k = 0; k < 2; ++k) {
    const double t = r.y[k];
    r.residual[k] = std::abs(r.alpha * t * t - beta * t - gamma) / (std::abs(r.alpha) * t * t + std::abs(beta * t) + gamma);
    const bool parallel = std::abs(t - y) <= 1e-12 * (std::abs(y) + std::sqrt(b));
    const bool off = t * t > b * (1.0 + 1e-12);
    r.rejected[k] = parallel || off;
    if (parallel) r.note = "y = y' rejected: ray parallel to the hyperbola plane";
    else if (off && r.note.empty()) r.note = "root outside the focal ellipse";
  }
  if (r.note.empty()) r.note = "x' = 0: both roots from the quadratic, x = +-sqrt((a+b)(b-y^2)/b)";
  return r;
}

Y0Result special_case_y0(double a, double b, double x, double z, double tol) {
  if (!(a > 0.0) || !(b > 0.0)) throw invalid_input("a and b must be positive");
  Y0Result r;
  r.alpha0 = a * b - b * x * x + a * z * z;
  const double mag = a * b + b * x * x + a * z * z;
  r.on_hyperbola = std::abs(r.alpha0) <= tol * mag;
  const double c = std::sqrt(a + b);
  r.foci = {Vec{c, 0.0, 0.0}, Vec{-c, 0.0, 0.0}};
  const Vec o{x, 0.0, z};
  r.edges = {normalized(r.foci[0] - o), normalized(r.foci[1] - o)};
  // The hyperbola cone is flat, so the edges are the lines from O to the
  // points where the focal ellipse meets the plane y = 0: its vertices, which
  // are the foci of the hyperbola. The in-plane axes bisect the focal radii
  // (the tangent and normal at O when O is on the hyperbola).
  r.axes = {Vec{0.0, 1.0, 0.0}, normalized(r.edges[0] + r.edges[1]), normalized(r.edges[0] - r.edges[1])};
  r.note = r.on_hyperbola ? "O on the focal hyperbola: the edges join O with its foci"
                          : "O off the focal hyperbola (alpha0 != 0): the edges still join O with the foci";
  return r;
}

// ---------------------------------------------------------------- edges

std::string to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::FourReal: return "4 real";
    case EdgeClass::TwoReal: return "2 real";
    case EdgeClass::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

double min_line_separation(const std::vector<Vec>& dirs) {
  double m = kPi / 2.0;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j) m = std::min(m, line_angle(dirs[i], dirs[j]));
  return m;
}

void cone_residuals(EdgeSet& es, const DualFocalConics& c) {
  const Vec origin(3);
  es.cone_residual = 0.0;
  for (const SignedConic* conic : {&c.ellipse, &c.hyperbola}) {
    SymMat k;
    try {
      k = whiten(focal_cone(origin, *conic).form);
    } catch (const Error&) {
      continue;  // O in this conic's plane: the cone is flat, nothing to check
    }
    for (const Vec& u : es.directions) es.cone_residual = std::max(es.cone_residual, std::abs(k.quad(u)));
  }
}

}  // namespace

EdgeSet common_edges(const ChaslesFrame& f, const DualFocalConics& c, double tol) {
  const QuarticInstance q = quartic_instance(c.a, c.b, c.apex[0], c.apex[1], c.apex[2]);
  EdgeSet es;
  es.points = intersection_points(q, tol);
  const double ra = std::sqrt(c.a + c.b), rb = std::sqrt(c.b);
  const double a = c.a, b = c.b, xp = c.apex[0], yp = c.apex[1], zp = c.apex[2];
  // first equation of the system on the ellipse, as a function of its angle
  const auto F = [&](double th) {
    const double X = ra * std::cos(th), Y = rb * std::sin(th);
    const double u = yp * X - xp * Y;
    return b * u * u - a * zp * zp * Y * Y - a * b * (yp - Y) * (yp - Y);
  };
  const auto dF = [&](double th) {
    const double X = ra * std::cos(th), Y = rb * std::sin(th);
    const double dX = -ra * std::sin(th), dY = rb * std::cos(th);
    const double u = yp * X - xp * Y;
    return 2.0 * b * u * (yp * dX - xp * dY) - 2.0 * a * zp * zp * Y * dY + 2.0 * a * b * (yp - Y) * dY;
  };

  for (const IntersectionPoint& p : es.points) {
    if (!p.accepted) continue;
    if (p.multiple) es.merged_roots = true;
    double th = std::atan2(p.y / rb, p.x / ra);
    for (int it = 0; it < 6; ++it) {
      const double d = dF(th);
      if (d == 0.0) break;
      const double s = F(th) / d;
      if (!std::isfinite(s) || std::abs(s) > 1e-3) break;
      if (std::abs(F(th - s)) >= std::abs(F(th))) break;
      th -= s;
    }
    const Point2 xy{ra * std::cos(th), rb * std::sin(th)};
    es.ellipse_points.push_back(xy);
    es.directions.push_back(normalized(f.to_world(Vec{xy[0], xy[1], 0.0})));
  }
  es.min_separation = es.directions.size() > 1 ? min_line_separation(es.directions) : 0.0;
  if (es.directions.size() == 4 && !es.merged_roots) es.classification = EdgeClass::FourReal;
  else if (es.directions.size() >= 2) es.classification = EdgeClass::TwoReal;
  else es.classification = EdgeClass::Degenerate;
  cone_residuals(es, c);
  return es;
}

AxisLines axes_from_edges(const EdgeSet& edges, const ChaslesFrame& f, const DualFocalConics& c) {
  (void)f;
  if (edges.directions.size() != 4) throw degenerate("four distinct edges needed for the diagonal triangle");
  AxisLines al;
  al.pairings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  const auto& e = edges.directions;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& pr = al.pairings[k];
    const Vec p1 = cross(e[pr[0]], e[pr[1]]), p2 = cross(e[pr[2]], e[pr[3]]);
    const Vec d = cross(p1, p2);
    if (norm(d) <= 1e-14 * norm(p1) * norm(p2)) throw degenerate("coincident diagonal planes");
    al.directions[k] = normalized(d);
  }
  al.orthogonality_residual =
      max_abs({dot(al.directions[0], al.directions[1]), dot(al.directions[0], al.directions[2]),
               dot(al.directions[1], al.directions[2])});

  const Vec origin(3);
  const ConeAxesReport rep = shared_axes(focal_cone(origin, c.ellipse).form, focal_cone(origin, c.hyperbola).form);
  al.commutator_residual = rep.commutator_residual;
  for (const Vec& d : al.directions) {
    double best = kPi;
    for (const Vec& l : rep.frame) best = std::min(best, line_angle(d, l));
    al.cone_frame_angle = std::max(al.cone_frame_angle, best);
  }
  return al;
}

std::array<AxisLength, 3> axes_lengths(const ChaslesFrame& f, const std::array<Vec, 3>& dirs, const EdgeSet& edges,
                                       double volume_abs) {
  if (edges.directions.empty()) throw degenerate("no edges to measure on");
  std::array<AxisLength, 3> out;
  const double pn = norm(f.P);
  int missing = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double pl = std::abs(dot(f.P, dirs[k]));
    if (pl <= 1e-10 * pn) {
      out[k].from_volume = true;
      ++missing;
      continue;
    }
    double lo = INFINITY, hi = 0.0, sum = 0.0;
    for (const Vec& u : edges.directions) {
      const double ul = std::abs(dot(u, dirs[k]));
      const double t = ul == 0.0 ? INFINITY : pl / ul;
      out[k].per_edge.push_back(t);
      lo = std::min(lo, t), hi = std::max(hi, t), sum += t;
    }
    if (!std::isfinite(hi)) throw degenerate("edge parallel to a principal plane");
    out[k].length = sum / static_cast<double>(edges.directions.size());
    out[k].spread = (hi - lo) / out[k].length;
  }
  if (missing > 1) throw degenerate("P lies on a principal axis; intercepts are undetermined");
  for (std::size_t k = 0; k < 3; ++k)
    if (out[k].from_volume) out[k].length = volume_abs / (out[(k + 1) % 3].length * out[(k + 2) % 3].length);
  return out;
}

// ---------------------------------------------------------------- pipeline

namespace {

// Symmetric orthonormalisation D (D^T D)^{-1/2}; moves the directions only
// by the size of their orthogonality defect.
std::array<Vec, 3> orthonormalize(const std::array<Vec, 3>& d) {
  const Mat m = Mat::from_columns(std::span<const Vec>(d.data(), 3));
  const SymEigen eig = sym_eigen(SymMat::from(m.transpose() * m));
  Mat inv_sqrt(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec v = eig.vectors.col(k);
    inv_sqrt = inv_sqrt + outer(v, v) * (1.0 / std::sqrt(eig.values[k]));
  }
  const Mat o = m * inv_sqrt;
  return {o.col(0), o.col(1), o.col(2)};
}

struct Attempt {
  ChaslesTrace trace;
  std::array<Vec, 3> dirs;
  bool flagged = false;
  double score = 0.0;  // larger is better conditioned
};

// O in the plane of one dual focal conic: the edges join O with that
// conic's foci and the axes are the plane normal plus the tangent and
// normal of the other conic at O.
Attempt in_plane_branch(const ChaslesFrame& f, const DualFocalConics& c, bool hyperbola_plane, double vol) {
  Attempt at;
  at.trace.frame = f;
  at.trace.conics = c;
  const double xp = c.apex[0];
  std::array<Vec, 3> local_axes;
  std::array<Vec, 2> local_edges;
  if (hyperbola_plane) {
    const Y0Result y0 = special_case_y0(c.a, c.b, xp, c.apex[2], 1e-9);
    at.trace.y0 = y0;
    at.trace.branch = "focal-hyperbola";
    local_axes = y0.axes;
    local_edges = y0.edges;
  } else {
    // the ellipse cone is flat; the hyperbola meets z = 0 in its vertices
    // (+-sqrt a, 0, 0), the foci of the focal ellipse
    const double yp = c.apex[1];
    const Vec o{xp, yp, 0.0};
    const double fc = std::sqrt(c.a);
    local_edges = {normalized(Vec{fc, 0.0, 0.0} - o), normalized(Vec{-fc, 0.0, 0.0} - o)};
    local_axes = {Vec{0.0, 0.0, 1.0}, normalized(local_edges[0] + local_edges[1]),
                  normalized(local_edges[0] - local_edges[1])};
    at.trace.branch = "focal-ellipse";
  }
  const auto fr = f.frame();
  const auto world = [&](const Vec& l) { return normalized(fr[0] * l[0] + fr[1] * l[1] + fr[2] * l[2]); };
  EdgeSet es;
  for (const Vec& e : local_edges) es.directions.push_back(world(e));
  es.classification = EdgeClass::TwoReal;
  es.min_separation = line_angle(es.directions[0], es.directions[1]);
  cone_residuals(es, c);
  at.trace.edges = es;
  for (std::size_t k = 0; k < 3; ++k) at.dirs[k] = world(local_axes[k]);
  at.trace.lines.directions = at.dirs;
  at.trace.lines.orthogonality_residual =
      max_abs({dot(at.dirs[0], at.dirs[1]), dot(at.dirs[0], at.dirs[2]), dot(at.dirs[1], at.dirs[2])});
  at.trace.lengths = axes_lengths(f, at.dirs, es, vol);
  at.score = 1.0;
  return at;
}

Attempt principal_branch(const ChaslesFrame& f, const DualFocalConics* c) {
  Attempt at;
  at.trace.frame = f;
  if (c) at.trace.conics = *c;
  at.trace.branch = "principal";
  const auto fr = f.frame();
  at.dirs = fr;
  at.trace.lines.directions = fr;
  at.trace.lines.orthogonality_residual = f.orthogonality_residual();
  at.trace.lengths[0].length = norm(f.P);
  at.trace.lengths[1].length = f.section_lengths[0];
  at.trace.lengths[2].length = f.section_lengths[1];
  at.score = 1.0;
  return at;
}

Attempt run_role(const ConjugateSystem& sys, std::size_t role, const ChaslesOptions& opt, double vol) {
  const ChaslesFrame f = step("frame", [&] { return build_frame(sys, role); });
  const Vec apex = f.apex_local();
  const double scale = norm(f.P);
  const bool y_zero = std::abs(apex[1]) <= kZeroApex * scale;
  const bool z_zero = std::abs(apex[2]) <= kZeroApex * scale;
  // P already on the normal: the tangent plane at P is a principal plane
  if (y_zero && z_zero) {
    std::optional<DualFocalConics> c;
    try {
      c = dual_focal_conics(f);
    } catch (const Error&) {
    }
    return principal_branch(f, c ? &*c : nullptr);
  }
  const DualFocalConics c = step("dual-conics", [&] { return dual_focal_conics(f); });
  if (y_zero || z_zero) return step("edges", [&] { return in_plane_branch(f, c, y_zero, vol); });

  Attempt at;
  at.trace.frame = f;
  at.trace.conics = c;
  at.trace.branch = "general";
  at.trace.projection = step("projection", [&] { return project_focal_ellipse(c); });
  at.trace.quartic = step("quartic", [&] { return quartic_instance(c.a, c.b, apex[0], apex[1], apex[2]); });
  at.trace.edges = step("edges", [&] { return common_edges(f, c, opt.tol); });
  if (at.trace.edges.directions.size() != 4)
    throw StepError("edges", degenerate("expected four common edges, found " + std::to_string(at.trace.edges.directions.size())));
  at.trace.lines = step("axes", [&] { return axes_from_edges(at.trace.edges, f, c); });
  at.dirs = at.trace.lines.directions;
  at.trace.lengths = step("lengths", [&] { return axes_lengths(f, at.dirs, at.trace.edges, vol); });

  const EdgeSet& es = at.trace.edges;
  at.score = es.min_separation * std::min(1.0, c.b / (c.a + c.b) * 1e3);
  at.flagged = es.merged_roots || es.classification != EdgeClass::FourReal || es.cone_residual > opt.tol ||
               at.trace.lines.orthogonality_residual > opt.tol;
  return at;
}

}  // namespace

ChaslesResult chasles_axes(const ConjugateSystem& sys, const ChaslesOptions& opt) {
  if (sys.dim() != 3) throw invalid_input("the Chasles construction needs a 3D system");
  if (!(opt.tol > 0.0)) throw invalid_input("tolerance must be positive");
  const double vol = std::abs(volume(sys));

  std::vector<ChaslesAttempt> log;
  std::optional<Attempt> best;
  std::optional<StepError> first_error;
  for (std::size_t role = 0; role < 3; ++role) {
    if (opt.role && *opt.role != role) continue;
    try {
      Attempt at = run_role(sys, role, opt, vol);
      const bool good = !at.flagged && at.score >= kGoodSeparation;
      log.push_back({role, good ? "ok" : (at.flagged ? "flagged" : "poorly conditioned")});
      if (!best || (!at.flagged && best->flagged) || (at.flagged == best->flagged && at.score > best->score))
        best = std::move(at);
      if (good) break;
    } catch (const StepError& e) {
      log.push_back({role, e.what()});
      if (!first_error) first_error = e;
    }
  }
  if (!best) throw *first_error;

  ChaslesResult res;
  res.trace = std::move(best->trace);
  res.trace.attempts = std::move(log);
  res.degenerate_flag = best->flagged;
  const auto dirs = orthonormalize(best->dirs);
  AxesResult ax;
  ax.provenance = AxesProvenance::Chasles;
  for (std::size_t k = 0; k < 3; ++k) {
    ax.directions.push_back(dirs[k]);
    ax.lengths.push_back(res.trace.lengths[k].length);
  }
  res.axes = canonicalize(std::move(ax));
  return res;
}

}  // namespace quadax
