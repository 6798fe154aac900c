#include "app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "quadax/error.hpp"

namespace quadax::app {

namespace {

constexpr double kPi = 3.14159265358979323846;
const char* kOverbar = "̄";  // combining macron

bool finite(const Point2& p) { return std::isfinite(p[0]) && std::isfinite(p[1]); }

struct Box {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  void add(const Point2& p) {
    if (!finite(p)) return;
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  }
  bool empty() const { return !(x0 <= x1 && y0 <= y1); }
  bool contains(const Point2& p) const { return p[0] >= x0 && p[0] <= x1 && p[1] >= y0 && p[1] <= y1; }
};

// Liang-Barsky on a + t (b - a); t limited to [lo, hi].
bool clip(const Box& box, Point2& a, Point2& b, double lo, double hi) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a[0] - box.x0, box.x1 - a[0], a[1] - box.y0, box.y1 - a[1]};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) lo = std::max(lo, t);
    else hi = std::min(hi, t);
  }
  if (lo > hi) return false;
  const Point2 a0 = a;
  a = {a0[0] + lo * dx, a0[1] + lo * dy};
  b = {a0[0] + hi * dx, a0[1] + hi * dy};
  return true;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Point2 p2(const Vec& v) { return {v[0], v[1]}; }

Polyline ellipse_poly(double rx, double ry, int n = 160) {
  Polyline pl;
  pl.closed = true;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * k / n;
    pl.pts.push_back({rx * std::cos(t), ry * std::sin(t)});
  }
  return pl;
}

// x^2/a - z^2/b = 1, both branches, |x| up to xmax
std::vector<Polyline> hyperbola_polys(double a, double b, double xmax, int n = 120) {
  const double tmax = std::acosh(std::max(1.0, xmax / std::sqrt(a)));
  std::vector<Polyline> out;
  for (int side : {1, -1}) {
    Polyline pl;
    for (int k = 0; k <= n; ++k) {
      const double t = -tmax + 2.0 * tmax * k / n;
      pl.pts.push_back({side * std::sqrt(a) * std::cosh(t), std::sqrt(b) * std::sinh(t)});
    }
    out.push_back(std::move(pl));
  }
  return out;
}

Layer layer(std::string name, std::string stroke, double width = 1.0, bool dashed = false) {
  Layer l;
  l.name = std::move(name);
  l.stroke = std::move(stroke);
  l.width = width;
  l.dashed = dashed;
  return l;
}

}  // namespace

std::string render_svg(const FigureSpec& spec) {
  Box fit;
  for (const auto& l : spec.layers) {
    if (!l.fit) continue;
    for (const auto& pl : l.polylines)
      for (const auto& p : pl.pts) fit.add(p);
    for (const auto& ln : l.lines)
      if (!ln.infinite) {
        fit.add(ln.a);
        fit.add(ln.b);
      }
    for (const auto& p : l.points) fit.add(p.at);
  }
  if (fit.empty()) throw degenerate("figure has nothing to draw");
  double w = fit.x1 - fit.x0, h = fit.y1 - fit.y0;
  const double ext = std::max({w, h, 1e-9});
  w = std::max(w, 1e-3 * ext);
  h = std::max(h, 1e-3 * ext);
  Box view{fit.x0 - spec.margin * ext, fit.y0 - spec.margin * ext, fit.x1 + spec.margin * ext,
           fit.y1 + spec.margin * ext};
  const double W = spec.width_px, H = spec.height_px;
  const double s = std::min(W / (view.x1 - view.x0), H / (view.y1 - view.y0));
  const double cx = 0.5 * (view.x0 + view.x1), cy = 0.5 * (view.y0 + view.y1);
  // widen the world box to the full canvas so clipped lines reach the border
  view = {cx - 0.5 * W / s, cy - 0.5 * H / s, cx + 0.5 * W / s, cy + 0.5 * H / s};
  const Box far{view.x0 - 2 * (view.x1 - view.x0), view.y0 - 2 * (view.y1 - view.y0),
                view.x1 + 2 * (view.x1 - view.x0), view.y1 + 2 * (view.y1 - view.y0)};
  auto X = [&](const Point2& p) { return num(0.5 * W + s * (p[0] - cx)); };
  auto Y = [&](const Point2& p) { return num(0.5 * H - s * (p[1] - cy)); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(W) << "\" height=\"" << num(H)
     << "\" viewBox=\"0 0 " << num(W) << " " << num(H) << "\">\n"
     << "<title>" << escape(spec.title) << "</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << num(W) << "\" height=\"" << num(H) << "\" fill=\"#fff\"/>\n";
  for (const auto& l : spec.layers) {
    os << "<g id=\"" << escape(l.name) << "\" fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\""
       << num(l.width) << "\"" << (l.dashed ? " stroke-dasharray=\"6,4\"" : "") << ">\n";
    for (const auto& pl : l.polylines) {
      // split at non-finite or far-away vertices
      std::vector<std::vector<Point2>> runs(1);
      for (const auto& p : pl.pts) {
        if (finite(p) && far.contains(p)) runs.back().push_back(p);
        else if (!runs.back().empty()) runs.emplace_back();
      }
      const bool whole = runs.size() == 1 && runs[0].size() == pl.pts.size();
      for (const auto& r : runs) {
        if (r.size() < 2) continue;
        os << (whole && pl.closed ? "<polygon" : "<polyline") << " points=\"";
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << X(r[i]) << "," << Y(r[i]);
        os << "\"/>\n";
      }
    }
    for (auto ln : l.lines) {
      if (!finite(ln.a) || !finite(ln.b)) continue;
      if (ln.a == ln.b) continue;
      const double inf = std::numeric_limits<double>::infinity();
      if (!clip(view, ln.a, ln.b, ln.infinite ? -inf : 0.0, ln.infinite ? inf : 1.0)) continue;
      os << "<line x1=\"" << X(ln.a) << "\" y1=\"" << Y(ln.a) << "\" x2=\"" << X(ln.b) << "\" y2=\"" << Y(ln.b)
         << "\"/>\n";
    }
    for (const auto& p : l.points) {
      if (!finite(p.at) || !view.contains(p.at)) continue;
      os << "<circle cx=\"" << X(p.at) << "\" cy=\"" << Y(p.at) << "\" r=\"2.5\" fill=\"" << l.stroke << "\"/>\n";
      if (!p.label.empty())
        os << "<text x=\"" << num(0.5 * W + s * (p.at[0] - cx) + 5) << "\" y=\"" << num(0.5 * H - s * (p.at[1] - cy) - 5)
           << "\" fill=\"" << l.stroke << "\" stroke=\"none\" font-family=\"serif\" font-size=\"14\">"
           << escape(p.label) << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

FigureSpec rytz_figure(const RytzTrace& t) {
  if (t.P.size() != 2) throw invalid_input("Rytz figure needs a planar trace");
  FigureSpec f;
  f.title = "Axes of an ellipse from a pair of conjugate semi-diameters";
  Layer ell = layer("ellipse", "#1f4e9c", 1.5);
  Polyline pl;
  pl.closed = true;
  for (int k = 0; k < 200; ++k) {
    const double th = 2.0 * kPi * k / 200;
    pl.pts.push_back(p2(t.P * std::cos(th) + t.Q * std::sin(th)));
  }
  ell.polylines.push_back(pl);

  Layer conj = layer("conjugate-diameters", "#555");
  conj.lines.push_back({p2(-t.P), p2(t.P)});
  conj.lines.push_back({p2(-t.Q), p2(t.Q)});

  Layer cons = layer("construction", "#b5651d", 1.0, true);
  cons.lines.push_back({p2(t.M), p2(t.L)});                // normal at P
  cons.lines.push_back({{0.0, 0.0}, p2(t.M), true});        // line OM
  cons.lines.push_back({p2(t.P), p2(t.T)});
  cons.lines.push_back({p2(t.P), p2(t.Pprime)});

  Layer axes = layer("axes", "#2e7d32", 1.2);
  axes.fit = false;
  for (std::size_t k = 0; k < 2; ++k) axes.lines.push_back({{0.0, 0.0}, p2(t.axis_dirs[k]), true});

  Layer pts = layer("points", "#000");
  pts.points = {{{0.0, 0.0}, "O"}, {p2(t.P), "P"},  {p2(t.Q), "Q"},         {p2(t.M), "M"},
                {p2(t.L), "L"},     {p2(t.T), "T"}, {p2(t.Pprime), "P′"}};
  f.layers = {ell, conj, cons, axes, pts};
  return f;
}

FigureSpec focal_figure(const ChaslesTrace& t) {
  const DualFocalConics& c = t.conics;
  if (!(c.a > 0.0 && c.b > 0.0)) throw degenerate("trace has no dual focal conics");
  FigureSpec f;
  f.title = "Dual focal ellipse (plane n1, n2) and focal hyperbola (plane n1, n3)";
  f.width_px = 960.0;
  const Vec& o = c.apex;
  const double R = 1.15 * std::max({std::sqrt(c.a + c.b), std::abs(o[0]), std::abs(o[1]), std::abs(o[2])});
  const double shift = 2.4 * R;
  auto right = [&](Point2 p) { return Point2{p[0] + shift, p[1]}; };

  Layer ell = layer("focal-ellipse", "#1f4e9c", 1.5);
  ell.polylines.push_back(ellipse_poly(std::sqrt(c.a + c.b), std::sqrt(c.b)));
  Layer hyp = layer("focal-hyperbola", "#c62828", 1.5);
  hyp.fit = false;
  for (auto pl : hyperbola_polys(c.a, c.b, R)) {
    for (auto& p : pl.pts) p = right(p);
    hyp.polylines.push_back(pl);
  }
  Layer frame = layer("frame", "#888", 0.8, true);
  frame.lines = {{{-R, 0.0}, {R, 0.0}}, {{0.0, -R}, {0.0, R}}, {right({-R, 0.0}), right({R, 0.0})},
                 {right({0.0, -R}), right({0.0, R})}};
  Layer pts = layer("points", "#000");
  const double fe = std::sqrt(c.a), fh = std::sqrt(c.a + c.b);
  pts.points = {{{0.0, 0.0}, "P"},
                {{o[0], o[1]}, "O′"},
                {{fe, 0.0}, "F1"},
                {{-fe, 0.0}, "F2"},
                {right({0.0, 0.0}), "P"},
                {right({o[0], o[2]}), "O″"},
                {right({fh, 0.0}), "G1"},
                {right({-fh, 0.0}), "G2"}};
  f.layers = {frame, ell, hyp, pts};
  return f;
}

FigureSpec projection_figure(const ChaslesTrace& t) {
  if (!t.projection) throw degenerate("trace has no projection step (branch " + t.branch + ")");
  const ProjectionTrace& pr = *t.projection;
  const DualFocalConics& c = t.conics;
  const double xp = c.apex[0], yp = c.apex[1], zp = c.apex[2];
  FigureSpec f;
  f.title = "Image of the focal ellipse in the plane of the focal hyperbola";

  // central projection from O of (x, y, 0) onto y = 0
  auto project = [&](double x, double y) -> Point2 {
    const double tt = yp / (yp - y);
    return {xp + tt * (x - xp), zp * (1.0 - tt)};
  };
  Layer img = layer("image-conic", "#6a1b9a", 1.5);
  img.fit = false;
  {
    Polyline cur;
    double prev = 0.0;
    const int n = 720;
    for (int k = 0; k <= n; ++k) {
      const double th = 2.0 * kPi * k / n;
      const double x = std::sqrt(c.a + c.b) * std::cos(th), y = std::sqrt(c.b) * std::sin(th);
      const double den = yp - y;
      if (k > 0 && (den > 0) != (prev > 0)) {
        if (cur.pts.size() > 1) img.polylines.push_back(cur);
        cur.pts.clear();
      }
      prev = den;
      if (std::abs(den) > 1e-9 * std::abs(yp)) cur.pts.push_back(project(x, y));
    }
    if (cur.pts.size() > 1) img.polylines.push_back(cur);
  }
  Layer hyp = layer("focal-hyperbola", "#c62828", 1.5);
  hyp.fit = false;
  const double R = 1.3 * std::max({std::sqrt(c.a + c.b), std::abs(pr.A[0]), std::abs(pr.B[0])});
  hyp.polylines = hyperbola_polys(c.a, c.b, 2.0 * R);

  Layer m = layer("fixed-line-m", "#444", 1.0, true);
  m.fit = false;
  m.lines.push_back({pr.A, pr.B, true});

  Layer pts = layer("points", "#000");
  pts.points.push_back({pr.A, "A"});
  pts.points.push_back({pr.B, "B"});
  pts.points.push_back({{pr.A[0] + 0.5 * (pr.B[0] - pr.A[0]) + 0.35 * R, 0.0}, "m"});
  if (pr.Cbar) pts.points.push_back({*pr.Cbar, std::string("C") + kOverbar});
  if (pr.Dbar) pts.points.push_back({*pr.Dbar, std::string("D") + kOverbar});
  if (pr.Ebar) pts.points.push_back({*pr.Ebar, std::string("E") + kOverbar});
  if (pr.Fbar) pts.points.push_back({*pr.Fbar, std::string("F") + kOverbar});
  if (pr.image_center) pts.points.push_back({*pr.image_center, "K"});

  Layer common = layer("common-points", "#00838f", 1.0);
  int k = 1;
  for (const auto& e : t.edges.ellipse_points) {
    if (std::abs(yp - e[1]) <= 1e-12 * std::abs(yp)) continue;
    common.points.push_back({project(e[0], e[1]), "S" + std::to_string(k++)});
  }
  Layer cd = layer("conjugate-diameters", "#555", 1.0);
  if (pr.Cbar && pr.Dbar) cd.lines.push_back({*pr.Cbar, *pr.Dbar});
  if (pr.Ebar && pr.Fbar) cd.lines.push_back({*pr.Ebar, *pr.Fbar});
  f.layers = {m, hyp, img, cd, pts, common};
  return f;
}

FigureSpec axes_figure(const ChaslesTrace& t, const AxesResult& axes) {
  if (axes.directions.size() != 3) throw invalid_input("axes figure needs a 3D result");
  const Vec& d0 = axes.directions[0];
  const Vec& d1 = axes.directions[1];
  auto proj = [&](const Vec& v) { return Point2{dot(v, d0), dot(v, d1)}; };
  FigureSpec f;
  f.title = "Common edges of the focal cones and the principal axes";

  Layer sec = layer("principal-section", "#1f4e9c", 1.5);
  sec.polylines.push_back(ellipse_poly(axes.lengths[0], axes.lengths[1]));
  Layer ax = layer("axes", "#2e7d32", 1.2);
  ax.fit = false;
  ax.lines = {{{0.0, 0.0}, {1.0, 0.0}, true}, {{0.0, 0.0}, {0.0, 1.0}, true}};
  Layer edges = layer("common-edges", "#00838f", 1.0, true);
  edges.fit = false;
  Layer cuts = layer("intercepts", "#00838f");
  const Vec& P = t.frame.P;
  for (const auto& u : t.edges.directions) {
    const Point2 q = proj(u);
    if (std::hypot(q[0], q[1]) > 1e-9) edges.lines.push_back({{0.0, 0.0}, q, true});
    for (const Vec* l : {&d0, &d1}) {
      const double ul = dot(u, *l);
      if (std::abs(ul) < 1e-12) continue;
      cuts.points.push_back({proj(u * (dot(P, *l) / ul)), ""});
    }
  }
  Layer pts = layer("points", "#000");
  pts.points = {{{0.0, 0.0}, "O"},
                {proj(P), "P"},
                {{axes.lengths[0], 0.0}, "a1 = " + num(axes.lengths[0])},
                {{0.0, axes.lengths[1]}, "a2 = " + num(axes.lengths[1])}};
  f.layers = {sec, ax, edges, cuts, pts};
  return f;
}

}  // namespace quadax::app
