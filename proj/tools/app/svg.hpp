#pragma once

// Flat SVG 1.1 figures of the construction traces.

#include <string>
#include <vector>

#include "quadax/chasles.hpp"
#include "quadax/rytz.hpp"

namespace quadax::app {

struct Polyline {
  std::vector<Point2> pts;
  bool closed = false;
};

struct Line {
  Point2 a, b;
  bool infinite = false;  // a + t (b - a), clipped to the viewport
};

struct LabeledPoint {
  Point2 at;
  std::string label;
};

struct Layer {
  std::string name;
  std::string stroke = "#000";
  double width = 1.0;
  bool dashed = false;
  bool fit = true;  // contributes to the viewport
  std::vector<Polyline> polylines;
  std::vector<Line> lines;
  std::vector<LabeledPoint> points;
};

struct FigureSpec {
  std::string title;
  std::vector<Layer> layers;
  double width_px = 640.0;
  double height_px = 480.0;
  double margin = 0.08;  // fraction of the fitted extent added on every side
};

/// Renders a spec; non-finite coordinates are dropped, lines clipped.
std::string render_svg(const FigureSpec& spec);

FigureSpec rytz_figure(const RytzTrace& t);
/// The two dual focal conics in their planes, side by side.
FigureSpec focal_figure(const ChaslesTrace& t);
/// Throws Degenerate when the trace has no projection step.
FigureSpec projection_figure(const ChaslesTrace& t);
FigureSpec axes_figure(const ChaslesTrace& t, const AxesResult& axes);

}  // namespace quadax::app
