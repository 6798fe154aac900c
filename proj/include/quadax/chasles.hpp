#pragma once

// Chasles's construction of the principal axes of an ellipsoid from a
// complete system of conjugate semi-diameters OP, OQ, OR.
//
//   1. the normal at P and the axes of the section ellipse E = (OQR) give a
//      frame n1, n2, n3 at P (Rytz on E);
//   2. the confocal system centred at P whose focal ellipse and focal
//      hyperbola lie in the planes (n1, n2) and (n1, n3);
//   3. the four common edges of the two focal cones with apex O; their
//      diagonal triangle gives the axis lines, the planes through P
//      parallel to the principal planes cut the semi-axis lengths off them.
//
// Local coordinates (x, y, z) are taken along (n1, n2, n3) with P at the
// origin, so the focal ellipse is x^2/(a+b) + y^2/b = 1, z = 0 and the focal
// hyperbola x^2/a - z^2/b = 1, y = 0, where a = rho2^2, b = rho3^2 - rho2^2.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quadax/confocal.hpp"
#include "quadax/conjugate.hpp"
#include "quadax/numkernel.hpp"
#include "quadax/rytz.hpp"

namespace quadax {

struct ChaslesFrame {
  std::size_t role = 0;  // which input diameter plays P
  Vec O, P, Q, R;
  Vec normal_at_P;                    // n1, oriented so that x' > 0
  std::array<Vec, 2> section_axes;    // n2 (minor, rho2), n3 (major, rho3)
  std::array<double, 2> section_lengths;  // rho2 <= rho3
  RytzTrace rytz;                     // on E in the plane basis below
  SectionPair section;

  std::array<Vec, 3> frame() const { return {normal_at_P, section_axes[0], section_axes[1]}; }
  /// max |n_i . n_j| over i != j
  double orthogonality_residual() const;
  /// Apex O in local coordinates: (x', y', z') = (-P.n1, -P.n2, -P.n3).
  Vec apex_local() const;
  Vec to_world(const Vec& local) const;
  Vec to_local(const Vec& world) const;
};

/// P := x^role, (Q, R) := the remaining diameters in cyclic order.
ChaslesFrame build_frame(const ConjugateSystem& sys, std::size_t role = 0);

struct DualFocalConics {
  double a = 0.0, b = 0.0;  // rho2^2 and rho3^2 - rho2^2
  SignedConic ellipse;      // centre P, plane (n1, n2), squares (a + b, b)
  SignedConic hyperbola;    // centre P, plane (n1, n3), squares (a, -b)
  Vec apex;                 // (x', y', z')
};

/// Throws Degenerate("rotationally symmetric section") when rho2 = rho3.
DualFocalConics dual_focal_conics(const ChaslesFrame& f);

/// c[0] X^2 + c[1] X Z + c[2] Z^2 + c[3] X + c[4] Z + c[5] = 0 in the
/// hyperbola plane, X along n1 and Z along n3.
struct PlaneConic {
  std::array<double, 6> c{};
  double operator()(double X, double Z) const;
  /// Sign-fixed unit coefficient vector.
  PlaneConic normalized() const;
};

enum class ConicKind { Ellipse, Parabola, Hyperbola };
std::string to_string(ConicKind k);

using Point2 = std::array<double, 2>;

struct ProjectionTrace {
  PlaneConic fitted;        // least-squares through projected samples
  PlaneConic closed_form;   // (x'Z - z'X)^2/(a+b) + y'^2 Z^2/b = (Z - z')^2
  double fit_residual = 0.0;
  double closed_form_distance = 0.0;  // between the unit coefficient vectors
  ConicKind kind = ConicKind::Ellipse;
  Point2 A, B;                  // endpoints of the major axis of the focal ellipse, on m
  double fixed_line_residual = 0.0;
  std::optional<Point2> Cbar, Dbar;  // images of the minor-axis endpoints
  std::optional<Point2> Ebar, Fbar;  // diameter through the midpoint of CbarDbar parallel to m
  std::optional<Point2> E, F;        // their preimages on the focal ellipse (x, y)
  std::optional<RytzTrace> image_axes;  // Rytz on E' from the conjugate pair (K Cbar, K Ebar)
  std::optional<Point2> image_center;
  std::vector<Point2> samples;  // projected sample points
};

/// Central projection of the focal ellipse from O onto the hyperbola plane.
/// Throws Degenerate when O lies in the plane of the focal ellipse.
ProjectionTrace project_focal_ellipse(const DualFocalConics& c);

struct QuarticInstance {
  double a = 0.0, b = 0.0, x = 0.0, y = 0.0, z = 0.0;  // a, b, x', y', z'
  double alpha = 0.0;        // closed form ab - bx'^2 + (a+b)y'^2 + az'^2
  double alpha_from_system = 0.0;  // y^2 coefficient of the eliminated system
  double beta_const = 0.0;   // beta = beta_const - beta_x * x  = 2y'b(a - x'x)
  double beta_x = 0.0;
  double gamma = 0.0;        // b^2 y'^2
  double printed_gamma = 0.0;  // y'^2 b, the transcribed form
  RealPoly quartic;          // (alpha y^2 - 2aby' y - gamma)^2 - 4b x'^2 y'^2 (a+b)(b - y^2) y^2
  RealPoly printed_quartic;  // same expansion with printed_gamma, normalised to constant term 1
  double validation_residual = 0.0;  // 10-sample check against the eliminated system
  bool printed_matches_geometry = false;
};

/// Requires a, b > 0 and y' != 0 (y' = 0 is special_case_y0).
QuarticInstance quartic_instance(double a, double b, double x, double y, double z);

struct IntersectionPoint {
  double y = 0.0, x = 0.0;  // on the focal ellipse
  double residual_projection = 0.0;  // first equation of the system
  double residual_ellipse = 0.0;     // second equation
  double residual_reduced = 0.0;     // alpha y^2 - beta y - gamma
  bool multiple = false;
  bool accepted = false;
  std::string note;
};

/// Real roots of the quartic, back-substituted; a root is kept only when
/// both equations hold to tol and y != y'.
std::vector<IntersectionPoint> intersection_points(const QuarticInstance& q, double tol = 1e-8);

struct X0Roots {
  double alpha = 0.0;
  std::array<double, 2> y{};
  std::array<double, 2> residual{};  // alpha y^2 - beta y - gamma
  std::array<bool, 2> rejected{};    // y = y' or off the ellipse
  std::string note;
};

/// Closed form for x' = 0: y = (y'ab +- y'b sqrt(a^2 + alpha)) / alpha.
X0Roots special_case_x0(double a, double b, double y, double z);

struct Y0Result {
  double alpha0 = 0.0;  // ab - bx'^2 + az'^2
  bool on_hyperbola = false;
  std::array<Vec, 2> foci;  // (+-sqrt(a+b), 0, 0) local
  std::array<Vec, 2> edges;  // O -> foci, unit, local
  std::array<Vec, 3> axes;   // n2 line and the two bisectors of the focal radii (local)
  std::string note;
};

/// O in the plane y = 0. tol is relative to the magnitude of the terms of alpha0.
Y0Result special_case_y0(double a, double b, double x, double z, double tol = 1e-12);

enum class EdgeClass { FourReal, TwoReal, Degenerate };
std::string to_string(EdgeClass c);

struct EdgeSet {
  std::vector<Vec> directions;  // unit, world coordinates, through O
  std::vector<Point2> ellipse_points;  // (x, y) local
  EdgeClass classification = EdgeClass::Degenerate;
  bool merged_roots = false;
  double min_separation = 0.0;      // smallest angle between two edge lines
  double cone_residual = 0.0;       // max over edges and both cones
  std::vector<IntersectionPoint> points;
};

/// Common edges of the two dual focal cones with apex O, from the filtered
/// quartic roots (Newton-polished on the ellipse angle).
EdgeSet common_edges(const ChaslesFrame& f, const DualFocalConics& c, double tol = 1e-8);

struct AxisLines {
  std::array<Vec, 3> directions;
  std::array<std::array<int, 4>, 3> pairings;  // {a, b, c, d}: (ea x eb) x (ec x ed)
  double orthogonality_residual = 0.0;
  double cone_frame_angle = 0.0;   // against the shared eigenframe of the two cones
  double commutator_residual = 0.0;
};

/// Diagonal lines of the complete quadrangle of four edge directions.
AxisLines axes_from_edges(const EdgeSet& edges, const ChaslesFrame& f, const DualFocalConics& c);

struct AxisLength {
  double length = 0.0;
  std::vector<double> per_edge;  // cut-off parts on each edge
  double spread = 0.0;           // (max - min) / length
  bool from_volume = false;      // 0/0 intercept, recovered from |det X|
};

/// For each axis line l: the plane through P orthogonal to l cuts each edge
/// at distance |P.l| / |u.l| from O.
std::array<AxisLength, 3> axes_lengths(const ChaslesFrame& f, const std::array<Vec, 3>& dirs, const EdgeSet& edges,
                                       double volume_abs);

struct ChaslesAttempt {
  std::size_t role = 0;
  std::string outcome;  // "ok" or the failure / retry reason
};

struct ChaslesTrace {
  ChaslesFrame frame;
  DualFocalConics conics;
  std::optional<ProjectionTrace> projection;
  std::optional<QuarticInstance> quartic;
  std::optional<Y0Result> y0;
  EdgeSet edges;
  AxisLines lines;
  std::array<AxisLength, 3> lengths;
  std::string branch;  // "general", "focal-hyperbola", "focal-ellipse", "principal"
  std::vector<ChaslesAttempt> attempts;
};

struct ChaslesOptions {
  double tol = 1e-8;
  std::optional<std::size_t> role;  // fixed P; disables the retry
};

struct ChaslesResult {
  AxesResult axes;
  ChaslesTrace trace;
  bool degenerate_flag = false;  // completed, but only on a flagged configuration
};

/// The whole construction with role retry. Errors are StepError tagged with
/// the failing step ("frame", "dual-conics", "edges", "axes", "lengths").
ChaslesResult chasles_axes(const ConjugateSystem& sys, const ChaslesOptions& opt = {});

}  // namespace quadax
