#pragma once

// Confocal family  sum x_i^2 / (a_i^2 - lambda) = 1  of a strict ellipsoid.
//
// Squared semi-axes are kept signed throughout: table(i, j) = a_i^2 - lambda^j
// is negative on the hyperbolic axes of the j-th confocal through a point.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quadax/conjugate.hpp"
#include "quadax/numkernel.hpp"

namespace quadax {

struct ConfocalTriple {
  Ellipsoid base;
  Vec point;
  std::vector<double> lambdas;  // increasing, interlaced with a_n^2 < ... < a_1^2
  Mat table;                    // (i, j) -> (a_i^j)^2 = a_i^2 - lambda^j

  std::size_t dim() const noexcept { return point.size(); }
  double sq(std::size_t axis, std::size_t confocal) const { return table(axis, confocal); }
  /// Unit normal at the point of the j-th confocal through it.
  Vec normal(std::size_t j) const;
  /// True when lambda^1 < a_n^2 < lambda^2 < ... < lambda^n < a_1^2 and
  /// a_1^j decreases strictly in j.
  bool interlaced() const;
};

/// Bracketed bisection on the interlacing intervals. Throws InvalidInput for
/// "point on coordinate hyperplane" or "non-strict ellipsoid".
ConfocalTriple lambda_roots(const Ellipsoid& ell, const Vec& p);

struct RecoveredCoordinates {
  std::vector<double> squares;  // x_i^2, signed convention
  std::vector<double> abs;      // |x_i|
};

/// x_i^2 = prod_j (a_i^j)^2 / prod_{j != i} ((a_i^i)^2 - (a_j^i)^2).
RecoveredCoordinates recover_coordinates(const ConfocalTriple& t);

struct IdentityCheck {
  double lhs = 0.0, rhs = 0.0;
};

/// |p|^2 against sum_j (a_j^j)^2.
IdentityCheck norm_square_identity(const ConfocalTriple& t);

/// Cosine of the angle between the normals of confocals j and k, computed
/// from ((a_1^k)^2 - (a_1^j)^2) sum_i p_i^2 / ((a_i^j)^2 (a_i^k)^2) and made
/// dimensionless by |lambda^j - lambda^k| |n_j| |n_k|. Requires j != k.
double orthogonality_residual(const ConfocalTriple& t, std::size_t j, std::size_t k);

/// Pole of the hyperplane <h, x> = 1: xi_i = h_i a_i^2.
Vec pole(const Vec& h, const Ellipsoid& ell);

struct SupportDistance {
  double from_axes;    // signed-square product formula
  double from_normal;  // 1 / |n_j|^2 with n_j = (p_i / (a_i^j)^2)_i
};

/// Squared distances from the centre to the tangent hyperplanes of the n
/// confocals through the point, by two routes.
std::vector<SupportDistance> support_distances(const ConfocalTriple& t);

/// The confocal family centred at the point whose principal hyperplanes are
/// the n tangent hyperplanes there.
struct DualSystem {
  Vec center;
  std::vector<Vec> frame;                       // unit normals n_1..n_n
  std::vector<std::vector<double>> squared_axes;  // [i][j] = (a_i^j)^2 along n_j
  Vec origin_coords;                            // the original centre in the dual frame
  /// sum_j y_j^2 / (a_i^j)^2 - 1 for every dual quadric i; all ~0.
  std::vector<double> origin_residuals;
};

DualSystem dual_system(const ConfocalTriple& t);

/// A conic in an embedded plane of 3-space given by signed squared semi-axes.
struct SignedConic {
  Vec origin;
  std::array<Vec, 2> frame;  // orthonormal in-plane axes
  std::array<double, 2> sq;  // signed squared semi-axes along frame[0], frame[1]
  bool imaginary() const noexcept { return sq[0] < 0.0 && sq[1] < 0.0; }
  Vec plane_normal() const;
  /// Point of the conic at parameter t (cos/sin for ellipses, cosh/sinh on a
  /// branch for hyperbolas; branch selects the sign of the real axis).
  Vec point_at(double t, int branch = 1) const;
  /// Equation residual at a 3D point projected into the plane.
  double residual(const Vec& x) const;
};

struct FocalQuadric {
  std::size_t k = 0;                 // 1-based index of the vanishing coordinate
  std::vector<double> signed_sq;     // a_i^2 - a_k^2 for i != k, increasing i
  bool imaginary = false;
  std::optional<SignedConic> conic;  // for n = 3
};

/// The degenerate member lambda -> a_k^2 of the confocal family.
FocalQuadric focal_quadric(const Ellipsoid& ell, std::size_t k);

/// (rho_j)^2 for j >= 2 of the central section parallel to the tangent plane
/// at a surface point, with the section axis directions.
struct CentralSection {
  std::vector<double> radii_sq;  // j = 2..n
  std::vector<Vec> directions;   // normals of the confocals j = 2..n
};

/// x must lie on the ellipsoid (|residual| <= 1e-9).
CentralSection central_section_radii(const Ellipsoid& ell, const Vec& x);

/// Quadratic cone {apex + u : u^T K u = 0}.
struct ConeQuadric {
  Vec apex;
  SymMat form;
};

/// Cone through a conic with the given apex. Throws Degenerate("degenerate
/// cone") when the apex lies in the conic's plane.
ConeQuadric focal_cone(const Vec& apex, const SignedConic& c);

struct ConeAxesReport {
  bool degenerate = false;
  std::string reason;
  double commutator_residual = 0.0;  // || Ke Kh - Kh Ke ||_F after whitening
  std::vector<Vec> frame;            // shared eigenframe l_1..l_3
  std::vector<double> ellipse_eigs;  // whitened form eigenvalues along the frame
  std::vector<double> hyperbola_eigs;
  bool repeated_eigenvalues = false;
};

/// Builds the cones over the focal ellipse and focal hyperbola of ell with
/// the given apex and checks that they share principal axes. Apex at the
/// origin throws InvalidInput; apex in a conic plane is reported degenerate.
ConeAxesReport cone_axes_check(const Vec& apex, const Ellipsoid& ell);

/// Shared-eigenframe analysis of two cone forms (used for the dual cones of
/// the Chasles construction as well).
ConeAxesReport shared_axes(const SymMat& ke, const SymMat& kh);

/// Common generators of the cone over an ellipse and a second cone form,
/// both with the given apex. The ellipse is parametrised by angle, the
/// quadratic condition becomes a quartic in tan(theta / 2) and every real
/// root is polished by Newton steps in theta. Returns unit directions
/// (apex towards the ellipse point) with the ellipse angles.
struct ConeEdge {
  Vec direction;
  double theta = 0.0;
  double residual = 0.0;  // |u^T K u| / (|u|^2 ||K||) at the polished angle
  bool multiple = false;
};
std::vector<ConeEdge> cone_common_edges(const Vec& apex, const SignedConic& ellipse, const SymMat& other);

/// Common edges of the two real focal cones of ell at apex (n = 3).
std::vector<ConeEdge> focal_cone_edges(const Vec& apex, const Ellipsoid& ell);

/// Distance along an edge from x to the hyperplane through the origin with
/// normal n: the intercept length of the focal-cone edge.
double intercept_length(const Vec& x, const Vec& edge_dir, const Vec& n);

}  // namespace quadax
