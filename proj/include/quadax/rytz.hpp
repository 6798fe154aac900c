#pragma once

// Modified Rytz construction: principal axes of an ellipse from one pair of
// conjugate semi-diameters OP, OQ, using the normal at P instead of the
// rotated copy of OQ.

#include <array>
#include <string>

#include "quadax/conjugate.hpp"
#include "quadax/numkernel.hpp"

namespace quadax {

enum class RytzBranch {
  General,    // bisectors of angle LOM
  Principal,  // OP already perpendicular to OQ
  Circle,     // M coincides with O
};

std::string to_string(RytzBranch b);

struct RytzTrace {
  Vec P, Q;
  Vec M, L;       // on the normal at P, |PM| = |PL| = |OQ|, L = 2P - M
  Vec T, Pprime;  // parallels through P to the two axes, cut with line OM
  std::array<Vec, 2> axis_dirs;     // major, minor; orthonormal
  std::array<double, 2> axis_lengths;  // major >= minor
  RytzBranch branch = RytzBranch::General;
  /// Which of |OT|, |OP'| turned out to be the major semi-axis.
  std::string major_segment;
};

/// Throws Degenerate("degenerate conjugate pair") for collinear P, Q.
RytzTrace rytz_axes(const Vec& P, const Vec& Q);

/// A conjugate pair expressed in an orthonormal basis of its own plane.
struct SectionPair {
  Vec p2, q2;                 // 2D coordinates
  std::array<Vec, 2> basis;   // 3D orthonormal basis of span(x^j, x^k)
  Vec lift(const Vec& v2) const { return basis[0] * v2[0] + basis[1] * v2[1]; }
};

/// The central section through two diameters of a 3D system; the two
/// diameters are a conjugate pair of that section ellipse.
SectionPair section_ellipse(const ConjugateSystem& sys, std::size_t j, std::size_t k);

}  // namespace quadax
