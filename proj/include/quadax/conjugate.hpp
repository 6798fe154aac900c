#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadax/numkernel.hpp"

namespace quadax {

/// Axis-aligned ellipsoid sum x_i^2 / a_i^2 = 1 with a_1 >= ... >= a_n > 0.
class Ellipsoid {
 public:
  /// Throws InvalidInput unless the lengths are positive, finite and
  /// non-increasing.
  explicit Ellipsoid(std::vector<double> semi_axes);

  std::size_t dim() const noexcept { return a_.size(); }
  double axis(std::size_t i) const { return a_[i]; }
  double axis_sq(std::size_t i) const { return a_[i] * a_[i]; }
  const std::vector<double>& semi_axes() const noexcept { return a_; }
  /// a_1 > a_2 > ... > a_n, as required by the confocal machinery.
  bool strict() const noexcept { return strict_; }

  /// sum x_i^2 / a_i^2 - 1
  double residual(const Vec& x) const;

 private:
  std::vector<double> a_;
  bool strict_ = false;
};

/// n semi-diameters x^1..x^n, stored as the columns of X.
class ConjugateSystem {
 public:
  /// Throws Degenerate("degenerate conjugate system") when |det X| is below
  /// 1e-12 * prod |x^i|.
  explicit ConjugateSystem(std::vector<Vec> diameters);

  std::size_t dim() const noexcept { return d_.size(); }
  const Vec& diameter(std::size_t i) const { return d_[i]; }
  const std::vector<Vec>& diameters() const noexcept { return d_; }
  Mat matrix() const;

 private:
  std::vector<Vec> d_;
};

enum class AxesProvenance { Oracle, Chasles };

std::string to_string(AxesProvenance p);

struct AxesResult {
  std::vector<Vec> directions;  // orthonormal, paired with lengths
  std::vector<double> lengths;  // decreasing
  AxesProvenance provenance = AxesProvenance::Oracle;
};

/// M = (X X^T)^{-1}: every diameter satisfies x^i^T M x^j = delta_ij.
SymMat implied_quadric(const ConjugateSystem& sys);

/// sum e_i f_i / a_i^2; zero exactly for conjugate directions.
double check_conjugacy(const Vec& e, const Vec& f, const Ellipsoid& ell);

/// sum |x^i|^2, invariant over all complete conjugate systems.
double sum_of_squares(const ConjugateSystem& sys);
/// det X, equal to +-prod a_i.
double volume(const ConjugateSystem& sys);

/// Random orthogonal n x n matrix (QR of a Gaussian matrix, signs fixed).
Mat random_orthogonal(std::size_t n, std::uint64_t seed);

/// X = Q A O with Q, O random orthogonal. Q is the rotation of the ellipsoid's
/// frame, O the choice of conjugate system. With identity_frame and
/// identity_choice both set, the result is the axis-aligned system.
struct RandomSystem {
  ConjugateSystem system;
  Mat frame;   // Q
  Mat choice;  // O
};
RandomSystem random_system(const Ellipsoid& ell, std::uint64_t seed, bool identity_frame = false,
                           bool identity_choice = false);

/// Ground truth from the spectrum of X X^T = Q A^2 Q^T.
AxesResult axes_oracle(const ConjugateSystem& sys);

/// Flips each direction so its largest-magnitude component is positive and
/// sorts by decreasing length.
AxesResult canonicalize(AxesResult r);

/// Largest principal angle (radians) between the lines spanned by a and b.
double line_angle(const Vec& a, const Vec& b);

}  // namespace quadax
