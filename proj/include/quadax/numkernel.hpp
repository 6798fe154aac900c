#pragma once

// Small dense linear algebra and low-degree real polynomial roots.
//
// Everything here is sized for the construction: vectors and matrices of
// dimension 2..n (in practice n <= 3 for eigen work), polynomials of degree
// at most four.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace quadax {

class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double fill = 0.0) : c_(n, fill) {}
  Vec(std::initializer_list<double> xs) : c_(xs) {}
  explicit Vec(std::vector<double> xs) : c_(std::move(xs)) {}

  std::size_t size() const noexcept { return c_.size(); }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> coords() const noexcept { return c_; }
  const std::vector<double>& data() const noexcept { return c_; }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);

  bool all_finite() const;

  static Vec unit(std::size_t n, std::size_t i);

 private:
  std::vector<double> c_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(Vec a, double s);
Vec operator*(double s, Vec a);
Vec operator/(Vec a, double s);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double norm2(const Vec& a);
Vec normalized(const Vec& a);
/// 3D only.
Vec cross(const Vec& a, const Vec& b);
/// 2D only: z-component of the cross product.
double cross2(const Vec& a, const Vec& b);
/// 2D only: rotation by +pi/2.
Vec perp(const Vec& a);

/// Dense row-major matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0) : r_(rows), c_(cols), a_(rows * cols, fill) {}

  static Mat identity(std::size_t n);
  static Mat diagonal(const Vec& d);
  /// Matrix whose columns are the given vectors.
  static Mat from_columns(std::span<const Vec> cols);

  std::size_t rows() const noexcept { return r_; }
  std::size_t cols() const noexcept { return c_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Vec col(std::size_t j) const;
  Vec row(std::size_t i) const;
  void set_col(std::size_t j, const Vec& v);

  Mat transpose() const;
  bool all_finite() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<double> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, double s);
double frobenius(const Mat& a);
Mat outer(const Vec& a, const Vec& b);

/// Determinant by partial-pivot LU.
double det(const Mat& a);
/// Inverse by Gauss-Jordan; throws Degenerate if singular to working precision.
Mat inverse(const Mat& a);
/// Solves a x = b by partial-pivot elimination.
Vec solve(const Mat& a, const Vec& b);

/// Symmetric matrix; only the upper triangle is stored, so symmetry is exact.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(std::size_t n) : n_(n), a_(n * (n + 1) / 2, 0.0) {}
  /// Symmetrises a square matrix as (m + m^T) / 2.
  static SymMat from(const Mat& m);
  static SymMat diagonal(const Vec& d);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { a_[index(i, j)] = v; }

  Mat dense() const;
  double quad(const Vec& u) const;  // u^T S u
  double bilinear(const Vec& u, const Vec& v) const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + j;
  }
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct SymEigen {
  Vec values;   // decreasing
  Mat vectors;  // orthonormal columns, column k pairs with values[k]
};

/// Cyclic Jacobi; n in {2, 3}. Throws InvalidInput("invalid matrix") on
/// non-finite entries.
SymEigen sym_eigen(const SymMat& m);
/// The same cyclic Jacobi iteration for any n; used for the 6x6 normal
/// equations of the conic fit.
SymEigen jacobi_eigen(const SymMat& m);

/// Dense coefficients c0 + c1 x + ... + ck x^k, k <= 4.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(std::vector<double> coeffs);
  RealPoly(std::initializer_list<double> coeffs) : RealPoly(std::vector<double>(coeffs)) {}

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const noexcept { return c_; }
  double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }

  double operator()(double x) const;
  RealPoly derivative() const;
  /// sum |c_i| |x|^i, the natural magnitude for residuals at x.
  double scale_at(double x) const;

 private:
  std::vector<double> c_;
};

struct RealRoot {
  double value;
  bool multiple = false;  // merged cluster or tangential root
};

/// All real roots of p (degree <= 4), sorted. If a bracket is given only
/// roots inside [lo, hi] are returned. Throws InvalidInput("degenerate
/// polynomial") for the zero polynomial.
std::vector<RealRoot> real_roots(const RealPoly& p, std::optional<std::pair<double, double>> bracket = std::nullopt,
                                 double tol = 1e-12);

}  // namespace quadax
