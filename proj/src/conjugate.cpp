#include "quadax/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "quadax/error.hpp"

namespace quadax {

Ellipsoid::Ellipsoid(std::vector<double> semi_axes) : a_(std::move(semi_axes)) {
  if (a_.size() < 2) throw invalid_input("ellipsoid needs at least two semi-axes");
  strict_ = true;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!std::isfinite(a_[i]) || !(a_[i] > 0.0)) throw invalid_input("semi-axes must be positive and finite");
    if (i > 0) {
      if (a_[i] > a_[i - 1]) throw invalid_input("semi-axes must be sorted decreasing");
      if (a_[i] == a_[i - 1]) strict_ = false;
    }
  }
}

double Ellipsoid::residual(const Vec& x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) s += x[i] * x[i] / axis_sq(i);
  return s - 1.0;
}

ConjugateSystem::ConjugateSystem(std::vector<Vec> diameters) : d_(std::move(diameters)) {
  const std::size_t n = d_.size();
  if (n < 2) throw invalid_input("conjugate system needs at least two diameters");
  double prod = 1.0;
  for (const auto& v : d_) {
    if (v.size() != n) throw invalid_input("diameter dimension does not match system size");
    if (!v.all_finite()) throw invalid_input("non-finite diameter coordinate");
    prod *= norm(v);
  }
  if (prod == 0.0 || std::abs(det(matrix())) <= 1e-12 * prod) throw degenerate("degenerate conjugate system");
}

Mat ConjugateSystem::matrix() const { return Mat::from_columns(d_); }

std::string to_string(AxesProvenance p) { return p == AxesProvenance::Oracle ? "oracle" : "chasles"; }

SymMat implied_quadric(const ConjugateSystem& sys) {
  const Mat x = sys.matrix();
  try {
    return SymMat::from(inverse(x * x.transpose()));
  } catch (const Error&) {
    throw degenerate("degenerate conjugate system");
  }
}

double check_conjugacy(const Vec& e, const Vec& f, const Ellipsoid& ell) {
  if (norm(e) == 0.0 || norm(f) == 0.0) throw invalid_input("conjugacy check needs nonzero directions");
  double s = 0.0;
  for (std::size_t i = 0; i < ell.dim(); ++i) s += e[i] * f[i] / ell.axis_sq(i);
  return s;
}

double sum_of_squares(const ConjugateSystem& sys) {
  double s = 0.0;
  for (const auto& v : sys.diameters()) s += norm2(v);
  return s;
}

double volume(const ConjugateSystem& sys) { return det(sys.matrix()); }

Mat random_orthogonal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  // Gram-Schmidt on Gaussian columns is Haar-distributed
  std::vector<Vec> cols;
  while (cols.size() < n) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = gauss(rng);
    for (const auto& c : cols) v -= c * dot(c, v);
    for (const auto& c : cols) v -= c * dot(c, v);
    const double len = norm(v);
    if (len < 1e-6) continue;
    cols.push_back(v / len);
  }
  return Mat::from_columns(cols);
}

RandomSystem random_system(const Ellipsoid& ell, std::uint64_t seed, bool identity_frame, bool identity_choice) {
  const std::size_t n = ell.dim();
  const Mat q = identity_frame ? Mat::identity(n) : random_orthogonal(n, seed * 2654435761u + 17);
  const Mat o = identity_choice ? Mat::identity(n) : random_orthogonal(n, seed * 40503u + 91);
  Vec a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = ell.axis(i);
  const Mat x = q * Mat::diagonal(a) * o;
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(x.col(j));
  return RandomSystem{ConjugateSystem(std::move(cols)), q, o};
}

AxesResult axes_oracle(const ConjugateSystem& sys) {
  const Mat x = sys.matrix();
  const SymEigen eig = sym_eigen(SymMat::from(x * x.transpose()));
  AxesResult r;
  r.provenance = AxesProvenance::Oracle;
  for (std::size_t k = 0; k < sys.dim(); ++k) {
    if (!(eig.values[k] > 0.0)) throw degenerate("degenerate conjugate system");
    r.lengths.push_back(std::sqrt(eig.values[k]));
    r.directions.push_back(eig.vectors.col(k));
  }
  return canonicalize(std::move(r));
}

AxesResult canonicalize(AxesResult r) {
  std::vector<std::size_t> order(r.lengths.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return r.lengths[i] > r.lengths[j]; });
  AxesResult out;
  out.provenance = r.provenance;
  for (std::size_t k : order) {
    Vec d = r.directions[k];
    std::size_t big = 0;
    for (std::size_t i = 1; i < d.size(); ++i)
      if (std::abs(d[i]) > std::abs(d[big])) big = i;
    if (d[big] < 0.0) d *= -1.0;
    out.directions.push_back(d);
    out.lengths.push_back(r.lengths[k]);
  }
  return out;
}

double line_angle(const Vec& a, const Vec& b) {
  const Vec ua = normalized(a), ub = normalized(b);
  // atan2 form stays accurate for tiny angles
  const double s = ua.size() == 3 ? norm(cross(ua, ub)) : std::abs(cross2(ua, ub));
  return std::atan2(s, std::abs(dot(ua, ub)));
}

}  // namespace quadax
