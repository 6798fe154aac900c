#include "quadax/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadax/error.hpp"

namespace quadax {

// ---------------------------------------------------------------- Vec

Vec& Vec::operator+=(const Vec& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (auto& x : c_) x *= s;
  return *this;
}

bool Vec::all_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double x) { return std::isfinite(x); });
}

Vec Vec::unit(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1.0;
  return v;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator-(Vec a) { return a *= -1.0; }
Vec operator*(Vec a, double s) { return a *= s; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator/(Vec a, double s) { return a *= 1.0 / s; }

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return dot(a, a); }

double norm(const Vec& a) {
  // hypot-style scaling keeps tiny and huge vectors representable
  double m = 0.0;
  for (double x : a.coords()) m = std::max(m, std::abs(x));
  if (m == 0.0 || !std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : a.coords()) s += (x / m) * (x / m);
  return m * std::sqrt(s);
}

Vec normalized(const Vec& a) {
  const double n = norm(a);
  if (n == 0.0) throw degenerate("cannot normalize a zero vector");
  return a / n;
}

Vec cross(const Vec& a, const Vec& b) {
  return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

Vec perp(const Vec& a) { return Vec{-a[1], a[0]}; }

// ---------------------------------------------------------------- Mat

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::from_columns(std::span<const Vec> cols) {
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  Mat m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

Vec Mat::col(std::size_t j) const {
  Vec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row(std::size_t i) const {
  Vec v(c_);
  for (std::size_t j = 0; j < c_; ++j) v[j] = (*this)(i, j);
  return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
}

Mat operator*(const Mat& a, const Mat& b) {
  Mat m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

Vec operator*(const Mat& a, const Vec& v) {
  Vec r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) += b(i, j);
  return m;
}

Mat operator-(const Mat& a, const Mat& b) { return a + b * -1.0; }

Mat operator*(const Mat& a, double s) {
  Mat m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) *= s;
  return m;
}

double frobenius(const Mat& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

Mat outer(const Vec& a, const Vec& b) {
  Mat m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

double det(const Mat& a) {
  Mat m = a;
  const std::size_t n = m.rows();
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (m(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      d = -d;
    }
    d *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

Mat inverse(const Mat& a) {
  const std::size_t n = a.rows();
  Mat m = a;
  Mat inv = Mat::identity(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (std::abs(m(p, k)) <= 1e-14 * scale) throw degenerate("singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(k, j), m(p, j));
      std::swap(inv(k, j), inv(p, j));
    }
    const double piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = m(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

Vec solve(const Mat& a, const Vec& b) { return inverse(a) * b; }

// ---------------------------------------------------------------- SymMat

SymMat SymMat::from(const Mat& m) {
  SymMat s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.rows(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

SymMat SymMat::diagonal(const Vec& d) {
  SymMat s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

Mat SymMat::dense() const {
  Mat m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymMat::bilinear(const Vec& u, const Vec& v) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s += u[i] * (*this)(i, j) * v[j];
  return s;
}

double SymMat::quad(const Vec& u) const { return bilinear(u, u); }

SymEigen sym_eigen(const SymMat& s) {
  if (s.dim() < 2 || s.dim() > 3) throw invalid_input("sym_eigen supports dimension 2 and 3 only");
  return jacobi_eigen(s);
}

SymEigen jacobi_eigen(const SymMat& s) {
  const std::size_t n = s.dim();
  if (n == 0) throw invalid_input("invalid matrix");
  Mat a = s.dense();
  if (!a.all_finite()) throw invalid_input("invalid matrix");
  Mat v = Mat::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off == 0.0 || off <= 1e-40 * diag) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymEigen out{Vec(n), Mat(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    out.vectors.set_col(k, v.col(order[k]));
  }
  return out;
}

// ---------------------------------------------------------------- RealPoly

RealPoly::RealPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double RealPoly::operator()(double x) const {
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

RealPoly RealPoly::derivative() const {
  if (c_.size() <= 1) return RealPoly{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return RealPoly(std::move(d));
}

double RealPoly::scale_at(double x) const {
  double s = 0.0, xp = 1.0;
  for (double c : c_) {
    s += std::abs(c) * xp;
    xp *= std::abs(x);
  }
  return s;
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double bisect(const RealPoly& p, double lo, double hi) {
  int slo = sign_of(p(lo));
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int sm = sign_of(p(mid));
    if (sm == 0) return mid;
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Three guarded Newton steps; a step is kept only if it reduces |p|.
double polish(const RealPoly& p, const RealPoly& dp, double x) {
  for (int k = 0; k < 3; ++k) {
    const double fx = p(x), dfx = dp(x);
    if (fx == 0.0 || dfx == 0.0) break;
    const double nx = x - fx / dfx;
    if (!std::isfinite(nx) || std::abs(p(nx)) >= std::abs(fx)) break;
    x = nx;
  }
  return x;
}

// A root candidate; anchors are tangential roots taken at a critical point,
// which locate a multiple root far more accurately than the sign changes
// that rounding produces around it.
struct Candidate {
  double value;
  bool multiple = false;
  bool anchor = false;
};

std::vector<RealRoot> merge_clusters(std::vector<Candidate> roots) {
  std::sort(roots.begin(), roots.end(), [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  std::vector<Candidate> out;
  for (const auto& r : roots) {
    if (!out.empty()) {
      auto& last = out.back();
      const double sep = 1e-7 * std::max(1.0, std::max(std::abs(last.value), std::abs(r.value)));
      if (std::abs(r.value - last.value) <= sep) {
        if (r.anchor && !last.anchor) last.value = r.value;
        else if (!r.anchor && !last.anchor) last.value = 0.5 * (last.value + r.value);
        last.anchor = last.anchor || r.anchor;
        last.multiple = true;
        continue;
      }
    }
    out.push_back(r);
  }
  std::vector<RealRoot> res;
  for (const auto& c : out) res.push_back({c.value, c.multiple});
  return res;
}

std::vector<RealRoot> roots_all(const RealPoly& p, double tol) {
  const int d = p.degree();
  const auto& c = p.coeffs();
  if (d <= 0) return {};
  if (d == 1) return {{-c[0] / c[1]}};
  if (d == 2) {
    const double a = c[2], b = c[1], cc = c[0];
    const double disc = b * b - 4.0 * a * cc;
    const double mag = b * b + std::abs(4.0 * a * cc);
    if (std::abs(disc) <= 1e-14 * mag) return {{-b / (2.0 * a), true}};
    if (disc < 0.0) return {};
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    std::vector<Candidate> r;
    if (q != 0.0) {
      r.push_back({q / a});
      r.push_back({cc / q});
    } else {
      r.push_back({0.0});
      r.push_back({-b / a});
    }
    return merge_clusters(r);
  }

  // Degree 3 and 4: p is monotone between consecutive critical points.
  const RealPoly dp = p.derivative();
  std::vector<double> crit;
  for (const auto& r : roots_all(dp, tol)) crit.push_back(r.value);

  double bound = 0.0;
  for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(d)]));
  bound += 1.0;

  std::vector<double> knots;
  knots.push_back(-bound);
  for (double x : crit)
    if (x > -bound && x < bound) knots.push_back(x);
  knots.push_back(bound);

  std::vector<Candidate> found;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double lo = knots[k], hi = knots[k + 1];
    const int slo = sign_of(p(lo)), shi = sign_of(p(hi));
    if (slo != 0 && shi != 0 && slo != shi) found.push_back({polish(p, dp, bisect(p, lo, hi))});
  }
  for (double x : crit) {
    if (std::abs(p(x)) <= tol * p.scale_at(x)) found.push_back({x, true, true});
  }
  return merge_clusters(found);
}

}  // namespace

std::vector<RealRoot> real_roots(const RealPoly& p, std::optional<std::pair<double, double>> bracket, double tol) {
  if (p.degree() < 0) throw invalid_input("degenerate polynomial");
  if (p.degree() > 4) throw invalid_input("real_roots supports degree <= 4");
  if (!(tol > 0.0)) throw invalid_input("tolerance must be positive");
  for (double c : p.coeffs())
    if (!std::isfinite(c)) throw invalid_input("non-finite polynomial coefficient");
  auto roots = roots_all(p, tol);
  if (bracket) {
    std::erase_if(roots, [&](const RealRoot& r) { return r.value < bracket->first || r.value > bracket->second; });
  }
  return roots;
}

}  // namespace quadax
