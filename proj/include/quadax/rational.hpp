#pragma once

// Exact arithmetic: rationals (GMP), the quadratic field Q(sqrt d), dense
// polynomials over both, integer factorisation for divisor enumeration and
// the rational root test.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace quadax {

using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q" or an integer "p". Decimal points, exponents and anything
/// else are rejected with InvalidInput.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
std::string to_string(const Int& z);

/// True when n > 0 is not divisible by the square of a prime.
bool is_squarefree(const Int& n);
/// Writes r = s^2 * f with f squarefree (integer) and s rational, r > 0.
void squarefree_split(const Rat& r, Rat& s, Int& f);
/// Exact square root when r is the square of a rational.
bool rational_sqrt(const Rat& r, Rat& out);

/// lam + nu sqrt(d), d a squarefree integer > 1 (d = 1 is folded into Q by
/// keeping nu = 0).
class QuadFieldElem {
 public:
  QuadFieldElem() = default;
  explicit QuadFieldElem(Int d, Rat lam = 0, Rat nu = 0);

  const Int& d() const noexcept { return d_; }
  const Rat& lam() const noexcept { return lam_; }
  const Rat& nu() const noexcept { return nu_; }
  bool is_zero() const { return lam_ == 0 && nu_ == 0; }
  bool is_rational() const { return nu_ == 0; }
  /// lam^2 - d nu^2
  Rat norm() const { return lam_ * lam_ - Rat(d_) * nu_ * nu_; }
  QuadFieldElem conj() const { return QuadFieldElem(d_, lam_, -nu_); }
  QuadFieldElem inverse() const;
  double to_double() const;

  friend QuadFieldElem operator+(const QuadFieldElem& x, const QuadFieldElem& y);
  friend QuadFieldElem operator-(const QuadFieldElem& x, const QuadFieldElem& y);
  friend QuadFieldElem operator-(const QuadFieldElem& x);
  friend QuadFieldElem operator*(const QuadFieldElem& x, const QuadFieldElem& y);
  friend QuadFieldElem operator/(const QuadFieldElem& x, const QuadFieldElem& y);
  friend bool operator==(const QuadFieldElem& x, const QuadFieldElem& y);

 private:
  Int d_ = 2;
  Rat lam_, nu_;
};

std::string to_string(const QuadFieldElem& x);

/// Dense c0 + c1 x + ... over Q, trailing zeros trimmed.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> c);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const noexcept { return c_; }
  Rat operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }
  bool is_zero() const { return c_.empty(); }

  Rat operator()(const Rat& x) const;
  double eval(double x) const;
  RatPoly derivative() const;
  /// Same roots, integer coefficients with gcd 1 and positive leading term.
  RatPoly primitive() const;
  /// Exact division; throws when the remainder is nonzero.
  RatPoly divide_exact(const RatPoly& d) const;
  void divmod(const RatPoly& d, RatPoly& q, RatPoly& r) const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const Rat& s, const RatPoly& a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rat> c_;
};

std::string to_string(const RatPoly& p, const char* var = "x");

/// Dense polynomial over Q(sqrt d).
class QFPoly {
 public:
  QFPoly() = default;
  QFPoly(Int d, std::vector<QuadFieldElem> c);

  const Int& d() const noexcept { return d_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<QuadFieldElem>& coeffs() const noexcept { return c_; }
  QuadFieldElem operator()(const QuadFieldElem& x) const;
  /// p = A + B sqrt d coefficientwise: A collects the lam parts, B the nu
  /// parts, so p(x) = A(x) + B(x) sqrt d for rational x.
  RatPoly rational_part() const;
  RatPoly surd_part() const;

 private:
  Int d_ = 2;
  std::vector<QuadFieldElem> c_;
};

std::string to_string(const QFPoly& p, const char* var = "x");

/// Prime factorisation of |n| (trial division, Miller-Rabin, Pollard-Brent).
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);
/// All positive divisors of |n| (n != 0), sorted.
std::vector<Int> divisors(const Int& n);

struct RationalRootReport {
  std::vector<Rat> roots;       // distinct, sorted
  std::vector<Rat> candidates;  // tested values, capped at 256 for the witness
  std::size_t candidate_count = 0;
  RatPoly primitive;            // the integer polynomial the candidates came from
};

/// Exhaustive rational root test on the primitive integer polynomial.
/// A zero constant term contributes the root 0 and is divided out.
RationalRootReport rational_root_test(const RatPoly& p);

}  // namespace quadax
