#include "quadax/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "quadax/error.hpp"

namespace quadax {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void require_same_field(const QuadFieldElem& x, const QuadFieldElem& y) {
  // Rationals (nu = 0) embed in every field, so only two genuine surds clash.
  if (x.d() != y.d() && !x.is_rational() && !y.is_rational())
    throw invalid_input("mixing Q(sqrt " + to_string(x.d()) + ") and Q(sqrt " + to_string(y.d()) + ")");
}

Int field_of(const QuadFieldElem& x, const QuadFieldElem& y) { return x.is_rational() ? y.d() : x.d(); }

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view s = trim(text);
  const std::string shown(s);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw invalid_input("expected an exact rational p/q, got '" + shown + "'");
  const Int n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw invalid_input("zero denominator in '" + shown + "'");
  Rat r(negative ? Int(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

bool is_squarefree(const Int& n) {
  if (n <= 0) return false;
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

void squarefree_split(const Rat& r, Rat& s, Int& f) {
  if (r <= 0) throw invalid_input("squarefree_split needs a positive rational");
  // p/q = p q / q^2
  const Int den = r.get_den();
  Int m = r.get_num() * den;
  Int root = 1;
  f = 1;
  for (const auto& [p, e] : factorize(m)) {
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
    if (e % 2) f *= p;
  }
  s = Rat(root, den);
  s.canonicalize();
}

bool rational_sqrt(const Rat& r, Rat& out) {
  if (r < 0) return false;
  const Int& n = r.get_num();
  const Int& d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  Int sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  out = Rat(sn, sd);
  out.canonicalize();
  return true;
}

// ---------------------------------------------------------------------------
// Q(sqrt d)

QuadFieldElem::QuadFieldElem(Int d, Rat lam, Rat nu) : d_(std::move(d)), lam_(std::move(lam)), nu_(std::move(nu)) {
  if (d_ < 2 || !is_squarefree(d_)) throw invalid_input("Q(sqrt d) needs a squarefree d > 1, got " + to_string(d_));
  lam_.canonicalize();
  nu_.canonicalize();
}

QuadFieldElem QuadFieldElem::inverse() const {
  const Rat n = norm();
  // d is not a square, so the norm vanishes only at zero
  if (n == 0) throw invalid_input("division by zero in Q(sqrt d)");
  return QuadFieldElem(d_, lam_ / n, -nu_ / n);
}

double QuadFieldElem::to_double() const { return lam_.get_d() + nu_.get_d() * std::sqrt(d_.get_d()); }

QuadFieldElem operator+(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  return QuadFieldElem(field_of(x, y), x.lam_ + y.lam_, x.nu_ + y.nu_);
}

QuadFieldElem operator-(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  return QuadFieldElem(field_of(x, y), x.lam_ - y.lam_, x.nu_ - y.nu_);
}

QuadFieldElem operator-(const QuadFieldElem& x) { return QuadFieldElem(x.d_, -x.lam_, -x.nu_); }

QuadFieldElem operator*(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  const Int d = field_of(x, y);
  return QuadFieldElem(d, x.lam_ * y.lam_ + Rat(d) * x.nu_ * y.nu_, x.lam_ * y.nu_ + x.nu_ * y.lam_);
}

QuadFieldElem operator/(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  const Int d = field_of(x, y);
  return QuadFieldElem(d, x.lam_, x.nu_) * QuadFieldElem(d, y.lam_, y.nu_).inverse();
}

bool operator==(const QuadFieldElem& x, const QuadFieldElem& y) {
  if (x.is_rational() && y.is_rational()) return x.lam_ == y.lam_;
  return x.d_ == y.d_ && x.lam_ == y.lam_ && x.nu_ == y.nu_;
}

std::string to_string(const QuadFieldElem& x) {
  if (x.is_rational()) return to_string(x.lam());
  std::string surd = "sqrt" + to_string(x.d());
  std::string nu = x.nu() == 1 ? surd : x.nu() == -1 ? "-" + surd : to_string(x.nu()) + "*" + surd;
  if (x.lam() == 0) return nu;
  if (nu.front() == '-') return to_string(x.lam()) + " - " + nu.substr(1);
  return to_string(x.lam()) + " + " + nu;
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly::RatPoly(std::vector<Rat> c) : c_(std::move(c)) {
  for (auto& v : c_) v.canonicalize();
  trim();
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat RatPoly::operator()(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RatPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RatPoly RatPoly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::primitive() const {
  if (c_.empty()) return {};
  Int l = 1;
  for (const auto& v : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  std::vector<Int> z;
  Int g = 0;
  for (const auto& v : c_) {
    z.push_back(Int(v.get_num() * (l / v.get_den())));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (c_.back() < 0) g = -g;
  std::vector<Rat> out;
  for (const auto& v : z) out.emplace_back(Int(v / g));
  return RatPoly(std::move(out));
}

void RatPoly::divmod(const RatPoly& d, RatPoly& q, RatPoly& r) const {
  if (d.is_zero()) throw invalid_input("polynomial division by zero");
  std::vector<Rat> rem = c_;
  const int dd = d.degree();
  std::vector<Rat> quo(std::max(0, degree() - dd + 1));
  for (int k = degree() - dd; k >= 0; --k) {
    const Rat t = rem[k + dd] / d.lead();
    quo[k] = t;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= t * d.c_[j];
  }
  q = RatPoly(std::move(quo));
  r = RatPoly(std::move(rem));
}

RatPoly RatPoly::divide_exact(const RatPoly& d) const {
  RatPoly q, r;
  divmod(d, q, r);
  if (!r.is_zero()) throw invalid_input("inexact polynomial division");
  return q;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return RatPoly(std::move(c));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(std::move(c));
}

RatPoly operator*(const Rat& s, const RatPoly& a) {
  std::vector<Rat> c = a.c_;
  for (auto& v : c) v *= s;
  return RatPoly(std::move(c));
}

namespace {

template <class T, class Str>
std::string poly_string(const std::vector<T>& c, const char* var, Str str) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    std::string v = str(c[i]);
    if (v == "0") continue;
    const bool compound = v.find(' ') != std::string::npos;
    bool neg = !compound && v.front() == '-';
    if (neg) v = v.substr(1);
    if (compound) v = "(" + v + ")";
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (i == 0) {
      os << v;
      continue;
    }
    if (v != "1") os << v << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string to_string(const RatPoly& p, const char* var) {
  return poly_string(p.coeffs(), var, [](const Rat& r) { return to_string(r); });
}

// ---------------------------------------------------------------------------
// QFPoly

QFPoly::QFPoly(Int d, std::vector<QuadFieldElem> c) : d_(std::move(d)), c_(std::move(c)) {
  if (d_ < 2 || !is_squarefree(d_)) throw invalid_input("Q(sqrt d) needs a squarefree d > 1, got " + to_string(d_));
  for (auto& v : c_) {
    if (!v.is_rational() && v.d() != d_) throw invalid_input("coefficient outside Q(sqrt " + to_string(d_) + ")");
    v = QuadFieldElem(d_, v.lam(), v.nu());
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QuadFieldElem QFPoly::operator()(const QuadFieldElem& x) const {
  QuadFieldElem acc(d_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly QFPoly::rational_part() const {
  std::vector<Rat> c;
  for (const auto& v : c_) c.push_back(v.lam());
  return RatPoly(std::move(c));
}

RatPoly QFPoly::surd_part() const {
  std::vector<Rat> c;
  for (const auto& v : c_) c.push_back(v.nu());
  return RatPoly(std::move(c));
}

std::string to_string(const QFPoly& p, const char* var) {
  return poly_string(p.coeffs(), var, [](const QuadFieldElem& x) { return to_string(x); });
}

// ---------------------------------------------------------------------------
// Factorisation

namespace {

bool probably_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Brent's cycle detection variant of Pollard rho; returns a nontrivial factor
// of the odd composite n.
Int pollard_brent(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const Int& v) {
      Int w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Int diff = x - y;
          q = q * abs(diff);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Int(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Int n, std::vector<Int>& primes) {
  if (n == 1) return;
  if (probably_prime(n)) {
    primes.push_back(n);
    return;
  }
  const Int f = pollard_brent(n);
  factor_into(f, primes);
  factor_into(Int(n / f), primes);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  Int m = abs(n);
  if (m == 0) throw invalid_input("cannot factor 0");
  std::vector<Int> primes;
  for (unsigned long p = 2; p < 10000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2))
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      primes.emplace_back(p);
      m /= p;
    }
  factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Int, unsigned>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p) ++out.back().second;
    else out.emplace_back(p, 1u);
  }
  return out;
}

std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Rational root test

RationalRootReport rational_root_test(const RatPoly& p) {
  if (p.is_zero()) throw invalid_input("rational root test on the zero polynomial");
  RationalRootReport rep;
  RatPoly q = p.primitive();
  rep.primitive = q;
  // strip x^k
  std::size_t shift = 0;
  while (q[shift] == 0) ++shift;
  if (shift > 0) {
    rep.roots.push_back(0);
    std::vector<Rat> c(q.coeffs().begin() + static_cast<std::ptrdiff_t>(shift), q.coeffs().end());
    q = RatPoly(std::move(c));
  }
  if (q.degree() < 1) return rep;

  const std::vector<Int> num = divisors(q[0].get_num());
  const std::vector<Int> den = divisors(q.lead().get_num());
  // Homogeneous integer evaluation: sum c_i m^i n^(deg - i) = 0.
  const int deg = q.degree();
  std::vector<Int> c;
  for (const auto& v : q.coeffs()) c.push_back(v.get_num());
  auto vanishes = [&](const Int& m, const Int& n) {
    Int acc = 0, npow = 1;
    for (int i = deg; i >= 0; --i) {
      acc = acc * m + c[i] * npow;
      if (i > 0) npow *= n;
    }
    return acc == 0;
  };
  for (const auto& n : den)
    for (const auto& m : num) {
      if (gcd(m, n) != 1) continue;
      for (int s : {1, -1}) {
        const Int ms = s * m;
        ++rep.candidate_count;
        Rat cand(ms, n);
        if (rep.candidates.size() < 256) rep.candidates.push_back(cand);
        if (vanishes(ms, n)) rep.roots.push_back(cand);
      }
    }
  std::sort(rep.roots.begin(), rep.roots.end());
  rep.roots.erase(std::unique(rep.roots.begin(), rep.roots.end()), rep.roots.end());
  return rep;
}

}  // namespace quadax
