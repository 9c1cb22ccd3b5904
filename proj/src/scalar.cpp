#include "sfk/scalar.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sfk/errors.hpp"

namespace sfk {

namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= i128(std::numeric_limits<std::int64_t>::min()) &&
         v <= i128(std::numeric_limits<std::int64_t>::max());
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 m = uabs(v);
  auto hi = static_cast<std::uint64_t>(m >> 64);
  auto lo = static_cast<std::uint64_t>(m);
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &hi);
  r <<= 64;
  mpz_class l;
  mpz_import(l.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &lo);
  r += l;
  if (neg) r = -r;
  return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(
      std::gcd(static_cast<std::uint64_t>(a < 0 ? -static_cast<i128>(a) : a),
               static_cast<std::uint64_t>(b < 0 ? -static_cast<i128>(b) : b)));
}

}  // namespace

Rational::Rational(std::int64_t n) : num_(n), den_(1) {}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  i128 nn = n;
  i128 dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  u128 g = gcd128(uabs(nn), uabs(dd));
  if (g > 1) {
    nn /= i128(g);
    dd /= i128(g);
  }
  if (fits64(nn) && fits64(dd)) {
    num_ = static_cast<std::int64_t>(nn);
    den_ = static_cast<std::int64_t>(dd);
  } else {
    mpq_class q(to_mpz(nn), to_mpz(dd));
    assign_big(std::move(q));
  }
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  assign_big(std::move(c));
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

void Rational::assign_big(mpq_class q) {
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational literal");
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/')) {
      throw DomainError("malformed rational literal '" + s + "'");
    }
  }
  mpq_class q;
  if (s.front() == '+') s.erase(0, 1);
  if (q.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw DomainError("rational with zero denominator");
  q.canonicalize();
  return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), num_);
  mpz_set_si(q.get_den_mpz_t(), den_);
  return q;
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.assign_big(-*big_);
  } else if (num_ == std::numeric_limits<std::int64_t>::min()) {
    r.assign_big(-to_mpq());
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s)) {
        num_ = s;
        return *this;
      }
    }
    i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
      n /= i128(g);
      d /= i128(g);
    }
    if (n == 0) d = 1;
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      assign_big(mpq_class(to_mpz(n), to_mpz(d)));
    }
    return *this;
  }
  assign_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!big_ && !o.big_ && den_ == 1 && o.den_ == 1) {
    std::int64_t s;
    if (!__builtin_sub_overflow(num_, o.num_, &s)) {
      num_ = s;
      return *this;
    }
  }
  return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(num_, o.num_, &p)) {
        num_ = p;
        return *this;
      }
    }
    std::int64_t g1 = gcd64(num_, o.den_);
    std::int64_t g2 = gcd64(o.num_, den_);
    i128 n = i128(num_ / g1) * (o.num_ / g2);
    i128 d = i128(den_ / g2) * (o.den_ / g1);
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      assign_big(mpq_class(to_mpz(n), to_mpz(d)));
    }
    return *this;
  }
  assign_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  if (!o.big_) {
    Rational inv;
    if (o.num_ == std::numeric_limits<std::int64_t>::min()) {
      inv.assign_big(1 / o.to_mpq());
    } else if (o.num_ < 0) {
      inv.num_ = -o.den_;
      inv.den_ = -o.num_;
    } else {
      inv.num_ = o.den_;
      inv.den_ = o.num_;
    }
    return *this *= inv;
  }
  assign_big(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  return a.to_mpq() < b.to_mpq();
}

std::optional<Rational> Rational::sqrt() const {
  if (sign() < 0) return std::nullopt;
  mpq_class q = to_mpq();
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n;
  mpz_class d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(mpq_class(n, d));
}

Rational Rational::approximate(double value, std::int64_t max_den) {
  if (!std::isfinite(value)) throw DomainError("cannot rationalize a non-finite value");
  // Continued-fraction convergents, stopping before the denominator bound.
  bool neg = value < 0;
  double x = std::fabs(value);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(x);
    if (a > 9.0e15) break;
    auto ai = static_cast<std::int64_t>(a);
    i128 p2 = i128(ai) * p1 + p0;
    i128 q2 = i128(ai) * q1 + q0;
    if (q2 > max_den || !fits64(p2)) break;
    p0 = p1;
    q0 = q1;
    p1 = static_cast<std::int64_t>(p2);
    q1 = static_cast<std::int64_t>(q2);
    double frac = x - a;
    if (frac < 1e-300) break;
    x = 1.0 / frac;
    if (std::fabs(static_cast<double>(p1) / static_cast<double>(q1) - std::fabs(value)) <=
        4 * std::numeric_limits<double>::epsilon() * std::fabs(value)) {
      break;
    }
  }
  if (q1 == 0) return Rational(0);
  return Rational(neg ? -p1 : p1, q1);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

const char* to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

Scalar Scalar::exact(Rational re, Rational im) {
  Scalar s;
  s.mode_ = Mode::Exact;
  s.re_ = std::move(re);
  s.im_ = std::move(im);
  return s;
}

Scalar Scalar::floating(std::complex<double> z) {
  Scalar s;
  s.mode_ = Mode::Float;
  s.z_ = z;
  return s;
}

Scalar Scalar::zero(Mode mode) { return mode == Mode::Exact ? exact(0) : floating(0.0); }

Scalar Scalar::one(Mode mode) { return mode == Mode::Exact ? exact(1) : floating(1.0); }

Scalar Scalar::integer(Mode mode, std::int64_t n) {
  return mode == Mode::Exact ? exact(n) : floating(static_cast<double>(n));
}

Scalar Scalar::rational(Mode mode, const Rational& q) {
  return mode == Mode::Exact ? exact(q) : floating(q.to_double());
}

std::complex<double> Scalar::to_complex() const {
  if (mode_ == Mode::Float) return z_;
  return {re_.to_double(), im_.to_double()};
}

Scalar Scalar::to_mode(Mode mode) const {
  if (mode == mode_) return *this;
  if (mode == Mode::Float) return floating(to_complex());
  throw ExactnessError("cannot convert a float scalar to exact mode");
}

bool Scalar::is_zero() const {
  if (mode_ == Mode::Exact) return re_.is_zero() && im_.is_zero();
  return z_ == std::complex<double>(0.0, 0.0);
}

bool Scalar::is_one() const {
  if (mode_ == Mode::Exact) return re_.is_one() && im_.is_zero();
  return z_ == std::complex<double>(1.0, 0.0);
}

void Scalar::require_same_mode(const Scalar& o) const {
  if (mode_ != o.mode_) throw ModeMismatch("scalar arithmetic across exact and float modes");
}

Scalar Scalar::operator-() const {
  if (mode_ == Mode::Float) return floating(-z_);
  return exact(-re_, -im_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_mode(o);
  if (mode_ == Mode::Float) {
    z_ += o.z_;
  } else {
    re_ += o.re_;
    if (!o.im_.is_zero()) im_ += o.im_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_mode(o);
  if (mode_ == Mode::Float) {
    z_ -= o.z_;
  } else {
    re_ -= o.re_;
    if (!o.im_.is_zero()) im_ -= o.im_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_mode(o);
  if (mode_ == Mode::Float) {
    z_ *= o.z_;
    return *this;
  }
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("scalar division by zero");
  if (mode_ == Mode::Float) return floating(1.0 / z_);
  if (im_.is_zero()) return exact(Rational(1) / re_);
  Rational n = re_ * re_ + im_ * im_;
  return exact(re_ / n, -im_ / n);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_mode(o);
  if (mode_ == Mode::Float) {
    if (o.is_zero()) throw DomainError("scalar division by zero");
    z_ /= o.z_;
    return *this;
  }
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mode_ != b.mode_) return false;
  if (a.mode_ == Mode::Float) return a.z_ == b.z_;
  return a.re_ == b.re_ && a.im_ == b.im_;
}

Scalar Scalar::sqrt() const {
  if (mode_ == Mode::Float) return floating(std::sqrt(z_));
  if (im_.is_zero()) {
    if (re_.sign() >= 0) {
      if (auto r = re_.sqrt()) return exact(*r);
    } else if (auto r = (-re_).sqrt()) {
      return exact(0, *r);
    }
    throw ExactnessError("square root of " + re_.str() + " is not rational");
  }
  // w = s + t i with s^2 - t^2 = a, 2 s t = b; s >= 0 picks the principal root.
  auto modulus = (re_ * re_ + im_ * im_).sqrt();
  if (modulus) {
    auto s = ((*modulus + re_) / Rational(2)).sqrt();
    auto t = ((*modulus - re_) / Rational(2)).sqrt();
    if (s && t) {
      Rational tt = im_.sign() < 0 ? -*t : *t;
      return exact(*s, tt);
    }
  }
  throw ExactnessError("square root is not a Gaussian rational");
}

Scalar Scalar::rationalize(std::complex<double> z, std::int64_t max_den) {
  return exact(Rational::approximate(z.real(), max_den), Rational::approximate(z.imag(), max_den));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  if (s.is_exact()) {
    if (s.im().is_zero()) return os << s.re();
    return os << "(" << s.re() << " + " << s.im() << "i)";
  }
  return os << s.to_complex();
}

}  // namespace sfk
