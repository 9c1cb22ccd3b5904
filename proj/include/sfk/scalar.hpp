#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sfk {

/// Reduced fraction. Values whose numerator and denominator fit in 64 bits
/// stay inline; larger values spill into a GMP rational.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  /// Accepts "p", "-p", "p/q". Throws DomainError on malformed input.
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;
  double to_double() const;
  mpq_class to_mpq() const;
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  /// Exact square root if the value is the square of a rational.
  std::optional<Rational> sqrt() const;

  /// Best rational approximation with denominator at most max_den.
  static Rational approximate(double value, std::int64_t max_den);

 private:
  void assign_big(mpq_class q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

enum class Mode { Exact, Float };

const char* to_string(Mode mode);

/// Complex scalar in one of two representations: a Gaussian rational
/// (exact) or a complex double (float). Arithmetic across modes throws.
class Scalar {
 public:
  /// Exact zero.
  Scalar() = default;

  static Scalar exact(Rational re, Rational im = Rational());
  static Scalar floating(std::complex<double> z);
  static Scalar zero(Mode mode);
  static Scalar one(Mode mode);
  static Scalar integer(Mode mode, std::int64_t n);
  static Scalar rational(Mode mode, const Rational& q);

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::Exact; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  /// Value as a complex double regardless of mode.
  std::complex<double> to_complex() const;
  Scalar to_mode(Mode mode) const;
  double abs() const { return std::abs(to_complex()); }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality in exact mode, bitwise equality in float mode.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;

  /// Principal square root. Exact mode throws ExactnessError when the root
  /// is not a Gaussian rational.
  Scalar sqrt() const;

  /// Gaussian rational with each part a best approximation of the float value.
  static Scalar rationalize(std::complex<double> z, std::int64_t max_den);

 private:
  void require_same_mode(const Scalar& o) const;

  Mode mode_ = Mode::Exact;
  Rational re_;
  Rational im_;
  std::complex<double> z_{};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace sfk
