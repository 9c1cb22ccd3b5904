#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sfk/scalar.hpp"

namespace sfk {

inline constexpr int kMaxGenerators = 16;
inline constexpr int kDefaultGenerators = 8;

/// Generator subset; bit i stands for theta_{i+1}.
using Mask = std::uint32_t;

struct Term {
  Mask mask;
  Scalar coeff;
};

/// (-1)^(number of pairs s in S, t in T with s > t).
int reorder_sign(Mask s, Mask t);

/// Size first, then lexicographic on ascending index lists.
bool canonical_less(Mask a, Mask b);

/// Element of the Grassmann algebra on N generators. Terms are kept sorted by
/// mask with no zero coefficients, so structural equality is value equality.
class GrassmannElement {
 public:
  GrassmannElement(int n, Mode mode);

  static GrassmannElement constant(int n, const Scalar& s);
  static GrassmannElement constant(int n, Mode mode, std::int64_t value);
  /// theta_index (1-based) times coeff.
  static GrassmannElement generator(int n, int index, const Scalar& coeff);
  static GrassmannElement generator(int n, int index, Mode mode);
  static GrassmannElement monomial(int n, Mask mask, const Scalar& coeff);
  static GrassmannElement from_terms(int n, Mode mode, std::vector<Term> terms);

  int num_generators() const { return n_; }
  Mode mode() const { return mode_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_even() const;
  bool is_odd() const;
  Scalar coeff(Mask mask) const;

  Scalar body() const;
  GrassmannElement soul() const;
  GrassmannElement even_part() const;
  GrassmannElement odd_part() const;

  /// Largest coefficient modulus; 0 for the zero element.
  double max_abs() const;
  /// Same value with every coefficient converted to float.
  GrassmannElement to_float() const;
  /// Same value embedded in a larger generator budget.
  GrassmannElement widen(int n) const;
  /// Drop float coefficients below tol.
  GrassmannElement chop(double tol) const;

  GrassmannElement operator-() const;
  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  GrassmannElement& operator*=(const GrassmannElement& o);
  GrassmannElement& operator*=(const Scalar& s);

  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b);
  friend bool operator!=(const GrassmannElement& a, const GrassmannElement& b) { return !(a == b); }

 private:
  int n_;
  Mode mode_;
  std::vector<Term> terms_;
};

GrassmannElement gadd(const GrassmannElement& x, const GrassmannElement& y);
GrassmannElement gsub(const GrassmannElement& x, const GrassmannElement& y);
GrassmannElement gmul(const GrassmannElement& x, const GrassmannElement& y);

inline GrassmannElement operator+(const GrassmannElement& x, const GrassmannElement& y) { return gadd(x, y); }
inline GrassmannElement operator-(const GrassmannElement& x, const GrassmannElement& y) { return gsub(x, y); }
inline GrassmannElement operator*(const GrassmannElement& x, const GrassmannElement& y) { return gmul(x, y); }
GrassmannElement operator*(const Scalar& s, const GrassmannElement& x);
GrassmannElement operator*(const GrassmannElement& x, const Scalar& s);

inline Scalar body(const GrassmannElement& x) { return x.body(); }
inline GrassmannElement soul(const GrassmannElement& x) { return x.soul(); }

/// Inverse via the terminating series b^-1 * sum (-b^-1 soul)^k. Throws ZeroBody.
GrassmannElement ginv(const GrassmannElement& x);

/// x^k for k >= 0.
GrassmannElement gpow(const GrassmannElement& x, unsigned k);

enum class AnalyticKind { Exp, Sqrt, Reciprocal, Power };

struct AnalyticFunction {
  AnalyticKind kind;
  std::int64_t exponent = 1;  // used by Power only

  static AnalyticFunction exp() { return {AnalyticKind::Exp}; }
  static AnalyticFunction sqrt() { return {AnalyticKind::Sqrt}; }
  static AnalyticFunction reciprocal() { return {AnalyticKind::Reciprocal}; }
  static AnalyticFunction power(std::int64_t p) { return {AnalyticKind::Power, p}; }
};

/// Taylor expansion of f around the body, truncated by nilpotency of the soul.
GrassmannElement analytic_apply(const AnalyticFunction& f, const GrassmannElement& x);

std::ostream& operator<<(std::ostream& os, const GrassmannElement& x);

}  // namespace sfk
