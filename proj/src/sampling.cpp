#include "sfk/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sfk/errors.hpp"

namespace sfk {

std::int64_t Sampler::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("empty integer range");
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

Rational Sampler::rational(std::int64_t height) {
  std::int64_t p = integer(-height, height);
  std::int64_t q = integer(1, height);
  return Rational(p, q);
}

Rational Sampler::nonzero_rational(std::int64_t height) {
  std::int64_t p = integer(1, height) * (coin() ? 1 : -1);
  std::int64_t q = integer(1, height);
  return Rational(p, q);
}

Scalar Sampler::scalar(Mode mode, std::int64_t height, bool complex) {
  Rational re = rational(height);
  Rational im = complex ? rational(height) : Rational(0);
  Scalar s = Scalar::exact(std::move(re), std::move(im));
  return s.to_mode(mode);
}

Scalar Sampler::nonzero_scalar(Mode mode, std::int64_t height, bool complex) {
  Rational re = nonzero_rational(height);
  Rational im = complex ? rational(height) : Rational(0);
  return Scalar::exact(std::move(re), std::move(im)).to_mode(mode);
}

GrassmannElement Sampler::soul(int n, Mode mode, Parity parity, int max_degree, int max_terms) {
  GrassmannElement e(n, mode);
  const int terms = static_cast<int>(integer(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    int degree;
    for (;;) {
      degree = static_cast<int>(integer(1, std::min(max_degree, n)));
      if (parity == Parity::Any || (degree % 2 == 0) == (parity == Parity::Even)) break;
      if (parity == Parity::Even && std::min(max_degree, n) < 2) return e;
    }
    Mask mask = 0;
    while (std::popcount(mask) < degree) mask |= Mask(1) << integer(0, n - 1);
    e += GrassmannElement::monomial(n, mask, nonzero_scalar(mode));
  }
  return e;
}

GrassmannElement Sampler::even(int n, Mode mode, bool invertible) {
  Scalar b = invertible ? nonzero_scalar(mode) : scalar(mode);
  GrassmannElement e = GrassmannElement::constant(n, b);
  if (n >= 2) e += soul(n, mode, Parity::Even, 2);
  return e;
}

GrassmannElement Sampler::odd(int n, Mode mode, int max_degree, int max_terms) {
  return soul(n, mode, Parity::Odd, max_degree, max_terms);
}

GrassmannElement Sampler::mixed(int n, Mode mode) {
  GrassmannElement e = GrassmannElement::constant(n, scalar(mode));
  e += soul(n, mode, Parity::Any, 3);
  return e;
}

std::array<GrassmannElement, 4> Sampler::sl2(int n, Mode mode, bool with_souls) {
  auto draw = [&](bool invertible) {
    return with_souls ? even(n, mode, invertible)
                      : GrassmannElement::constant(n, invertible ? nonzero_scalar(mode) : scalar(mode));
  };
  GrassmannElement r = draw(false);
  GrassmannElement s = draw(false);
  GrassmannElement q = draw(true);
  GrassmannElement qi = ginv(q);
  GrassmannElement one = GrassmannElement::constant(n, Scalar::one(mode));
  return {(one + r * s) * q, r * qi, s * q, qi};
}

Matrix2 Sampler::sl2_body(Mode mode, bool complex) {
  Scalar r = scalar(mode, 7, complex);
  Scalar s = scalar(mode, 7, complex);
  Scalar q = nonzero_scalar(mode, 7, complex);
  Scalar qi = q.inverse();
  Scalar one = Scalar::one(mode);
  return {(one + r * s) * q, r * qi, s * q, qi};
}

OSpElement Sampler::osp(int n, Mode mode, bool with_souls) {
  auto m = sl2(n, mode, with_souls);
  GrassmannElement gamma = odd(n, mode);
  GrassmannElement delta = odd(n, mode);
  return compose_general(m[0], m[1], m[2], m[3], gamma, delta);
}

SuperMatrix Sampler::even_matrix(int n, Mode mode) {
  SuperMatrix m(3, 3, n, mode, MatrixParity::None);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (layout_odd(i) != layout_odd(j)) {
        m.set(i, j, odd(n, mode));
      } else {
        m.set(i, j, even(n, mode, false));
      }
    }
  }
  return m.with_parity(MatrixParity::Even);
}

SuperVector Sampler::even_vector(int n, Mode mode) {
  return SuperVector{{even(n, mode, false), even(n, mode, false), odd(n, mode)}};
}

SuperVector Sampler::odd_vector(int n, Mode mode) {
  return SuperVector{{odd(n, mode), odd(n, mode), even(n, mode, false)}};
}

SuperVector Sampler::mixed_vector(int n, Mode mode) {
  return SuperVector{{mixed(n, mode), mixed(n, mode), mixed(n, mode)}};
}

std::pair<OSpElement, OSpElement> Sampler::triangulable_pair(int n, Mode mode, bool with_souls) {
  const Mode ex = Mode::Exact;
  for (;;) {
    Rational mu = nonzero_rational(5);
    if (mu == Rational(1) || mu == Rational(-1)) continue;
    Rational k = Rational(1) / (mu - Rational(1) / mu);
    Rational y = Rational(integer(1, 6), integer(1, 4));
    Rational x = k / y;
    Rational lam = nonzero_rational(5);
    Rational kap = rational(5);
    // B = C^-1 T C with C = [[0,-1/x],[x,y]], T = [[lam,kap],[0,1/lam]].
    Matrix2 cm{Scalar::exact(0), Scalar::exact(-(Rational(1) / x)), Scalar::exact(x), Scalar::exact(y)};
    Matrix2 t{Scalar::exact(lam), Scalar::exact(kap), Scalar::exact(0), Scalar::exact(Rational(1) / lam)};
    Matrix2 b = cm.inverse() * t * cm;
    const Rational a0 = b.a.re(), b0 = b.b.re(), c0 = b.c.re(), d0 = b.d.re();
    // Other root of c s^2 + k(a-d) s - k^2 b in s = y^2, and the pivot body.
    Rational s1 = y * y;
    if (!c0.is_zero()) {
      Rational s2 = -(k * k * b0) / (c0 * s1);
      double r1 = std::abs(s1.to_double()), r2 = std::abs(s2.to_double());
      if (!(r1 > r2 * (1 + 1e-6))) continue;
    }
    // The odd-row pivot has body 1 - lambda; lambda = -1 can make B central.
    if (lam * lam == Rational(1)) continue;

    GrassmannElement m = GrassmannElement::constant(n, Scalar::exact(mu));
    if (with_souls && n >= 2) m += soul(n, ex, Parity::Even, 2, 2);
    GrassmannElement zero(n, ex);
    OSpElement a_el = from_sl2(m, zero, zero, ginv(m));

    std::array<GrassmannElement, 4> e = {GrassmannElement::constant(n, b.a), GrassmannElement::constant(n, b.b),
                                         GrassmannElement::constant(n, b.c), GrassmannElement::constant(n, b.d)};
    GrassmannElement gamma = zero, delta = zero;
    if (with_souls) {
      // Right factor [[1,r],[0,1]] [[1,0],[s,1]] diag(q, 1/q) with unit body.
      GrassmannElement one = GrassmannElement::constant(n, Scalar::one(ex));
      GrassmannElement r = n >= 2 ? soul(n, ex, Parity::Even, 2, 2) : zero;
      GrassmannElement s = n >= 2 ? soul(n, ex, Parity::Even, 2, 2) : zero;
      GrassmannElement q = n >= 2 ? one + soul(n, ex, Parity::Even, 2, 2) : one;
      GrassmannElement qi = ginv(q);
      std::array<GrassmannElement, 4> u = {(one + r * s) * q, r * qi, s * q, qi};
      e = {e[0] * u[0] + e[1] * u[2], e[0] * u[1] + e[1] * u[3], e[2] * u[0] + e[3] * u[2], e[2] * u[1] + e[3] * u[3]};
      gamma = odd(n, ex);
      delta = odd(n, ex);
    }
    OSpElement b_el = compose_general(e[0], e[1], e[2], e[3], gamma, delta);
    if (mode == Mode::Float) {
      return {OSpElement::from_matrix(a_el.matrix().to_float()), OSpElement::from_matrix(b_el.matrix().to_float())};
    }
    return {a_el, b_el};
  }
}

std::pair<Matrix2, Matrix2> Sampler::sl2_pair(bool parabolic) {
  Matrix2 b = sl2_body(Mode::Float, true);
  if (!parabolic) return {sl2_body(Mode::Float, true), b};
  const double s = coin() ? 1.0 : -1.0;
  Matrix2 j{Scalar::floating(s), Scalar::floating(s * nonzero_rational(4).to_double()), Scalar::floating(0.0),
            Scalar::floating(s)};
  // A short conjugator keeps the entries moderate.
  const Scalar one = Scalar::floating(1.0), zero = Scalar::floating(0.0);
  Matrix2 upper{one, scalar(Mode::Float, 2, true), zero, one};
  Matrix2 lower{one, zero, scalar(Mode::Float, 2, true), one};
  Matrix2 p = upper * lower;
  return {p * j * p.inverse(), b};
}

}  // namespace sfk
