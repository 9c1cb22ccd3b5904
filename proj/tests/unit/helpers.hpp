#pragma once

#include <doctest.h>

#include "sfk/grassmann.hpp"

namespace sfk::test {

inline Scalar q(std::int64_t n, std::int64_t d = 1) { return Scalar::exact(Rational(n, d)); }

inline GrassmannElement c(int n, std::int64_t num, std::int64_t den = 1) {
  return GrassmannElement::constant(n, q(num, den));
}

inline GrassmannElement th(int n, int i) { return GrassmannElement::generator(n, i, Mode::Exact); }

}  // namespace sfk::test
