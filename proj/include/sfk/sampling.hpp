#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "sfk/osp.hpp"

namespace sfk {

inline constexpr std::uint64_t kDefaultSeed = 0xF2C3;

enum class Parity { Even, Odd, Any };

/// Seeded pseudo-random source. Integer draws use plain modulo reduction of
/// mt19937_64 output so sequences are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() & 1u) != 0; }

  /// p/q with |p| <= height, 1 <= q <= height.
  Rational rational(std::int64_t height = 7);
  Rational nonzero_rational(std::int64_t height = 7);
  /// Gaussian rational; the imaginary part is zero unless complex is set.
  Scalar scalar(Mode mode, std::int64_t height = 7, bool complex = false);
  Scalar nonzero_scalar(Mode mode, std::int64_t height = 7, bool complex = false);

  /// Random combination of 1..max_terms monomials of the given parity with
  /// degree between 1 and max_degree.
  GrassmannElement soul(int n, Mode mode, Parity parity, int max_degree = 2, int max_terms = 3);
  /// Body (nonzero when requested) plus an even soul.
  GrassmannElement even(int n, Mode mode, bool invertible = true);
  GrassmannElement odd(int n, Mode mode, int max_degree = 1, int max_terms = 3);
  /// Inhomogeneous element: body, even soul and odd soul.
  GrassmannElement mixed(int n, Mode mode);

  /// SL2 matrix over the even subalgebra with determinant exactly 1, built
  /// as [[1,r],[0,1]] [[1,0],[s,1]] diag(q, 1/q). Souls are omitted when
  /// with_souls is false.
  std::array<GrassmannElement, 4> sl2(int n, Mode mode, bool with_souls = true);
  Matrix2 sl2_body(Mode mode, bool complex = false);
  /// compose_general with random bosonic block and odd parameters.
  OSpElement osp(int n, Mode mode, bool with_souls = true);
  /// 3x3 matrix of declared even parity.
  SuperMatrix even_matrix(int n, Mode mode);
  /// Even vector: even entries in slots 1, 2 and an odd entry in slot 3.
  SuperVector even_vector(int n, Mode mode);
  /// Odd vector: odd entries in slots 1, 2 and an even entry in slot 3.
  SuperVector odd_vector(int n, Mode mode);
  SuperVector mixed_vector(int n, Mode mode);

  /// Pair (diag(m, 1/m, 1), B) whose triangulating root of largest modulus is
  /// a positive rational, so exact-mode triangulation and the float SL2
  /// triangulation of the bodies select the same conjugator.
  std::pair<OSpElement, OSpElement> triangulable_pair(int n, Mode mode, bool with_souls = true);
  /// Complex SL2 pair for float triangulation; the first matrix is parabolic
  /// (trace +-2, not central) when parabolic is set.
  std::pair<Matrix2, Matrix2> sl2_pair(bool parabolic);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sfk
