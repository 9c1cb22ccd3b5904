#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sfk/superlinalg.hpp"

namespace sfk {

/// Float residual bound relative to the squared largest entry.
inline constexpr double kMembershipTolerance = 1e-9;

/// Parameters an element was built from: bosonic block and odd exponent.
struct OSpProvenance {
  std::array<GrassmannElement, 4> sl2;  // a, b, c, d
  std::array<GrassmannElement, 2> odd;  // gamma, delta
};

struct Violation {
  std::string name;
  double magnitude;  // largest residual coefficient modulus
};

struct MembershipReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Evaluates every defining condition and reports all failing residuals:
/// the form condition g^st J g = J, Ber(g) = 1 and the six entry relations.
MembershipReport check_membership(const SuperMatrix& m);

/// A 3x3 even supermatrix known to lie in OSp(1|2).
class OSpElement {
 public:
  /// Validates with check_membership; throws MembershipError on failure.
  static OSpElement from_matrix(const SuperMatrix& m);
  static OSpElement identity(int n, Mode mode);

  const SuperMatrix& matrix() const { return m_; }
  const std::optional<OSpProvenance>& provenance() const { return provenance_; }
  int num_generators() const { return m_.num_generators(); }
  Mode mode() const { return m_.mode(); }

  friend bool operator==(const OSpElement& x, const OSpElement& y) { return x.m_ == y.m_; }

 private:
  friend OSpElement from_sl2(const GrassmannElement&, const GrassmannElement&, const GrassmannElement&,
                             const GrassmannElement&);
  friend OSpElement exp_odd(const GrassmannElement&, const GrassmannElement&);
  friend OSpElement compose_general(const GrassmannElement&, const GrassmannElement&, const GrassmannElement&,
                                    const GrassmannElement&, const GrassmannElement&, const GrassmannElement&);
  friend OSpElement operator*(const OSpElement&, const OSpElement&);
  friend OSpElement inverse(const OSpElement&);
  friend OSpElement z2_flip(const OSpElement&);
  friend OSpElement conjugate(const OSpElement&, const OSpElement&);

  OSpElement(SuperMatrix m, std::optional<OSpProvenance> p) : m_(std::move(m)), provenance_(std::move(p)) {}

  SuperMatrix m_;
  std::optional<OSpProvenance> provenance_;
};

/// Block embedding of an SL2 matrix with corner 1. Throws DeterminantError
/// unless ad - bc = 1 (exactly, or within tolerance in float mode).
OSpElement from_sl2(const GrassmannElement& a, const GrassmannElement& b, const GrassmannElement& c,
                    const GrassmannElement& d);
OSpElement from_sl2(const Matrix2& m, int n);

/// exp(gamma q1 + delta q2); the series stops after the quadratic term.
OSpElement exp_odd(const GrassmannElement& gamma, const GrassmannElement& delta);

/// from_sl2(a, b, c, d) * exp_odd(gamma, delta).
OSpElement compose_general(const GrassmannElement& a, const GrassmannElement& b, const GrassmannElement& c,
                           const GrassmannElement& d, const GrassmannElement& gamma, const GrassmannElement& delta);

OSpElement operator*(const OSpElement& g, const OSpElement& h);

/// J^-1 g^st J.
OSpElement inverse(const OSpElement& g);

/// h g h^-1.
OSpElement conjugate(const OSpElement& h, const OSpElement& g);

/// Bodies of the even-even block.
Matrix2 reduce_body(const OSpElement& g);

/// Conjugation by diag(-1, -1, 1): negates the odd entries.
OSpElement z2_flip(const OSpElement& g);

/// Odd generators of the Lie superalgebra as constant matrices.
SuperMatrix odd_generator_q1(int n, Mode mode);
SuperMatrix odd_generator_q2(int n, Mode mode);

}  // namespace sfk
