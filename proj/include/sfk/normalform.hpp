#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfk/osp.hpp"

namespace sfk {

inline constexpr double kTriangulationTolerance = 1e-9;

/// Polynomial in one even unknown with Grassmann coefficients, ascending degree.
class LambdaPolynomial {
 public:
  explicit LambdaPolynomial(std::vector<GrassmannElement> coeffs);

  const std::vector<GrassmannElement>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int num_generators() const { return n_; }
  Mode mode() const { return mode_; }

  GrassmannElement operator()(const GrassmannElement& y) const;
  Scalar eval_body(const Scalar& y) const;
  LambdaPolynomial derivative() const;

 private:
  int n_;
  Mode mode_;
  std::vector<GrassmannElement> coeffs_;
};

/// Newton iteration from a simple body root into the nilpotent directions.
/// Exact mode returns a root with P(y) = 0 exactly.
GrassmannElement hensel_lift_root(const LambdaPolynomial& p, const Scalar& y0);

enum class Branch { Diagonalizable, Unipotent, Diagonal };

const char* to_string(Branch b);

/// Output of a simultaneous triangulation. normalA is lower triangular with
/// unit (2,1) entry and odd column/row carrying psi; normalB is upper
/// triangular carrying kappa and xi.
struct NormalFormRecord {
  Branch branch = Branch::Diagonalizable;
  SuperMatrix conjugator{3, 3, 1, Mode::Float};
  SuperMatrix normal_a{3, 3, 1, Mode::Float};
  SuperMatrix normal_b{3, 3, 1, Mode::Float};
  GrassmannElement lambda{1, Mode::Float};
  GrassmannElement mu{1, Mode::Float};
  GrassmannElement kappa{1, Mode::Float};
  GrassmannElement psi{1, Mode::Float};
  GrassmannElement xi{1, Mode::Float};
  /// Parameters of the conjugator [[0,-1/x,0],[x,y,nu],[0,-nu/x,1]]; for
  /// the SL2 branches x and y describe the final triangulating step.
  GrassmannElement x{1, Mode::Float};
  GrassmannElement y{1, Mode::Float};
  GrassmannElement nu{1, Mode::Float};
};

/// Body-level triangulation of a pair in SL(2, C), computed in float mode.
/// Matrices are returned embedded block-diagonally in 3x3 form.
NormalFormRecord sl2_triangulate(const Matrix2& a, const Matrix2& b);

/// Triangulation of a pair with a0 = diag(mu, 1/mu, 1).
NormalFormRecord osp_triangulate(const OSpElement& a0, const OSpElement& b0);

/// The sextic in y whose roots give the triangulating conjugator for a pair
/// with a0 = diag(mu, 1/mu, 1). Exposed for diagnostics.
LambdaPolynomial osp_conjugator_polynomial(const OSpElement& a0, const OSpElement& b0);

struct FrickeCoords {
  GrassmannElement x;        // lambda + 1/lambda
  GrassmannElement y;        // mu + 1/mu
  GrassmannElement z;        // lambda mu + 1/(lambda mu) + kappa
  GrassmannElement delta_x;  // lambda - 1/lambda
  GrassmannElement delta_y;  // mu - 1/mu
};

FrickeCoords fricke_coords(const GrassmannElement& lambda, const GrassmannElement& mu, const GrassmannElement& kappa);

}  // namespace sfk
