#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "sfk/grassmann.hpp"

namespace sfk {

enum class MatrixParity { Even, Odd, None };

const char* to_string(MatrixParity p);

/// Row/column grading of the (2|1) layout: indices 0 and 1 even, 2 odd.
inline constexpr bool layout_odd(std::size_t i) { return i == 2; }

/// Matrix over the Grassmann algebra. Square 3x3 matrices may carry a
/// declared parity relative to the (2|1) layout; other shapes carry None.
class SuperMatrix {
 public:
  SuperMatrix(std::size_t rows, std::size_t cols, int n, Mode mode, MatrixParity parity = MatrixParity::None);

  static SuperMatrix identity(std::size_t size, int n, Mode mode);
  /// Validates that all entries agree on N and mode and match the parity.
  static SuperMatrix from_rows(const std::vector<std::vector<GrassmannElement>>& rows, MatrixParity parity);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int num_generators() const { return n_; }
  Mode mode() const { return mode_; }
  MatrixParity parity() const { return parity_; }
  bool is_layout_square() const { return rows_ == 3 && cols_ == 3; }

  const GrassmannElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  /// Replaces one entry without re-validating parity; call with_parity to certify.
  void set(std::size_t i, std::size_t j, GrassmannElement value);

  /// Copy carrying a new declared parity; throws ParityError when the entries disagree.
  SuperMatrix with_parity(MatrixParity parity) const;
  /// True when every entry has the grading required by the given parity.
  bool satisfies_parity(MatrixParity parity) const;

  double max_abs() const;
  bool is_zero() const;
  SuperMatrix to_float() const;
  SuperMatrix widen(int n) const;
  SuperMatrix chop(double tol) const;
  /// Entry-wise body.
  std::vector<std::vector<Scalar>> body() const;

  SuperMatrix operator-() const;
  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b);
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b);
  /// Left multiplication of every entry by an even or odd scalar element.
  friend SuperMatrix operator*(const GrassmannElement& s, const SuperMatrix& m);
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);
  friend bool operator!=(const SuperMatrix& a, const SuperMatrix& b) { return !(a == b); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  int n_;
  Mode mode_;
  MatrixParity parity_;
  std::vector<GrassmannElement> entries_;
};

SuperMatrix smul(const SuperMatrix& m, const SuperMatrix& p);
inline SuperMatrix operator*(const SuperMatrix& m, const SuperMatrix& p) { return smul(m, p); }

/// The form matrix [[0,-1,0],[1,0,0],[0,0,-1]].
SuperMatrix form_matrix(int n, Mode mode);
/// Its inverse, [[0,1,0],[-1,0,0],[0,0,-1]].
SuperMatrix form_matrix_inverse(int n, Mode mode);

/// Sign pair (s1, s2) of the block rule [[A^t, s1 C^t], [s2 B^t, D]].
struct SupertransposeSigns {
  int s1;
  int s2;
};
inline constexpr SupertransposeSigns kSupertransposeSigns{-1, +1};

SuperMatrix supertranspose_with_signs(const SuperMatrix& m, SupertransposeSigns signs);
SuperMatrix supertranspose(const SuperMatrix& m);

GrassmannElement supertrace(const SuperMatrix& m);
GrassmannElement berezinian(const SuperMatrix& m);
/// Sum over permutations with factors multiplied in row order.
GrassmannElement leibniz_det(const SuperMatrix& g);

/// Vector in the (2|1) layout.
struct SuperVector {
  std::array<GrassmannElement, 3> v;

  const GrassmannElement& operator[](std::size_t i) const { return v[i]; }
  GrassmannElement& operator[](std::size_t i) { return v[i]; }

  static SuperVector basis(std::size_t i, int n, Mode mode);
  int num_generators() const { return v[0].num_generators(); }
  Mode mode() const { return v[0].mode(); }
  friend bool operator==(const SuperVector& a, const SuperVector& b) { return a.v == b.v; }
};

/// M v with M 3x3.
SuperVector apply(const SuperMatrix& m, const SuperVector& v);
/// B(v, w) = sum v_i J_ij w_j, factors in the written order.
GrassmannElement pairing(const SuperVector& v, const SuperVector& w);
/// Column v times row phi: entries v_i phi_j.
SuperMatrix outer(const SuperVector& v, const SuperVector& phi);

struct LambdaRank {
  std::size_t rank;
  bool nilpotent_residual;
};

/// Elimination over the local ring: only body-invertible pivots are used.
LambdaRank lambda_rank(const SuperMatrix& m);

/// Plain 2x2 matrix of scalars (body-level SL2 work).
struct Matrix2 {
  Scalar a, b, c, d;

  static Matrix2 identity(Mode mode);
  Scalar det() const { return a * d - b * c; }
  Scalar trace() const { return a + d; }
  Matrix2 inverse() const;
  Matrix2 to_float() const;
  Mode mode() const { return a.mode(); }
  double max_abs() const;
  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y);
  friend Matrix2 operator-(const Matrix2& x, const Matrix2& y);
  friend bool operator==(const Matrix2& x, const Matrix2& y);
};

std::ostream& operator<<(std::ostream& os, const SuperMatrix& m);

}  // namespace sfk
