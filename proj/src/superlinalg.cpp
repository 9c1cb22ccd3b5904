#include "sfk/superlinalg.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "sfk/errors.hpp"

namespace sfk {

namespace {

constexpr double kFloatPivotTol = 1e-10;
constexpr double kFloatZeroTol = 1e-9;

MatrixParity product_parity(MatrixParity a, MatrixParity b) {
  if (a == MatrixParity::None || b == MatrixParity::None) return MatrixParity::None;
  return a == b ? MatrixParity::Even : MatrixParity::Odd;
}

MatrixParity sum_parity(MatrixParity a, MatrixParity b) { return a == b ? a : MatrixParity::None; }

void check_same_ring(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.mode() != b.mode()) throw ModeMismatch("matrices in different scalar modes");
  if (a.num_generators() != b.num_generators()) throw ShapeError("matrices over different generator budgets");
}

void require_layout_even(const SuperMatrix& m, const char* op) {
  if (!m.is_layout_square()) throw ShapeError(std::string(op) + " needs a 3x3 matrix");
  if (m.parity() != MatrixParity::Even) throw ParityError(std::string(op) + " needs a matrix declared even");
}

}  // namespace

const char* to_string(MatrixParity p) {
  switch (p) {
    case MatrixParity::Even:
      return "even";
    case MatrixParity::Odd:
      return "odd";
    case MatrixParity::None:
      break;
  }
  return "none";
}

SuperMatrix::SuperMatrix(std::size_t rows, std::size_t cols, int n, Mode mode, MatrixParity parity)
    : rows_(rows), cols_(cols), n_(n), mode_(mode), parity_(parity),
      entries_(rows * cols, GrassmannElement(n, mode)) {
  if (parity != MatrixParity::None && !is_layout_square()) {
    throw ShapeError("only 3x3 matrices carry a declared parity");
  }
}

SuperMatrix SuperMatrix::identity(std::size_t size, int n, Mode mode) {
  SuperMatrix m(size, size, n, mode, size == 3 ? MatrixParity::Even : MatrixParity::None);
  for (std::size_t i = 0; i < size; ++i) m.entries_[i * size + i] = GrassmannElement::constant(n, Scalar::one(mode));
  return m;
}

SuperMatrix SuperMatrix::from_rows(const std::vector<std::vector<GrassmannElement>>& rows, MatrixParity parity) {
  if (rows.empty() || rows.front().empty()) throw ShapeError("empty matrix");
  const std::size_t r = rows.size();
  const std::size_t c = rows.front().size();
  const int n = rows.front().front().num_generators();
  const Mode mode = rows.front().front().mode();
  SuperMatrix m(r, c, n, mode, MatrixParity::None);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ShapeError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      const GrassmannElement& e = rows[i][j];
      if (e.mode() != mode) throw ModeMismatch("matrix entries in different scalar modes");
      if (e.num_generators() != n) throw ShapeError("matrix entries over different generator budgets");
      m.entries_[i * c + j] = e;
    }
  }
  return m.with_parity(parity);
}

void SuperMatrix::set(std::size_t i, std::size_t j, GrassmannElement value) {
  if (value.mode() != mode_) throw ModeMismatch("entry in the wrong scalar mode");
  if (value.num_generators() != n_) throw ShapeError("entry over the wrong generator budget");
  entries_.at(i * cols_ + j) = std::move(value);
}

bool SuperMatrix::satisfies_parity(MatrixParity parity) const {
  if (parity == MatrixParity::None) return true;
  if (!is_layout_square()) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      bool odd_slot = layout_odd(i) != layout_odd(j);
      if (parity == MatrixParity::Odd) odd_slot = !odd_slot;
      const GrassmannElement& e = (*this)(i, j);
      if (odd_slot ? !e.is_odd() : !e.is_even()) return false;
    }
  }
  return true;
}

SuperMatrix SuperMatrix::with_parity(MatrixParity parity) const {
  if (parity != MatrixParity::None && !is_layout_square()) throw ShapeError("only 3x3 matrices carry a declared parity");
  if (!satisfies_parity(parity)) {
    throw ParityError(std::string("entries do not match declared parity ") + to_string(parity));
  }
  SuperMatrix m(*this);
  m.parity_ = parity;
  return m;
}

double SuperMatrix::max_abs() const {
  double r = 0.0;
  for (const auto& e : entries_) r = std::max(r, e.max_abs());
  return r;
}

bool SuperMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const GrassmannElement& e) { return e.is_zero(); });
}

SuperMatrix SuperMatrix::to_float() const {
  SuperMatrix m(rows_, cols_, n_, Mode::Float, parity_);
  for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k].to_float();
  return m;
}

SuperMatrix SuperMatrix::widen(int n) const {
  SuperMatrix m(rows_, cols_, n, mode_, parity_);
  for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k].widen(n);
  return m;
}

SuperMatrix SuperMatrix::chop(double tol) const {
  SuperMatrix m(*this);
  for (auto& e : m.entries_) e = e.chop(tol);
  return m;
}

std::vector<std::vector<Scalar>> SuperMatrix::body() const {
  std::vector<std::vector<Scalar>> b(rows_, std::vector<Scalar>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) b[i][j] = (*this)(i, j).body();
  }
  return b;
}

SuperMatrix SuperMatrix::operator-() const {
  SuperMatrix m(*this);
  for (auto& e : m.entries_) e = -e;
  return m;
}

SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
  check_same_ring(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum with mismatched shapes");
  SuperMatrix m(a);
  m.parity_ = sum_parity(a.parity_, b.parity_);
  for (std::size_t k = 0; k < m.entries_.size(); ++k) m.entries_[k] += b.entries_[k];
  return m;
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) { return a + (-b); }

SuperMatrix operator*(const GrassmannElement& s, const SuperMatrix& m) {
  SuperMatrix r(m);
  for (auto& e : r.entries_) e = s * e;
  if (s.is_odd() && !s.is_zero()) {
    r.parity_ = m.parity_ == MatrixParity::Even ? MatrixParity::Odd
                : m.parity_ == MatrixParity::Odd ? MatrixParity::Even
                                                 : MatrixParity::None;
  } else if (!s.is_even()) {
    r.parity_ = MatrixParity::None;
  }
  return r;
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.n_ == b.n_ && a.mode_ == b.mode_ && a.entries_ == b.entries_;
}

SuperMatrix smul(const SuperMatrix& m, const SuperMatrix& p) {
  check_same_ring(m, p);
  if (m.cols() != p.rows()) throw ShapeError("matrix product with incompatible shapes");
  SuperMatrix r(m.rows(), p.cols(), m.num_generators(), m.mode(), MatrixParity::None);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      GrassmannElement acc(m.num_generators(), m.mode());
      for (std::size_t k = 0; k < m.cols(); ++k) {
        if (m(i, k).is_zero() || p(k, j).is_zero()) continue;
        acc += gmul(m(i, k), p(k, j));
      }
      r.set(i, j, std::move(acc));
    }
  }
  MatrixParity parity = product_parity(m.parity(), p.parity());
  if (parity != MatrixParity::None && r.is_layout_square()) return r.with_parity(parity);
  return r;
}

SuperMatrix form_matrix(int n, Mode mode) {
  SuperMatrix j(3, 3, n, mode, MatrixParity::Even);
  j.set(0, 1, GrassmannElement::constant(n, mode, -1));
  j.set(1, 0, GrassmannElement::constant(n, mode, 1));
  j.set(2, 2, GrassmannElement::constant(n, mode, -1));
  return j;
}

SuperMatrix form_matrix_inverse(int n, Mode mode) {
  SuperMatrix j(3, 3, n, mode, MatrixParity::Even);
  j.set(0, 1, GrassmannElement::constant(n, mode, 1));
  j.set(1, 0, GrassmannElement::constant(n, mode, -1));
  j.set(2, 2, GrassmannElement::constant(n, mode, -1));
  return j;
}

SuperMatrix supertranspose_with_signs(const SuperMatrix& m, SupertransposeSigns signs) {
  require_layout_even(m, "supertranspose");
  SuperMatrix r(3, 3, m.num_generators(), m.mode(), MatrixParity::None);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) r.set(i, j, m(j, i));
  }
  for (std::size_t i = 0; i < 2; ++i) {
    r.set(i, 2, signs.s1 > 0 ? m(2, i) : -m(2, i));
    r.set(2, i, signs.s2 > 0 ? m(i, 2) : -m(i, 2));
  }
  r.set(2, 2, m(2, 2));
  return r.with_parity(MatrixParity::Even);
}

SuperMatrix supertranspose(const SuperMatrix& m) { return supertranspose_with_signs(m, kSupertransposeSigns); }

GrassmannElement supertrace(const SuperMatrix& m) {
  if (!m.is_layout_square()) throw ShapeError("supertrace needs a 3x3 matrix");
  return m(0, 0) + m(1, 1) - m(2, 2);
}

GrassmannElement berezinian(const SuperMatrix& m) {
  require_layout_even(m, "berezinian");
  if (m(2, 2).body().is_zero()) throw ZeroBody("berezinian needs an invertible odd-odd block");
  GrassmannElement dinv = ginv(m(2, 2));
  GrassmannElement s[2][2] = {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) s[i][j] -= m(i, 2) * dinv * m(2, j);
  }
  GrassmannElement det2 = s[0][0] * s[1][1] - s[0][1] * s[1][0];
  return det2 * dinv;
}

GrassmannElement leibniz_det(const SuperMatrix& g) {
  if (g.rows() != g.cols()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t r = g.rows();
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  GrassmannElement total(g.num_generators(), g.mode());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) inversions += perm[i] > perm[j];
    }
    GrassmannElement prod = GrassmannElement::constant(g.num_generators(), Scalar::one(g.mode()));
    for (std::size_t i = 0; i < r && !prod.is_zero(); ++i) prod = prod * g(i, perm[i]);
    if (inversions % 2) {
      total -= prod;
    } else {
      total += prod;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

SuperVector SuperVector::basis(std::size_t i, int n, Mode mode) {
  SuperVector v{{GrassmannElement(n, mode), GrassmannElement(n, mode), GrassmannElement(n, mode)}};
  v.v.at(i) = GrassmannElement::constant(n, Scalar::one(mode));
  return v;
}

SuperVector apply(const SuperMatrix& m, const SuperVector& v) {
  if (!m.is_layout_square()) throw ShapeError("apply needs a 3x3 matrix");
  SuperVector r = SuperVector::basis(0, v.num_generators(), v.mode());
  for (std::size_t i = 0; i < 3; ++i) {
    GrassmannElement acc(v.num_generators(), v.mode());
    for (std::size_t k = 0; k < 3; ++k) acc += m(i, k) * v[k];
    r[i] = std::move(acc);
  }
  return r;
}

GrassmannElement pairing(const SuperVector& v, const SuperVector& w) {
  // J has entries J12 = -1, J21 = 1, J33 = -1.
  return -(v[0] * w[1]) + v[1] * w[0] - v[2] * w[2];
}

SuperMatrix outer(const SuperVector& v, const SuperVector& phi) {
  SuperMatrix m(3, 3, v.num_generators(), v.mode(), MatrixParity::None);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m.set(i, j, v[i] * phi[j]);
  }
  return m;
}

LambdaRank lambda_rank(const SuperMatrix& input) {
  const std::size_t rows = input.rows();
  const std::size_t cols = input.cols();
  const bool exact = input.mode() == Mode::Exact;
  std::vector<std::vector<GrassmannElement>> a(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i].push_back(input(i, j));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rows;
    double best = 0.0;
    for (std::size_t i = rank; i < rows; ++i) {
      Scalar b = a[i][col].body();
      if (exact) {
        if (!b.is_zero()) {
          pivot = i;
          break;
        }
      } else if (b.abs() > kFloatPivotTol && b.abs() > best) {
        best = b.abs();
        pivot = i;
      }
    }
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    GrassmannElement pinv = ginv(a[rank][col]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][col].is_zero()) continue;
      GrassmannElement factor = a[i][col] * pinv;
      for (std::size_t j = col; j < cols; ++j) {
        if (!a[rank][j].is_zero()) a[i][j] -= factor * a[rank][j];
      }
      if (!exact) {
        for (std::size_t j = col; j < cols; ++j) a[i][j] = a[i][j].chop(1e-13);
      }
    }
    ++rank;
  }
  bool residual = false;
  for (std::size_t i = rank; i < rows && !residual; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (exact ? !a[i][j].is_zero() : a[i][j].max_abs() > kFloatZeroTol) {
        residual = true;
        break;
      }
    }
  }
  return {rank, residual};
}

Matrix2 Matrix2::identity(Mode mode) {
  return {Scalar::one(mode), Scalar::zero(mode), Scalar::zero(mode), Scalar::one(mode)};
}

Matrix2 Matrix2::inverse() const {
  Scalar dinv = det().inverse();
  return {d * dinv, -b * dinv, -c * dinv, a * dinv};
}

Matrix2 Matrix2::to_float() const {
  return {a.to_mode(Mode::Float), b.to_mode(Mode::Float), c.to_mode(Mode::Float), d.to_mode(Mode::Float)};
}

double Matrix2::max_abs() const { return std::max({a.abs(), b.abs(), c.abs(), d.abs()}); }

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Matrix2 operator-(const Matrix2& x, const Matrix2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }

bool operator==(const Matrix2& x, const Matrix2& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

std::ostream& operator<<(std::ostream& os, const SuperMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "") << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  return os << "]";
}

}  // namespace sfk
