#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sfk/grassmann.hpp"

namespace sfk {

struct Variable {
  std::string name;
  bool odd = false;
  /// Vector copy the variable belongs to; used for multidegrees.
  int block = 0;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Exponent per variable; odd variables carry 0 or 1.
using Exponents = std::vector<unsigned>;

/// Polynomial in graded coordinates with scalar coefficients. Each monomial
/// is stored with its factors in variable-index order; the sign produced by
/// reordering odd factors is folded into the coefficient.
class SuperPolynomial {
 public:
  SuperPolynomial(std::vector<Variable> vars, Mode mode);
  static SuperPolynomial constant(std::vector<Variable> vars, const Scalar& s);
  static SuperPolynomial variable(std::vector<Variable> vars, std::size_t index, Mode mode);
  /// Throws DomainError when an odd exponent exceeds 1.
  static SuperPolynomial monomial(std::vector<Variable> vars, const Exponents& e, const Scalar& coeff);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  Mode mode() const { return mode_; }
  bool is_zero() const { return terms_.empty(); }

  /// Common total degree of all terms, or -1 when the terms disagree. The
  /// zero polynomial reports 0.
  int homogeneous_degree() const;
  /// Degree of one monomial restricted to each block, indexed by block id.
  std::vector<unsigned> multidegree(const Exponents& e) const;

  /// Values for odd variables must be odd and for even variables even.
  GrassmannElement evaluate(const std::vector<GrassmannElement>& values) const;
  /// Replace variable i by images[i]; images must respect parity and share
  /// one variable list.
  SuperPolynomial substitute(const std::vector<SuperPolynomial>& images) const;

  SuperPolynomial operator-() const;
  SuperPolynomial& operator+=(const SuperPolynomial& o);
  SuperPolynomial& operator-=(const SuperPolynomial& o);
  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);
  friend SuperPolynomial operator*(const Scalar& s, const SuperPolynomial& p);
  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b);
  friend bool operator!=(const SuperPolynomial& a, const SuperPolynomial& b) { return !(a == b); }

  std::string str() const;

 private:
  void add_term(const Exponents& e, const Scalar& c);
  void require_compatible(const SuperPolynomial& o) const;

  std::vector<Variable> vars_;
  Mode mode_;
  std::map<Exponents, Scalar> terms_;
};

/// Variables of d copies of a vector: copy k of variable x is named x^(k)
/// and placed in block k. Copies are laid out copy-major.
std::vector<Variable> copy_variables(const std::vector<Variable>& base, std::size_t copies);

/// Full polarization of a homogeneous f of degree d: substitute
/// x = sum_k t_k x^(k) and keep the coefficient of t_1...t_d. Throws
/// DomainError on non-homogeneous input.
SuperPolynomial polarize(const SuperPolynomial& f);

/// Full restitution F(v, ..., v) of a multilinear F over copy_variables(base, d).
/// Throws DomainError when F is not multilinear in the copies.
SuperPolynomial restitute(const SuperPolynomial& F, const std::vector<Variable>& base);

}  // namespace sfk
