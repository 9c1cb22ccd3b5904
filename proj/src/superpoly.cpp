#include "sfk/superpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sfk/errors.hpp"

namespace sfk {

namespace {

// Sign and validity of the canonical product of two monomials.
int product_sign(const std::vector<Variable>& vars, const Exponents& x, const Exponents& y) {
  int swaps = 0;
  std::size_t odd_in_x_after = 0;  // odd factors of x with index > j
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].odd && x[i] > 0) ++odd_in_x_after;
  }
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].odd && x[j] > 0) --odd_in_x_after;
    if (!vars[j].odd || y[j] == 0) continue;
    if (x[j] > 0) return 0;
    swaps += static_cast<int>(odd_in_x_after);
  }
  return swaps % 2 == 0 ? 1 : -1;
}

unsigned total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

}  // namespace

SuperPolynomial::SuperPolynomial(std::vector<Variable> vars, Mode mode) : vars_(std::move(vars)), mode_(mode) {}

SuperPolynomial SuperPolynomial::constant(std::vector<Variable> vars, const Scalar& s) {
  SuperPolynomial p(std::move(vars), s.mode());
  p.add_term(Exponents(p.vars_.size(), 0), s);
  return p;
}

SuperPolynomial SuperPolynomial::variable(std::vector<Variable> vars, std::size_t index, Mode mode) {
  if (index >= vars.size()) throw DomainError("variable index out of range");
  Exponents e(vars.size(), 0);
  e[index] = 1;
  return monomial(std::move(vars), e, Scalar::one(mode));
}

SuperPolynomial SuperPolynomial::monomial(std::vector<Variable> vars, const Exponents& e, const Scalar& coeff) {
  if (e.size() != vars.size()) throw ShapeError("exponent vector does not match the variables");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].odd && e[i] > 1) throw DomainError("odd variable " + vars[i].name + " squared");
  }
  SuperPolynomial p(std::move(vars), coeff.mode());
  p.add_term(e, coeff);
  return p;
}

void SuperPolynomial::add_term(const Exponents& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void SuperPolynomial::require_compatible(const SuperPolynomial& o) const {
  if (o.mode_ != mode_) throw ModeMismatch("polynomials in different modes");
  if (o.vars_ != vars_) throw ShapeError("polynomials over different variables");
}

int SuperPolynomial::homogeneous_degree() const {
  if (terms_.empty()) return 0;
  const unsigned d = total(terms_.begin()->first);
  for (const auto& [e, c] : terms_) {
    if (total(e) != d) return -1;
  }
  return static_cast<int>(d);
}

std::vector<unsigned> SuperPolynomial::multidegree(const Exponents& e) const {
  int blocks = 0;
  for (const auto& v : vars_) blocks = std::max(blocks, v.block + 1);
  std::vector<unsigned> out(static_cast<std::size_t>(blocks), 0);
  for (std::size_t i = 0; i < vars_.size(); ++i) out[static_cast<std::size_t>(vars_[i].block)] += e[i];
  return out;
}

GrassmannElement SuperPolynomial::evaluate(const std::vector<GrassmannElement>& values) const {
  if (values.size() != vars_.size()) throw ShapeError("wrong number of values");
  if (values.empty()) {
    throw ShapeError("evaluation needs the generator count from at least one value");
  }
  const int n = values[0].num_generators();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].mode() != mode_) throw ModeMismatch("value mode differs from the polynomial");
    bool ok = vars_[i].odd ? values[i].is_odd() : values[i].is_even();
    if (!ok && !values[i].is_zero()) throw ParityError("value for " + vars_[i].name + " has the wrong parity");
  }
  GrassmannElement sum(n, mode_);
  for (const auto& [e, c] : terms_) {
    GrassmannElement term = GrassmannElement::constant(n, c);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term = term * values[i];
    }
    sum += term;
  }
  return sum;
}

SuperPolynomial SuperPolynomial::substitute(const std::vector<SuperPolynomial>& images) const {
  if (images.size() != vars_.size()) throw ShapeError("wrong number of images");
  if (images.empty()) return *this;
  const std::vector<Variable>& target = images[0].variables();
  for (std::size_t i = 0; i < images.size(); ++i) {
    images[i].require_compatible(images[0]);
    if (images[i].mode_ != mode_) throw ModeMismatch("image mode differs from the polynomial");
    for (const auto& [e, c] : images[i].terms_) {
      unsigned odd = 0;
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (target[j].odd) odd += e[j];
      }
      if ((odd % 2 == 1) != vars_[i].odd) throw ParityError("image of " + vars_[i].name + " has the wrong parity");
    }
  }
  SuperPolynomial out(target, mode_);
  for (const auto& [e, c] : terms_) {
    SuperPolynomial term = constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) term = term * images[i];
    }
    out += term;
  }
  return out;
}

SuperPolynomial SuperPolynomial::operator-() const {
  SuperPolynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
  require_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& o) {
  require_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
  a.require_compatible(b);
  SuperPolynomial out(a.vars_, a.mode_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      int sign = product_sign(a.vars_, ea, eb);
      if (sign == 0) continue;
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      Scalar c = ca * cb;
      out.add_term(e, sign > 0 ? c : -c);
    }
  }
  return out;
}

SuperPolynomial operator*(const Scalar& s, const SuperPolynomial& p) {
  SuperPolynomial out(p.vars_, p.mode_);
  for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
  return out;
}

bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (a.vars_ != b.vars_ || a.mode_ != b.mode_ || a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, c] : a.terms_) {
    if (it->first != e || it->second != c) return false;
    ++it;
  }
  return true;
}

std::string SuperPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << vars_[i].name;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

std::vector<Variable> copy_variables(const std::vector<Variable>& base, std::size_t copies) {
  std::vector<Variable> out;
  out.reserve(base.size() * copies);
  for (std::size_t k = 0; k < copies; ++k) {
    for (const auto& v : base) {
      out.push_back({v.name + "^(" + std::to_string(k + 1) + ")", v.odd, static_cast<int>(k)});
    }
  }
  return out;
}

SuperPolynomial polarize(const SuperPolynomial& f) {
  const int d = f.homogeneous_degree();
  if (d < 0) throw DomainError("polarize needs a homogeneous polynomial");
  const std::size_t nb = f.variables().size();
  const std::size_t copies = static_cast<std::size_t>(d);
  std::vector<Variable> vars = copy_variables(f.variables(), copies);
  SuperPolynomial out(vars, f.mode());
  for (const auto& [e, c] : f.terms()) {
    std::vector<std::size_t> factors;
    for (std::size_t i = 0; i < nb; ++i) factors.insert(factors.end(), e[i], i);
    std::vector<std::size_t> perm(copies);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      SuperPolynomial term = SuperPolynomial::constant(vars, c);
      for (std::size_t r = 0; r < copies; ++r) {
        term = term * SuperPolynomial::variable(vars, perm[r] * nb + factors[r], f.mode());
      }
      out += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

SuperPolynomial restitute(const SuperPolynomial& F, const std::vector<Variable>& base) {
  const std::size_t nb = base.size();
  if (nb == 0 || F.variables().size() % nb != 0) throw ShapeError("variables are not copies of the base");
  const std::size_t copies = F.variables().size() / nb;
  if (F.variables() != copy_variables(base, copies)) throw ShapeError("variables are not copies of the base");
  SuperPolynomial out(base, F.mode());
  for (const auto& [e, c] : F.terms()) {
    for (unsigned deg : F.multidegree(e)) {
      if (deg != 1) throw DomainError("restitute needs a multilinear polynomial");
    }
    SuperPolynomial term = SuperPolynomial::constant(base, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) term = term * SuperPolynomial::variable(base, i % nb, F.mode());
    }
    out += term;
  }
  return out;
}

}  // namespace sfk
