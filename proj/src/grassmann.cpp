#include "sfk/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <string>

#include "sfk/errors.hpp"

namespace sfk {

namespace {

void check_budget(int n) {
  if (n < 1 || n > kMaxGenerators) {
    throw ShapeError("generator count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxGenerators));
  }
}

void check_compatible(const GrassmannElement& x, const GrassmannElement& y) {
  if (x.mode() != y.mode()) throw ModeMismatch("Grassmann operands in different scalar modes");
  if (x.num_generators() != y.num_generators()) {
    throw ShapeError("Grassmann operands with different generator counts (" + std::to_string(x.num_generators()) +
                     " vs " + std::to_string(y.num_generators()) + ")");
  }
}

// Sort by mask, merge duplicates, drop zeros.
void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mask < b.mask; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Term acc = std::move(terms[i]);
    while (j < terms.size() && terms[j].mask == acc.mask) {
      acc.coeff += terms[j].coeff;
      ++j;
    }
    if (!acc.coeff.is_zero()) terms[out++] = std::move(acc);
    i = j;
  }
  terms.resize(out);
}

}  // namespace

int reorder_sign(Mask s, Mask t) {
  int inversions = 0;
  while (t != 0) {
    int bit = std::countr_zero(t);
    t &= t - 1;
    inversions += std::popcount(s >> (bit + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

bool canonical_less(Mask a, Mask b) {
  int pa = std::popcount(a);
  int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  // Same size: compare ascending index lists; the first differing index decides.
  Mask diff = a ^ b;
  if (diff == 0) return false;
  Mask lowest = diff & (~diff + 1);
  return (a & lowest) != 0;
}

GrassmannElement::GrassmannElement(int n, Mode mode) : n_(n), mode_(mode) { check_budget(n); }

GrassmannElement GrassmannElement::constant(int n, const Scalar& s) {
  GrassmannElement e(n, s.mode());
  if (!s.is_zero()) e.terms_.push_back({0, s});
  return e;
}

GrassmannElement GrassmannElement::constant(int n, Mode mode, std::int64_t value) {
  return constant(n, Scalar::integer(mode, value));
}

GrassmannElement GrassmannElement::generator(int n, int index, const Scalar& coeff) {
  check_budget(n);
  if (index < 1 || index > n) {
    throw ShapeError("generator index " + std::to_string(index) + " outside 1.." + std::to_string(n));
  }
  return monomial(n, Mask(1) << (index - 1), coeff);
}

GrassmannElement GrassmannElement::generator(int n, int index, Mode mode) {
  return generator(n, index, Scalar::one(mode));
}

GrassmannElement GrassmannElement::monomial(int n, Mask mask, const Scalar& coeff) {
  GrassmannElement e(n, coeff.mode());
  if (n < 32 && (mask >> n) != 0) throw ShapeError("monomial uses a generator beyond the budget");
  if (!coeff.is_zero()) e.terms_.push_back({mask, coeff});
  return e;
}

GrassmannElement GrassmannElement::from_terms(int n, Mode mode, std::vector<Term> terms) {
  GrassmannElement e(n, mode);
  for (const Term& t : terms) {
    if (t.coeff.mode() != mode) throw ModeMismatch("term coefficient in the wrong scalar mode");
    if ((t.mask >> n) != 0) throw ShapeError("term uses a generator beyond the budget");
  }
  canonicalize(terms);
  e.terms_ = std::move(terms);
  return e;
}

bool GrassmannElement::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return std::popcount(t.mask) % 2 == 0; });
}

bool GrassmannElement::is_odd() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return std::popcount(t.mask) % 2 == 1; });
}

Scalar GrassmannElement::coeff(Mask mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const Term& t, Mask m) { return t.mask < m; });
  if (it != terms_.end() && it->mask == mask) return it->coeff;
  return Scalar::zero(mode_);
}

Scalar GrassmannElement::body() const {
  if (!terms_.empty() && terms_.front().mask == 0) return terms_.front().coeff;
  return Scalar::zero(mode_);
}

GrassmannElement GrassmannElement::soul() const {
  GrassmannElement e(n_, mode_);
  for (const Term& t : terms_) {
    if (t.mask != 0) e.terms_.push_back(t);
  }
  return e;
}

GrassmannElement GrassmannElement::even_part() const {
  GrassmannElement e(n_, mode_);
  for (const Term& t : terms_) {
    if (std::popcount(t.mask) % 2 == 0) e.terms_.push_back(t);
  }
  return e;
}

GrassmannElement GrassmannElement::odd_part() const {
  GrassmannElement e(n_, mode_);
  for (const Term& t : terms_) {
    if (std::popcount(t.mask) % 2 == 1) e.terms_.push_back(t);
  }
  return e;
}

double GrassmannElement::max_abs() const {
  double m = 0.0;
  for (const Term& t : terms_) m = std::max(m, t.coeff.abs());
  return m;
}

GrassmannElement GrassmannElement::to_float() const {
  GrassmannElement e(n_, Mode::Float);
  for (const Term& t : terms_) e.terms_.push_back({t.mask, t.coeff.to_mode(Mode::Float)});
  return e;
}

GrassmannElement GrassmannElement::widen(int n) const {
  if (n < n_) throw ShapeError("cannot narrow a Grassmann element");
  GrassmannElement e(n, mode_);
  e.terms_ = terms_;
  return e;
}

GrassmannElement GrassmannElement::chop(double tol) const {
  GrassmannElement e(n_, mode_);
  for (const Term& t : terms_) {
    if (mode_ == Mode::Exact || t.coeff.abs() >= tol) e.terms_.push_back(t);
  }
  return e;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement e(*this);
  for (Term& t : e.terms_) t.coeff = -t.coeff;
  return e;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  check_compatible(*this, o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->mask < j->mask)) {
      merged.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->mask < i->mask) {
      merged.push_back(*j++);
    } else {
      Term t{i->mask, std::move(i->coeff)};
      t.coeff += j->coeff;
      if (!t.coeff.is_zero()) merged.push_back(std::move(t));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) { return *this += -o; }

GrassmannElement& GrassmannElement::operator*=(const GrassmannElement& o) { return *this = gmul(*this, o); }

GrassmannElement& GrassmannElement::operator*=(const Scalar& s) {
  if (s.mode() != mode_) throw ModeMismatch("scalar factor in the wrong mode");
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= s;
  return *this;
}

bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
  if (a.n_ != b.n_ || a.mode_ != b.mode_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mask != b.terms_[i].mask || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

GrassmannElement gadd(const GrassmannElement& x, const GrassmannElement& y) {
  GrassmannElement r(x);
  r += y;
  return r;
}

GrassmannElement gsub(const GrassmannElement& x, const GrassmannElement& y) {
  GrassmannElement r(x);
  r -= y;
  return r;
}

GrassmannElement gmul(const GrassmannElement& x, const GrassmannElement& y) {
  check_compatible(x, y);
  const int n = x.num_generators();
  if (x.is_zero() || y.is_zero()) return GrassmannElement(n, x.mode());
  if (x.terms().size() == 1 && x.terms().front().mask == 0) return x.terms().front().coeff * y;
  if (y.terms().size() == 1 && y.terms().front().mask == 0) return x * y.terms().front().coeff;
  std::vector<Term> products;
  products.reserve(x.terms().size() * y.terms().size());
  for (const Term& a : x.terms()) {
    for (const Term& b : y.terms()) {
      if ((a.mask & b.mask) != 0) continue;
      Scalar c = a.coeff * b.coeff;
      if (reorder_sign(a.mask, b.mask) < 0) c = -c;
      products.push_back({a.mask | b.mask, std::move(c)});
    }
  }
  return GrassmannElement::from_terms(n, x.mode(), std::move(products));
}

GrassmannElement operator*(const Scalar& s, const GrassmannElement& x) {
  GrassmannElement r(x);
  r *= s;
  return r;
}

GrassmannElement operator*(const GrassmannElement& x, const Scalar& s) { return s * x; }

GrassmannElement ginv(const GrassmannElement& x) {
  Scalar b = x.body();
  if (b.is_zero()) throw ZeroBody("element with zero body is not invertible");
  Scalar binv = b.inverse();
  GrassmannElement step = -(binv * x.soul());
  GrassmannElement sum = GrassmannElement::constant(x.num_generators(), Scalar::one(x.mode()));
  GrassmannElement power = sum;
  for (int k = 1; k <= x.num_generators(); ++k) {
    power = gmul(power, step);
    if (power.is_zero()) break;
    sum += power;
  }
  return binv * sum;
}

GrassmannElement gpow(const GrassmannElement& x, unsigned k) {
  GrassmannElement result = GrassmannElement::constant(x.num_generators(), Scalar::one(x.mode()));
  GrassmannElement base = x;
  while (k > 0) {
    if (k & 1u) result = gmul(result, base);
    k >>= 1;
    if (k > 0) base = gmul(base, base);
  }
  return result;
}

namespace {

// Integer power of a scalar, negative exponents allowed for nonzero base.
Scalar spow(const Scalar& b, std::int64_t e) {
  Scalar base = e < 0 ? b.inverse() : b;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Scalar r = Scalar::one(b.mode());
  while (k > 0) {
    if (k & 1u) r *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return r;
}

// Taylor coefficients f^(k)(b)/k! for k = 0..count-1.
std::vector<Scalar> taylor_coefficients(const AnalyticFunction& f, const Scalar& b, int count) {
  const Mode mode = b.mode();
  std::vector<Scalar> c;
  c.reserve(count);
  switch (f.kind) {
    case AnalyticKind::Exp: {
      Scalar eb;
      if (mode == Mode::Float) {
        eb = Scalar::floating(std::exp(b.to_complex()));
      } else if (b.is_zero()) {
        eb = Scalar::one(mode);
      } else {
        throw ExactnessError("exp of a nonzero body is not a Gaussian rational");
      }
      Scalar fact = Scalar::one(mode);
      for (int k = 0; k < count; ++k) {
        if (k > 0) fact *= Scalar::integer(mode, k);
        c.push_back(eb / fact);
      }
      break;
    }
    case AnalyticKind::Sqrt: {
      if (b.is_zero()) throw DomainError("sqrt is not analytic at a zero body");
      Scalar root = b.sqrt();
      Scalar binv = b.inverse();
      // binom(1/2, k) * b^(1/2 - k)
      Scalar binom = Scalar::one(mode);
      Scalar bpow = Scalar::one(mode);
      const Scalar half = Scalar::rational(mode, Rational(1, 2));
      for (int k = 0; k < count; ++k) {
        if (k > 0) {
          binom *= (half - Scalar::integer(mode, k - 1)) / Scalar::integer(mode, k);
          bpow *= binv;
        }
        c.push_back(binom * root * bpow);
      }
      break;
    }
    case AnalyticKind::Reciprocal: {
      if (b.is_zero()) throw DomainError("reciprocal of a zero body");
      Scalar minus_binv = -b.inverse();
      Scalar term = b.inverse();
      for (int k = 0; k < count; ++k) {
        c.push_back(term);
        term *= minus_binv;
      }
      break;
    }
    case AnalyticKind::Power: {
      const std::int64_t p = f.exponent;
      if (b.is_zero() && p < 0) throw DomainError("negative power of a zero body");
      Scalar binom = Scalar::one(mode);
      for (int k = 0; k < count; ++k) {
        if (k > 0) binom *= Scalar::integer(mode, p - (k - 1)) / Scalar::integer(mode, k);
        if (binom.is_zero()) {
          c.push_back(Scalar::zero(mode));
          continue;
        }
        const std::int64_t e = p - k;
        if (b.is_zero()) {
          c.push_back(e == 0 ? binom : Scalar::zero(mode));
        } else {
          c.push_back(binom * spow(b, e));
        }
      }
      break;
    }
  }
  return c;
}

}  // namespace

GrassmannElement analytic_apply(const AnalyticFunction& f, const GrassmannElement& x) {
  const int n = x.num_generators();
  GrassmannElement s = x.soul();
  auto coeffs = taylor_coefficients(f, x.body(), n + 1);
  GrassmannElement result(n, x.mode());
  GrassmannElement power = GrassmannElement::constant(n, Scalar::one(x.mode()));
  for (int k = 0; k <= n; ++k) {
    if (k > 0) power = gmul(power, s);
    if (power.is_zero()) break;
    result += coeffs[k] * power;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const GrassmannElement& x) {
  if (x.is_zero()) return os << "0";
  std::vector<const Term*> order;
  for (const Term& t : x.terms()) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) { return canonical_less(a->mask, b->mask); });
  bool first = true;
  for (const Term* t : order) {
    if (!first) os << " + ";
    first = false;
    os << t->coeff;
    for (int i = 0; i < x.num_generators(); ++i) {
      if (t->mask & (Mask(1) << i)) os << "*t" << (i + 1);
    }
  }
  return os;
}

}  // namespace sfk
