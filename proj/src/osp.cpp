#include "sfk/osp.hpp"

#include <algorithm>

#include "sfk/errors.hpp"

namespace sfk {

namespace {

GrassmannElement one_like(const GrassmannElement& x) {
  return GrassmannElement::constant(x.num_generators(), Scalar::one(x.mode()));
}

void record(MembershipReport& report, const std::string& name, const GrassmannElement& residual, double tol) {
  const bool bad = residual.mode() == Mode::Exact ? !residual.is_zero() : residual.max_abs() >= tol;
  if (bad) {
    report.ok = false;
    report.violations.push_back({name, residual.max_abs()});
  }
}

void record(MembershipReport& report, const std::string& name, const SuperMatrix& residual, double tol) {
  double worst = residual.max_abs();
  bool bad = residual.mode() == Mode::Exact ? !residual.is_zero() : worst >= tol;
  if (bad) {
    report.ok = false;
    report.violations.push_back({name, worst});
  }
}

void require_even(const GrassmannElement& x, const char* what) {
  if (!x.is_even()) throw ParityError(std::string(what) + " must be even");
}

void require_odd(const GrassmannElement& x, const char* what) {
  if (!x.is_odd()) throw ParityError(std::string(what) + " must be odd");
}

}  // namespace

MembershipReport check_membership(const SuperMatrix& m) {
  MembershipReport report;
  if (!m.is_layout_square()) {
    report.ok = false;
    report.violations.push_back({"shape", 0.0});
    return report;
  }
  if (!m.satisfies_parity(MatrixParity::Even)) {
    report.ok = false;
    report.violations.push_back({"parity", 0.0});
    return report;
  }
  const SuperMatrix g = m.with_parity(MatrixParity::Even);
  const int n = g.num_generators();
  const Mode mode = g.mode();
  const SuperMatrix j = form_matrix(n, mode);
  // The conditions are quadratic in the entries, so float residuals are
  // measured against the squared entry scale.
  const double scale = std::max(1.0, g.max_abs());
  const double tol = kMembershipTolerance * scale * scale;
  record(report, "st(g) J g = J", supertranspose(g) * j * g - j, tol);

  const GrassmannElement one = GrassmannElement::constant(n, Scalar::one(mode));
  if (g(2, 2).body().is_zero()) {
    report.ok = false;
    report.violations.push_back({"Ber(g) = 1", 1.0});
  } else {
    record(report, "Ber(g) = 1", berezinian(g) - one, tol);
  }

  const GrassmannElement& a = g(0, 0);
  const GrassmannElement& b = g(0, 1);
  const GrassmannElement& alpha = g(0, 2);
  const GrassmannElement& c = g(1, 0);
  const GrassmannElement& d = g(1, 1);
  const GrassmannElement& beta = g(1, 2);
  const GrassmannElement& gamma = g(2, 0);
  const GrassmannElement& delta = g(2, 1);
  const GrassmannElement& f = g(2, 2);
  record(report, "alpha = b gamma - a delta", alpha - (b * gamma - a * delta), tol);
  record(report, "beta = d gamma - c delta", beta - (d * gamma - c * delta), tol);
  record(report, "gamma = a beta - c alpha", gamma - (a * beta - c * alpha), tol);
  record(report, "delta = b beta - d alpha", delta - (b * beta - d * alpha), tol);
  record(report, "f = 1 + beta alpha", f - (one + beta * alpha), tol);
  record(report, "f (ad - bc) = 1", f * (a * d - b * c) - one, tol);
  return report;
}

OSpElement OSpElement::from_matrix(const SuperMatrix& m) {
  MembershipReport report = check_membership(m);
  if (!report.ok) {
    std::string msg = "matrix is not in OSp(1|2):";
    for (const auto& v : report.violations) msg += " [" + v.name + "]";
    throw MembershipError(msg);
  }
  return OSpElement(m.with_parity(MatrixParity::Even), std::nullopt);
}

OSpElement OSpElement::identity(int n, Mode mode) {
  GrassmannElement one = GrassmannElement::constant(n, Scalar::one(mode));
  GrassmannElement zero(n, mode);
  return OSpElement(SuperMatrix::identity(3, n, mode), OSpProvenance{{one, zero, zero, one}, {zero, zero}});
}

OSpElement from_sl2(const GrassmannElement& a, const GrassmannElement& b, const GrassmannElement& c,
                    const GrassmannElement& d) {
  require_even(a, "a");
  require_even(b, "b");
  require_even(c, "c");
  require_even(d, "d");
  GrassmannElement det_minus_one = a * d - b * c - one_like(a);
  const double scale = std::max({1.0, a.max_abs(), b.max_abs(), c.max_abs(), d.max_abs()});
  const bool bad = det_minus_one.mode() == Mode::Exact ? !det_minus_one.is_zero()
                                                       : det_minus_one.max_abs() >= kMembershipTolerance * scale * scale;
  if (bad) throw DeterminantError("ad - bc != 1");
  const int n = a.num_generators();
  SuperMatrix m(3, 3, n, a.mode(), MatrixParity::None);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 0, c);
  m.set(1, 1, d);
  m.set(2, 2, one_like(a));
  GrassmannElement zero(n, a.mode());
  return OSpElement(m.with_parity(MatrixParity::Even), OSpProvenance{{a, b, c, d}, {zero, zero}});
}

OSpElement from_sl2(const Matrix2& m, int n) {
  return from_sl2(GrassmannElement::constant(n, m.a), GrassmannElement::constant(n, m.b),
                  GrassmannElement::constant(n, m.c), GrassmannElement::constant(n, m.d));
}

OSpElement exp_odd(const GrassmannElement& gamma, const GrassmannElement& delta) {
  require_odd(gamma, "gamma");
  require_odd(delta, "delta");
  const int n = gamma.num_generators();
  const Mode mode = gamma.mode();
  GrassmannElement one = one_like(gamma);
  GrassmannElement gd = gamma * delta;
  GrassmannElement half_gd = Scalar::rational(mode, Rational(1, 2)) * gd;
  SuperMatrix m(3, 3, n, mode, MatrixParity::None);
  m.set(0, 0, one + half_gd);
  m.set(1, 1, one + half_gd);
  m.set(2, 2, one - gd);
  m.set(0, 2, gamma);
  m.set(1, 2, delta);
  m.set(2, 0, delta);
  m.set(2, 1, -gamma);
  GrassmannElement zero(n, mode);
  return OSpElement(m.with_parity(MatrixParity::Even), OSpProvenance{{one, zero, zero, one}, {gamma, delta}});
}

OSpElement compose_general(const GrassmannElement& a, const GrassmannElement& b, const GrassmannElement& c,
                           const GrassmannElement& d, const GrassmannElement& gamma, const GrassmannElement& delta) {
  OSpElement body = from_sl2(a, b, c, d);
  OSpElement odd = exp_odd(gamma, delta);
  return OSpElement(body.m_ * odd.m_, OSpProvenance{{a, b, c, d}, {gamma, delta}});
}

OSpElement operator*(const OSpElement& g, const OSpElement& h) { return OSpElement(g.m_ * h.m_, std::nullopt); }

OSpElement inverse(const OSpElement& g) {
  const int n = g.num_generators();
  const Mode mode = g.mode();
  return OSpElement(form_matrix_inverse(n, mode) * supertranspose(g.m_) * form_matrix(n, mode), std::nullopt);
}

OSpElement conjugate(const OSpElement& h, const OSpElement& g) { return OSpElement(h.m_ * g.m_ * inverse(h).m_, std::nullopt); }

Matrix2 reduce_body(const OSpElement& g) {
  const SuperMatrix& m = g.matrix();
  return {m(0, 0).body(), m(0, 1).body(), m(1, 0).body(), m(1, 1).body()};
}

OSpElement z2_flip(const OSpElement& g) {
  SuperMatrix m = g.m_;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (layout_odd(i) != layout_odd(j)) m.set(i, j, -g.m_(i, j));
    }
  }
  std::optional<OSpProvenance> p = g.provenance_;
  if (p) {
    p->odd[0] = -p->odd[0];
    p->odd[1] = -p->odd[1];
  }
  return OSpElement(m.with_parity(MatrixParity::Even), std::move(p));
}

SuperMatrix odd_generator_q1(int n, Mode mode) {
  SuperMatrix q(3, 3, n, mode, MatrixParity::None);
  q.set(0, 2, GrassmannElement::constant(n, mode, 1));
  q.set(2, 1, GrassmannElement::constant(n, mode, -1));
  return q.with_parity(MatrixParity::Odd);
}

SuperMatrix odd_generator_q2(int n, Mode mode) {
  SuperMatrix q(3, 3, n, mode, MatrixParity::None);
  q.set(1, 2, GrassmannElement::constant(n, mode, 1));
  q.set(2, 0, GrassmannElement::constant(n, mode, 1));
  return q.with_parity(MatrixParity::Odd);
}

}  // namespace sfk
