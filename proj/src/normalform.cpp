#include "sfk/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "sfk/errors.hpp"

namespace sfk {

namespace {

using cd = std::complex<double>;

constexpr std::int64_t kRationalizeDenominator = 1000000;

GrassmannElement constant(int n, const Scalar& s) { return GrassmannElement::constant(n, s); }

// Larger modulus first; near-ties fall back to (real, imag) descending.
bool preferred(cd u, cd v) {
  double scale = std::max({1.0, std::abs(u), std::abs(v)});
  double eps = 1e-10 * scale;
  if (std::abs(std::abs(u) - std::abs(v)) > eps) return std::abs(u) > std::abs(v);
  if (std::abs(u.real() - v.real()) > eps) return u.real() > v.real();
  return u.imag() > v.imag() + eps;
}

void sort_preferred(std::vector<cd>& roots) { std::stable_sort(roots.begin(), roots.end(), preferred); }

// Roots of c s^2 + b s + a with a degree drop when c vanishes.
std::vector<cd> quadratic_roots(cd c, cd b, cd a, double tol) {
  if (std::abs(c) <= tol) {
    if (std::abs(b) <= tol) return {};
    return {-a / b};
  }
  cd disc = std::sqrt(b * b - 4.0 * c * a);
  // Pick the sign that avoids cancellation.
  cd q = (std::real(std::conj(b) * disc) >= 0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
  if (std::abs(q) <= tol) return {cd(0.0), cd(0.0)};
  return {q / c, a / q};
}

Matrix2 to_complex_matrix(const Matrix2& m) { return m.to_float(); }

cd v(const Scalar& s) { return s.to_complex(); }

Scalar f(cd z) { return Scalar::floating(z); }

Matrix2 mat(cd a, cd b, cd c, cd d) { return {f(a), f(b), f(c), f(d)}; }

SuperMatrix embed(const Matrix2& m) {
  SuperMatrix r(3, 3, 1, Mode::Float, MatrixParity::None);
  r.set(0, 0, constant(1, m.a));
  r.set(0, 1, constant(1, m.b));
  r.set(1, 0, constant(1, m.c));
  r.set(1, 1, constant(1, m.d));
  r.set(2, 2, GrassmannElement::constant(1, Mode::Float, 1));
  return r.with_parity(MatrixParity::Even);
}

// Snap float entries that are rounding noise relative to scale to zero.
Matrix2 snap(const Matrix2& m, double scale) {
  auto s = [&](const Scalar& x) { return x.abs() < 1e-12 * scale ? Scalar::floating(0.0) : x; };
  return {s(m.a), s(m.b), s(m.c), s(m.d)};
}

struct Sl2Step {
  Branch branch;
  Matrix2 conj;
  cd mu;
  cd x;
  cd y;
};

Sl2Step diagonalizable_step(const Matrix2& a, const Matrix2& b, double tol) {
  cd tr = v(a.trace());
  cd disc = std::sqrt(tr * tr - 4.0);
  cd e1 = 0.5 * (tr + disc);
  cd e2 = 0.5 * (tr - disc);
  Matrix2 p = Matrix2::identity(Mode::Float);
  cd mu;
  if (a.b.abs() <= tol && a.c.abs() <= tol) {
    mu = v(a.a);
  } else {
    mu = preferred(e1, e2) ? e1 : e2;
    cd other = 1.0 / mu;
    auto eigvec = [&](cd e) -> std::pair<cd, cd> {
      if (a.b.abs() >= a.c.abs()) return {v(a.b), e - v(a.a)};
      return {e - v(a.d), v(a.c)};
    };
    auto [p11, p21] = eigvec(mu);
    auto [p12, p22] = eigvec(other);
    cd det = p11 * p22 - p12 * p21;
    p = mat(p11 / det, p12, p21 / det, p22);
  }
  Matrix2 pinv = p.inverse();
  Matrix2 b0 = pinv * b * p;
  const cd k = 1.0 / (mu - 1.0 / mu);
  const cd ba = v(b0.a), bb = v(b0.b), bc = v(b0.c), bd = v(b0.d);
  const double btol = tol * std::max(1.0, b0.max_abs());
  if (std::abs(bb) <= btol && std::abs(bc) <= btol) {
    // Simultaneously diagonal: swap the basis, nothing else can be triangular.
    Matrix2 r = mat(0.0, -1.0, 1.0, 0.0);
    return {Branch::Diagonal, r * pinv, mu, 1.0, 0.0};
  }
  // c s^2 + k (a - d) s - k^2 b = 0 with s = y^2.
  std::vector<cd> squares;
  if (std::abs(bc) <= btol) {
    if (std::abs(ba - bd) <= btol) throw ReducibleError("pair shares an eigenvector with a parabolic second matrix");
    squares = {k * bb / (ba - bd)};
  } else {
    squares = quadratic_roots(bc, k * (ba - bd), -k * k * bb, 0.0);
  }
  std::vector<cd> ys;
  for (cd s : squares) {
    if (std::abs(s) <= btol) continue;
    cd r = std::sqrt(s);
    ys.push_back(r);
    ys.push_back(-r);
  }
  if (ys.empty()) throw ReducibleError("no admissible root for the triangulating conjugator");
  sort_preferred(ys);
  cd y = ys.front();
  cd x = k / y;
  Matrix2 c = mat(0.0, -1.0 / x, x, y);
  return {Branch::Diagonalizable, c * pinv, mu, x, y};
}

Sl2Step unipotent_step(const Matrix2& a, const Matrix2& b, double tol) {
  const double s = v(a.trace()).real() > 0 ? 1.0 : -1.0;
  Matrix2 n = a - mat(s, 0.0, 0.0, s);
  cd w1 = 1.0, w2 = 0.0;
  if (n.a.abs() + n.c.abs() < n.b.abs() + n.d.abs()) {
    w1 = 0.0;
    w2 = 1.0;
  }
  cd v1 = (v(n.a) * w1 + v(n.b) * w2) / s;
  cd v2 = (v(n.c) * w1 + v(n.d) * w2) / s;
  // Columns (v1, v2) and w give a Jordan basis; rescale both to unit determinant.
  cd det = v1 * w2 - w1 * v2;
  cd t = 1.0 / std::sqrt(det);
  Matrix2 p = mat(v1 * t, w1 * t, v2 * t, w2 * t);
  Matrix2 pinv = p.inverse();
  Matrix2 b1 = pinv * b * p;
  const cd ba = v(b1.a), bb = v(b1.b), bc = v(b1.c), bd = v(b1.d);
  const cd x = s > 0 ? cd(0.0, 1.0) : cd(1.0, 0.0);
  const double btol = tol * std::max(1.0, b1.max_abs());
  std::vector<cd> ys;
  if (std::abs(bc) > btol) {
    ys = quadratic_roots(bc, x * (ba - bd), -x * x * bb, 0.0);
  } else if (std::abs(ba - bd) > btol) {
    ys = {x * bb / (ba - bd)};
  } else if (std::abs(bb) <= btol) {
    ys = {0.0};
  } else {
    throw ReducibleError("both matrices are parabolic with a common fixed line");
  }
  sort_preferred(ys);
  cd y = ys.front();
  Matrix2 u = mat(x, y, 0.0, 1.0 / x);
  Matrix2 r = mat(0.0, -1.0, 1.0, 0.0);
  return {Branch::Unipotent, r * u * pinv, s, x, y};
}

}  // namespace

const char* to_string(Branch b) {
  switch (b) {
    case Branch::Diagonalizable:
      return "diagonalizable";
    case Branch::Unipotent:
      return "unipotent";
    case Branch::Diagonal:
      return "diagonal";
  }
  return "unknown";
}

LambdaPolynomial::LambdaPolynomial(std::vector<GrassmannElement> coeffs) : n_(1), mode_(Mode::Exact) {
  if (coeffs.empty()) throw ShapeError("polynomial needs at least one coefficient to fix N and mode");
  n_ = coeffs.front().num_generators();
  mode_ = coeffs.front().mode();
  for (const auto& c : coeffs) {
    if (c.num_generators() != n_ || c.mode() != mode_) throw ShapeError("polynomial coefficients disagree on N or mode");
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  coeffs_ = std::move(coeffs);
}

GrassmannElement LambdaPolynomial::operator()(const GrassmannElement& y) const {
  GrassmannElement acc(n_, mode_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Scalar LambdaPolynomial::eval_body(const Scalar& y) const {
  Scalar acc = Scalar::zero(mode_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + it->body();
  return acc;
}

LambdaPolynomial LambdaPolynomial::derivative() const {
  std::vector<GrassmannElement> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(Scalar::integer(mode_, static_cast<std::int64_t>(i)) * coeffs_[i]);
  if (d.empty()) d.emplace_back(n_, mode_);
  return LambdaPolynomial(std::move(d));
}

GrassmannElement hensel_lift_root(const LambdaPolynomial& p, const Scalar& y0) {
  if (y0.mode() != p.mode()) throw ModeMismatch("root and polynomial in different modes");
  const bool exact = p.mode() == Mode::Exact;
  const LambdaPolynomial dp = p.derivative();
  Scalar body_value = p.eval_body(y0);
  double scale = 1.0;
  for (const auto& c : p.coeffs()) scale = std::max(scale, c.max_abs());
  scale *= std::pow(std::max(1.0, y0.abs()), std::max(0, p.degree()));
  if (exact ? !body_value.is_zero() : body_value.abs() > 1e-6 * scale) {
    throw DomainError("starting value is not a root of the body polynomial");
  }
  if (exact ? dp.eval_body(y0).is_zero() : dp.eval_body(y0).abs() <= 1e-12 * scale) {
    throw SingularRoot("derivative vanishes at the body root");
  }
  const int n = p.num_generators();
  GrassmannElement y = GrassmannElement::constant(n, y0);
  // Exact: the error's nilpotency order at least doubles per step.
  const int limit = exact ? n + 2 : n + 12;
  for (int iter = 0; iter < limit; ++iter) {
    GrassmannElement r = p(y);
    if (exact ? r.is_zero() : r.max_abs() <= 1e-15 * scale) return y;
    y = y - r * ginv(dp(y));
  }
  GrassmannElement r = p(y);
  if (exact ? !r.is_zero() : r.max_abs() > kTriangulationTolerance * scale) {
    throw NumericalError("Newton iteration did not converge");
  }
  return y;
}

NormalFormRecord sl2_triangulate(const Matrix2& a_in, const Matrix2& b_in) {
  Matrix2 a = to_complex_matrix(a_in);
  Matrix2 b = to_complex_matrix(b_in);
  if (std::abs(v(a.det()) - 1.0) > 1e-9 * std::max(1.0, a.max_abs() * a.max_abs()) ||
      std::abs(v(b.det()) - 1.0) > 1e-9 * std::max(1.0, b.max_abs() * b.max_abs())) {
    throw PreconditionError("inputs must have determinant 1");
  }
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  const double tol = 1e-12 * scale;
  if (a.b.abs() <= tol && a.c.abs() <= tol && std::abs(v(a.a) - v(a.d)) <= tol) {
    throw CentralError("first matrix is central");
  }
  cd tr = v(a.trace());
  bool parabolic = std::abs(tr * tr - 4.0) <= 1e-10 * scale * scale;
  Sl2Step step = parabolic ? unipotent_step(a, b, tol) : diagonalizable_step(a, b, tol);

  Matrix2 cinv = step.conj.inverse();
  Matrix2 na = step.conj * a * cinv;
  Matrix2 nb = step.conj * b * cinv;
  const double cscale = std::max(1.0, step.conj.max_abs() * step.conj.max_abs()) * scale;
  na = snap(na, cscale);
  nb = snap(nb, cscale);
  if (na.b.abs() > kTriangulationTolerance * cscale || nb.c.abs() > kTriangulationTolerance * cscale) {
    throw NumericalError("triangulation residual above tolerance");
  }
  na.b = Scalar::floating(0.0);
  nb.c = Scalar::floating(0.0);

  NormalFormRecord rec;
  rec.branch = step.branch;
  rec.conjugator = embed(step.conj);
  rec.normal_a = embed(na);
  rec.normal_b = embed(nb);
  rec.lambda = constant(1, nb.a);
  rec.mu = constant(1, f(step.mu));
  rec.kappa = constant(1, nb.b);
  rec.psi = GrassmannElement(1, Mode::Float);
  rec.xi = GrassmannElement(1, Mode::Float);
  rec.x = constant(1, f(step.x));
  rec.y = constant(1, f(step.y));
  rec.nu = GrassmannElement(1, Mode::Float);
  return rec;
}

namespace {

struct OspParts {
  int n;
  Mode mode;
  GrassmannElement m, k;
  GrassmannElement a, b, c, d, f, alpha, beta, gamma, delta;
};

OspParts split(const OSpElement& a0, const OSpElement& b0) {
  if (a0.mode() != b0.mode() || a0.num_generators() != b0.num_generators()) {
    throw ShapeError("pair elements disagree on N or mode");
  }
  const SuperMatrix& am = a0.matrix();
  const bool exact = a0.mode() == Mode::Exact;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      bool zero = exact ? am(i, j).is_zero() : am(i, j).max_abs() < kTriangulationTolerance;
      if (!zero) throw PreconditionError("first element must be diagonal");
    }
  }
  const int n = a0.num_generators();
  const Mode mode = a0.mode();
  GrassmannElement m = am(0, 0);
  Scalar mb = m.body();
  Scalar one = Scalar::one(mode);
  bool degenerate = exact ? (mb == one || mb == -one)
                          : (std::abs(mb.to_complex() - 1.0) < 1e-12 || std::abs(mb.to_complex() + 1.0) < 1e-12);
  if (degenerate) throw PreconditionError("eigenvalue body must differ from +1 and -1");
  GrassmannElement k = ginv(m - ginv(m));
  const SuperMatrix& bm = b0.matrix();
  return {n, mode, m, k, bm(0, 0), bm(0, 1), bm(1, 0), bm(1, 1), bm(2, 2), bm(0, 2), bm(1, 2), bm(2, 0), bm(2, 1)};
}

// Coefficient E in eta = (gamma y - delta x) - E nu.
GrassmannElement conjugator_pivot(const OspParts& p, const GrassmannElement& y) {
  return p.f - p.d + y * y * p.c * ginv(p.k);
}

SuperMatrix conjugator_matrix(const OspParts& p, const GrassmannElement& x, const GrassmannElement& y,
                              const GrassmannElement& nu) {
  GrassmannElement xinv = ginv(x);
  GrassmannElement zero(p.n, p.mode);
  GrassmannElement one = GrassmannElement::constant(p.n, Scalar::one(p.mode));
  return SuperMatrix::from_rows({{zero, -xinv, zero}, {x, y, nu}, {zero, -(xinv * nu), one}}, MatrixParity::Even);
}

// (3,1) entry of g B0 g^-1 for the conjugator with odd parameter nu.
GrassmannElement eta(const OspParts& p, const OSpElement& b0, const GrassmannElement& x, const GrassmannElement& y,
                     const GrassmannElement& nu) {
  OSpElement g = OSpElement::from_matrix(conjugator_matrix(p, x, y, nu));
  return conjugate(g, b0).matrix()(2, 0);
}

}  // namespace

LambdaPolynomial osp_conjugator_polynomial(const OSpElement& a0, const OSpElement& b0) {
  OspParts p = split(a0, b0);
  const GrassmannElement& k = p.k;
  GrassmannElement q0 = -(k * k * p.b);
  GrassmannElement q2 = k * (p.a - p.d);
  GrassmannElement q4 = p.c;
  // y^2 P = Q - (pp y^2 + qq) E^-1 (rr + ss y^2) with E = e0 + e2 y^2.
  GrassmannElement e0 = p.f - p.d;
  GrassmannElement e2 = p.c * ginv(k);
  GrassmannElement pp = p.gamma + p.beta;
  GrassmannElement qq = k * (p.alpha - p.delta);
  GrassmannElement rr = -(k * p.delta);
  GrassmannElement ss = p.gamma;
  GrassmannElement zero(p.n, p.mode);
  return LambdaPolynomial({e0 * q0 - qq * rr, zero, e0 * q2 + e2 * q0 - (pp * rr + qq * ss), zero,
                           e0 * q4 + e2 * q2 - pp * ss, zero, e2 * q4});
}

NormalFormRecord osp_triangulate(const OSpElement& a0, const OSpElement& b0) {
  OspParts p = split(a0, b0);
  const bool exact = p.mode == Mode::Exact;
  LambdaPolynomial poly = osp_conjugator_polynomial(a0, b0);

  // Body roots of c y^4 + k (a - d) y^2 - k^2 b.
  const cd k0 = v(p.k.body());
  const cd a = v(p.a.body()), b = v(p.b.body()), c = v(p.c.body()), d = v(p.d.body());
  const double bscale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  std::vector<cd> squares = quadratic_roots(c, k0 * (a - d), -k0 * k0 * b, 1e-14 * bscale);
  std::vector<cd> ys;
  for (cd s : squares) {
    if (std::abs(s) <= 1e-12 * bscale) continue;
    ys.push_back(std::sqrt(s));
    ys.push_back(-std::sqrt(s));
  }
  sort_preferred(ys);
  const LambdaPolynomial dpoly = poly.derivative();
  std::optional<Scalar> y0;
  bool irrational = false;
  for (cd cand : ys) {
    Scalar y = exact ? Scalar::rationalize(cand, kRationalizeDenominator) : Scalar::floating(cand);
    if (exact && !poly.eval_body(y).is_zero()) {
      irrational = true;
      continue;
    }
    GrassmannElement yc = GrassmannElement::constant(p.n, y);
    Scalar dbody = conjugator_pivot(p, yc).body();
    Scalar slope = dpoly.eval_body(y);
    bool ok = exact ? (!dbody.is_zero() && !slope.is_zero())
                    : (dbody.abs() > 1e-12 * bscale && slope.abs() > 1e-12 * bscale);
    if (ok) {
      y0 = y;
      break;
    }
  }
  if (!y0) {
    if (irrational) throw ExactnessError("no Gaussian-rational body root; use float mode");
    throw ReducibleError("no simple body root with invertible odd-odd pivot");
  }

  GrassmannElement y = hensel_lift_root(poly, *y0);
  GrassmannElement x = p.k * ginv(y);
  GrassmannElement zero(p.n, p.mode);

  // The (3,1) entry is affine in nu: check the second difference on a probe.
  GrassmannElement probe(p.n, p.mode);
  for (int i = 1; i <= p.n; ++i) probe += GrassmannElement::generator(p.n, i, p.mode);
  GrassmannElement e0 = eta(p, b0, x, y, zero);
  GrassmannElement e1 = eta(p, b0, x, y, probe);
  GrassmannElement e2 = eta(p, b0, x, y, Scalar::integer(p.mode, 2) * probe);
  GrassmannElement second = e2 - Scalar::integer(p.mode, 2) * e1 + e0;
  const double escale = std::max({1.0, e0.max_abs(), e1.max_abs(), e2.max_abs()});
  if (exact ? !second.is_zero() : second.max_abs() > kTriangulationTolerance * escale) {
    throw NumericalError("odd-row entry is not affine in nu");
  }
  GrassmannElement nu = ginv(conjugator_pivot(p, y)) * e0;

  OSpElement g = OSpElement::from_matrix(conjugator_matrix(p, x, y, nu));
  SuperMatrix na = conjugate(g, a0).matrix();
  SuperMatrix nb = conjugate(g, b0).matrix();
  // Rounding in g M g^-1 grows like |g|^2 |M|.
  const double gs = std::max(1.0, g.matrix().max_abs());
  const double tscale = gs * gs * std::max({1.0, a0.matrix().max_abs(), b0.matrix().max_abs()});
  auto vanishes = [&](const GrassmannElement& e) {
    return exact ? e.is_zero() : e.max_abs() < kTriangulationTolerance * tscale;
  };
  if (!vanishes(na(0, 1)) || !vanishes(na(0, 2)) || !vanishes(nb(1, 0)) || !vanishes(nb(2, 0))) {
    throw NumericalError("conjugated pair is not in triangular form");
  }
  if (!exact) {
    na.set(0, 1, zero);
    na.set(0, 2, zero);
    nb.set(1, 0, zero);
    nb.set(2, 0, zero);
  }

  NormalFormRecord rec;
  rec.branch = Branch::Diagonalizable;
  rec.conjugator = g.matrix();
  rec.normal_a = na;
  rec.normal_b = nb;
  rec.mu = p.m;
  rec.lambda = nb(0, 0);
  rec.kappa = nb(0, 1);
  rec.psi = na(2, 0);
  rec.xi = ginv(rec.lambda) * nb(0, 2);
  rec.x = x;
  rec.y = y;
  rec.nu = nu;
  return rec;
}

FrickeCoords fricke_coords(const GrassmannElement& lambda, const GrassmannElement& mu, const GrassmannElement& kappa) {
  GrassmannElement li = ginv(lambda);
  GrassmannElement mi = ginv(mu);
  FrickeCoords r{lambda + li, mu + mi, lambda * mu + li * mi + kappa, lambda - li, mu - mi};
  GrassmannElement check = r.delta_x * r.delta_x - (r.x * r.x - GrassmannElement::constant(lambda.num_generators(), lambda.mode(), 4));
  bool ok = lambda.mode() == Mode::Exact ? check.is_zero() : check.max_abs() < kTriangulationTolerance * std::max(1.0, r.x.max_abs() * r.x.max_abs());
  if (!ok) throw NumericalError("delta_x^2 differs from x^2 - 4");
  return r;
}

}  // namespace sfk
