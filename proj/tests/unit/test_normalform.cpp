#include <complex>

#include "helpers.hpp"
#include "sfk/errors.hpp"
#include "sfk/normalform.hpp"
#include "sfk/sampling.hpp"

using namespace sfk;
using namespace sfk::test;

namespace {

Scalar fl(double re, double im = 0.0) { return Scalar::floating({re, im}); }

Matrix2 fm(double a, double b, double c, double d) { return {fl(a), fl(b), fl(c), fl(d)}; }

// Largest coefficient of g M g^-1 - N over the 3x3 embedding.
double conjugation_residual(const SuperMatrix& g, const SuperMatrix& m, const SuperMatrix& expected) {
  SuperMatrix ginv = form_matrix_inverse(g.num_generators(), g.mode()) * supertranspose(g) *
                     form_matrix(g.num_generators(), g.mode());
  return (g * m * ginv - expected).max_abs();
}

SuperMatrix embed_float(const Matrix2& m) { return from_sl2(m.to_float(), 1).matrix(); }

void check_sl2_record(const Matrix2& a, const Matrix2& b, const NormalFormRecord& r) {
  CHECK(conjugation_residual(r.conjugator, embed_float(a), r.normal_a) < 1e-9);
  CHECK(conjugation_residual(r.conjugator, embed_float(b), r.normal_b) < 1e-9);
  CHECK(r.normal_a(0, 1).is_zero());
  CHECK(r.normal_b(1, 0).is_zero());
}

}  // namespace

TEST_CASE("LambdaPolynomial evaluation and derivative") {
  const int n = 4;
  LambdaPolynomial p({c(n, -2), c(n, 0), c(n, 1)});
  CHECK(p.degree() == 2);
  CHECK(p(c(n, 3)) == c(n, 7));
  CHECK(p.derivative()(c(n, 3)) == c(n, 6));
  LambdaPolynomial trailing({c(n, 1), c(n, 0)});
  CHECK(trailing.degree() == 0);
}

TEST_CASE("hensel_lift_root examples") {
  const int n = 4;
  GrassmannElement n12 = th(n, 1) * th(n, 2);
  CHECK(hensel_lift_root(LambdaPolynomial({-n12, c(n, 1)}), q(0)) == n12);
  GrassmannElement r = hensel_lift_root(LambdaPolynomial({-(c(n, 1) + n12), c(n, 0), c(n, 1)}), q(1));
  CHECK(r == c(n, 1) + q(1, 2) * n12);
  CHECK(r * r == c(n, 1) + n12);
  CHECK(hensel_lift_root(LambdaPolynomial({c(n, -4), c(n, 0), c(n, 1)}), q(-2)) == c(n, -2));
  CHECK_THROWS_AS(hensel_lift_root(LambdaPolynomial({c(n, 0), c(n, 0), c(n, 1)}), q(0)), SingularRoot);
  CHECK_THROWS_AS(hensel_lift_root(LambdaPolynomial({c(n, -4), c(n, 0), c(n, 1)}), q(1)), DomainError);
}

TEST_CASE("property: hensel lift returns exact roots") {
  Sampler rng(31);
  const int n = 8;
  for (int trial = 0; trial < 30; ++trial) {
    // (y - r1)(y - r2) + soul with distinct rational bodies.
    Scalar r1 = rng.scalar(Mode::Exact), r2 = r1 + rng.nonzero_scalar(Mode::Exact);
    GrassmannElement c0 = GrassmannElement::constant(n, r1 * r2) + rng.soul(n, Mode::Exact, Parity::Even, 4);
    GrassmannElement c1 = GrassmannElement::constant(n, -(r1 + r2)) + rng.soul(n, Mode::Exact, Parity::Even, 2);
    LambdaPolynomial p({c0, c1, c(n, 1)});
    GrassmannElement y = hensel_lift_root(p, r1);
    CHECK(p(y).is_zero());
    CHECK(y.body() == r1);
  }
}

TEST_CASE("sl2_triangulate: diagonal first matrix") {
  Matrix2 a = fm(2, 0, 0, 0.5);
  Matrix2 b = fm(1, 1, 1, 2);
  NormalFormRecord r = sl2_triangulate(a, b);
  CHECK(r.branch == Branch::Diagonalizable);
  check_sl2_record(a, b, r);
  CHECK(std::abs(r.normal_a(1, 0).body().to_complex() - 1.0) < 1e-12);
  CHECK(std::abs(r.normal_a(0, 0).body().to_complex() - 0.5) < 1e-12);
  CHECK(std::abs(r.mu.body().to_complex() - 2.0) < 1e-12);
}

TEST_CASE("sl2_triangulate: unipotent branch") {
  Matrix2 a = fm(1, 1, 0, 1);
  Matrix2 b = fm(2, 1, 3, 2);
  NormalFormRecord r = sl2_triangulate(a, b);
  CHECK(r.branch == Branch::Unipotent);
  check_sl2_record(a, b, r);
  auto body = r.normal_a.body();
  CHECK(std::abs(body[0][0].to_complex() - 1.0) < 1e-12);
  CHECK(std::abs(body[1][0].to_complex() - 1.0) < 1e-12);
  CHECK(std::abs(body[1][1].to_complex() - 1.0) < 1e-12);
  Matrix2 neg = fm(-1, 0, 3, -1);
  NormalFormRecord rn = sl2_triangulate(neg, b);
  CHECK(rn.branch == Branch::Unipotent);
  check_sl2_record(neg, b, rn);
}

TEST_CASE("sl2_triangulate: commuting diagonal pair has zero kappa") {
  Matrix2 a = fm(2, 0, 0, 0.5);
  Matrix2 b = fm(3, 0, 0, 1.0 / 3);
  NormalFormRecord r = sl2_triangulate(a, b);
  CHECK(r.branch == Branch::Diagonal);
  check_sl2_record(a, b, r);
  CHECK(r.kappa.is_zero());
}

TEST_CASE("sl2_triangulate: B already triangular in the eigenbasis") {
  Matrix2 a = fm(2, 0, 0, 0.5);
  Matrix2 b = fm(3, 2, 0, 1.0 / 3);
  NormalFormRecord r = sl2_triangulate(a, b);
  check_sl2_record(a, b, r);
  // y^2 = k b / (a - d) with k = 1 / (mu - 1/mu).
  double k = 1.0 / 1.5;
  CHECK(std::abs(r.y.body().to_complex() * r.y.body().to_complex() - k * 2.0 / (3.0 - 1.0 / 3)) < 1e-12);
}

TEST_CASE("sl2_triangulate: errors") {
  CHECK_THROWS_AS(sl2_triangulate(fm(1, 0, 0, 1), fm(1, 1, 0, 1)), CentralError);
  CHECK_THROWS_AS(sl2_triangulate(fm(-1, 0, 0, -1), fm(1, 1, 0, 1)), CentralError);
  CHECK_THROWS_AS(sl2_triangulate(fm(2, 0, 0, 0.5), fm(1, 1, 0, 1)), ReducibleError);
  CHECK_THROWS_AS(sl2_triangulate(fm(2, 0, 0, 1), fm(1, 0, 0, 1)), PreconditionError);
}

TEST_CASE("property: sl2_triangulate on random complex pairs") {
  Sampler rng(0xF2C3);
  for (int trial = 0; trial < 60; ++trial) {
    auto [a, b] = rng.sl2_pair(trial % 6 == 0);
    NormalFormRecord r = sl2_triangulate(a, b);
    CHECK(r.branch == (trial % 6 == 0 ? Branch::Unipotent : Branch::Diagonalizable));
    check_sl2_record(a, b, r);
    // Fricke consistency at body level.
    FrickeCoords fc = fricke_coords(r.lambda, ginv(r.mu), r.kappa);
    CHECK(std::abs(fc.x.body().to_complex() - b.trace().to_complex()) < 1e-9);
    CHECK(std::abs(fc.y.body().to_complex() - a.trace().to_complex()) < 1e-9);
    CHECK(std::abs(fc.z.body().to_complex() - (a * b).trace().to_complex()) < 1e-8);
  }
}

TEST_CASE("osp_triangulate: odd parts zero reduces to the SL2 result") {
  Sampler rng(4);
  const int n = 6;
  for (int trial = 0; trial < 10; ++trial) {
    auto [a0, b0] = rng.triangulable_pair(n, Mode::Exact, false);
    NormalFormRecord r = osp_triangulate(a0, b0);
    CHECK(r.psi.is_zero());
    CHECK(r.xi.is_zero());
    NormalFormRecord s = sl2_triangulate(reduce_body(a0), reduce_body(b0));
    CHECK(std::abs(r.lambda.body().to_complex() - s.lambda.body().to_complex()) < 1e-9);
    CHECK(std::abs(r.kappa.body().to_complex() - s.kappa.body().to_complex()) < 1e-9);
  }
}

TEST_CASE("osp_triangulate: exact conjugation identities and shapes") {
  Sampler rng(0xF2C3);
  const int n = 8;
  for (int trial = 0; trial < 15; ++trial) {
    auto [a0, b0] = rng.triangulable_pair(n, Mode::Exact);
    NormalFormRecord r = osp_triangulate(a0, b0);
    OSpElement g = OSpElement::from_matrix(r.conjugator);
    CHECK(conjugate(g, a0).matrix() == r.normal_a);
    CHECK(conjugate(g, b0).matrix() == r.normal_b);
    CHECK(r.normal_a(0, 1).is_zero());
    CHECK(r.normal_a(0, 2).is_zero());
    CHECK(r.normal_b(1, 0).is_zero());
    CHECK(r.normal_b(2, 0).is_zero());
    GrassmannElement one = c(n, 1);
    GrassmannElement minv = ginv(r.mu);
    // normalA = [[1/mu,0,0],[1,mu,psi mu],[psi,0,1]]
    CHECK(r.normal_a(0, 0) == minv);
    CHECK(r.normal_a(1, 0) == one);
    CHECK(r.normal_a(1, 1) == r.mu);
    CHECK(r.normal_a(1, 2) == r.psi * r.mu);
    CHECK(r.normal_a(2, 2) == one);
    CHECK(r.psi == r.nu * (minv - one));
    // normalB = [[lambda, kappa, lambda xi],[0, 1/lambda, 0],[0, -xi, 1]]
    CHECK(r.normal_b(1, 1) == ginv(r.lambda));
    CHECK(r.normal_b(1, 2).is_zero());
    CHECK(r.normal_b(2, 1) == -r.xi);
    CHECK(r.normal_b(2, 2) == one);
    CHECK(r.normal_b(0, 2) == r.lambda * r.xi);
    // xi = lambda^-1 (x^-2 c nu - x^-1 beta)
    GrassmannElement xinv = ginv(r.x);
    const SuperMatrix& bm = b0.matrix();
    CHECK(r.xi == ginv(r.lambda) * (xinv * xinv * bm(1, 0) * r.nu - xinv * bm(1, 2)));
    CHECK(supertrace(r.normal_a) == supertrace(a0.matrix()));
    CHECK(supertrace(r.normal_b) == supertrace(b0.matrix()));
    CHECK(supertrace(r.normal_a * r.normal_b) == supertrace(a0.matrix() * b0.matrix()));
  }
}

TEST_CASE("osp_triangulate: with c = 0 the short xi formula holds") {
  const int n = 6;
  Sampler rng(12);
  int covered = 0;
  for (int trial = 0; trial < 40 && covered < 5; ++trial) {
    // Upper triangular body with gamma = 0 keeps c exactly zero.
    Rational lam = rng.nonzero_rational(4);
    if (lam * lam == Rational(1)) continue;
    Rational kap = rng.nonzero_rational(4);
    GrassmannElement zero(n, Mode::Exact);
    GrassmannElement delta = rng.odd(n, Mode::Exact);
    OSpElement b0 = compose_general(GrassmannElement::constant(n, Scalar::exact(lam)),
                                    GrassmannElement::constant(n, Scalar::exact(kap)), zero,
                                    GrassmannElement::constant(n, Scalar::exact(Rational(1) / lam)), zero, delta);
    if (!b0.matrix()(1, 0).is_zero()) continue;
    OSpElement a0 = from_sl2(c(n, 3), zero, zero, c(n, 1, 3));
    NormalFormRecord r;
    try {
      r = osp_triangulate(a0, b0);
    } catch (const ExactnessError&) {
      continue;
    }
    ++covered;
    GrassmannElement beta = b0.matrix()(1, 2);
    CHECK(r.xi == -(ginv(r.lambda) * ginv(r.x) * beta));
  }
  CHECK(covered >= 1);
}

TEST_CASE("osp_triangulate: ℤ2 flip negates the odd coordinates") {
  Sampler rng(77);
  const int n = 8;
  for (int trial = 0; trial < 10; ++trial) {
    auto [a0, b0] = rng.triangulable_pair(n, Mode::Exact);
    NormalFormRecord r = osp_triangulate(a0, b0);
    NormalFormRecord f = osp_triangulate(z2_flip(a0), z2_flip(b0));
    CHECK(f.lambda == r.lambda);
    CHECK(f.mu == r.mu);
    CHECK(f.kappa == r.kappa);
    CHECK(f.psi == -r.psi);
    CHECK(f.xi == -r.xi);
  }
}

TEST_CASE("osp_triangulate: preconditions") {
  const int n = 4;
  GrassmannElement zero(n, Mode::Exact);
  OSpElement id = OSpElement::identity(n, Mode::Exact);
  OSpElement b0 = from_sl2(c(n, 2), c(n, 1), c(n, 1), c(n, 1));
  CHECK_THROWS_AS(osp_triangulate(id, b0), PreconditionError);
  CHECK_THROWS_AS(osp_triangulate(b0, b0), PreconditionError);
}

TEST_CASE("osp_triangulate in float mode") {
  Sampler rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto [a0, b0] = rng.triangulable_pair(6, Mode::Float);
    NormalFormRecord r = osp_triangulate(a0, b0);
    OSpElement g = OSpElement::from_matrix(r.conjugator);
    CHECK((conjugate(g, b0).matrix() - r.normal_b).max_abs() < 1e-9);
    CHECK((conjugate(g, a0).matrix() - r.normal_a).max_abs() < 1e-9);
  }
}

TEST_CASE("fricke_coords examples") {
  const int n = 2;
  FrickeCoords one = fricke_coords(c(n, 1), c(n, 2), c(n, 0));
  CHECK(one.x == c(n, 2));
  CHECK(one.delta_x.is_zero());
  FrickeCoords two = fricke_coords(c(n, 2), c(n, 3), c(n, 1));
  CHECK(two.x == c(n, 5, 2));
  CHECK(two.delta_x == c(n, 3, 2));
  CHECK(two.delta_x * two.delta_x == c(n, 9, 4));
  CHECK(two.z == c(n, 43, 6));
  CHECK_THROWS_AS(fricke_coords(c(n, 0), c(n, 1), c(n, 0)), ZeroBody);
}
