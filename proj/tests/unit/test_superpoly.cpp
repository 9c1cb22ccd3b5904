#include "../support/poly_gen.hpp"
#include "helpers.hpp"
#include "sfk/errors.hpp"

using namespace sfk;
using namespace sfk::test;

namespace {

SuperPolynomial var(const std::vector<Variable>& vs, std::size_t i) {
  return SuperPolynomial::variable(vs, i, Mode::Exact);
}

Scalar factorial(unsigned d) {
  std::int64_t f = 1;
  for (unsigned k = 2; k <= d; ++k) f *= k;
  return q(f);
}

// sum over subsets S of (-1)^(d - |S|) f(sum_{k in S} v_k): the multilinear
// part of f(t_1 v_1 + ... + t_d v_d) evaluated at t = 1.
GrassmannElement inclusion_exclusion(const SuperPolynomial& f, const std::vector<std::vector<GrassmannElement>>& pts,
                                     int n) {
  const std::size_t d = pts.size();
  const std::size_t nb = f.variables().size();
  GrassmannElement acc(n, Mode::Exact);
  for (std::size_t s = 0; s < (std::size_t{1} << d); ++s) {
    std::vector<GrassmannElement> sum(nb, GrassmannElement(n, Mode::Exact));
    std::size_t size = 0;
    for (std::size_t k = 0; k < d; ++k) {
      if (((s >> k) & 1u) == 0) continue;
      ++size;
      for (std::size_t i = 0; i < nb; ++i) sum[i] += pts[k][i];
    }
    GrassmannElement value = f.evaluate(sum);
    acc += (d - size) % 2 == 0 ? value : -value;
  }
  return acc;
}

std::vector<GrassmannElement> flatten(const std::vector<std::vector<GrassmannElement>>& pts) {
  std::vector<GrassmannElement> out;
  for (const auto& p : pts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

TEST_CASE("odd variables anticommute and square to zero") {
  std::vector<Variable> vs = {{"p", true, 0}, {"q", true, 0}, {"x", false, 0}};
  CHECK(var(vs, 0) * var(vs, 1) == -(var(vs, 1) * var(vs, 0)));
  CHECK((var(vs, 0) * var(vs, 0)).is_zero());
  CHECK(var(vs, 2) * var(vs, 0) == var(vs, 0) * var(vs, 2));
  CHECK_THROWS_AS(SuperPolynomial::monomial(vs, {2, 0, 0}, q(1)), DomainError);
}

TEST_CASE("evaluation respects the grading") {
  const int n = 4;
  std::vector<Variable> vs = {{"p", true, 0}, {"q", true, 0}};
  SuperPolynomial f = var(vs, 0) * var(vs, 1);
  CHECK(f.evaluate({th(n, 1), th(n, 2)}) == th(n, 1) * th(n, 2));
  CHECK(f.evaluate({th(n, 2), th(n, 1)}) == -(th(n, 1) * th(n, 2)));
  CHECK_THROWS_AS(f.evaluate({c(n, 1), th(n, 1)}), ParityError);
}

TEST_CASE("polarize examples") {
  std::vector<Variable> one = {{"x", false, 0}};
  SuperPolynomial x2 = var(one, 0) * var(one, 0);
  SuperPolynomial p = polarize(x2);
  std::vector<Variable> two = copy_variables(one, 2);
  CHECK(p == q(2) * (var(two, 0) * var(two, 1)));
  CHECK(restitute(p, one) == q(2) * x2);

  SuperPolynomial k = SuperPolynomial::constant(one, q(5));
  CHECK(polarize(k).homogeneous_degree() == 0);
  CHECK(restitute(polarize(k), one) == k);

  std::vector<Variable> odd = {{"p", true, 0}, {"q", true, 0}};
  SuperPolynomial pq = var(odd, 0) * var(odd, 1);
  SuperPolynomial pol = polarize(pq);
  for (const auto& [e, coeff] : pol.terms()) {
    for (unsigned d : pol.multidegree(e)) CHECK(d == 1);
  }
  CHECK(restitute(pol, odd) == q(2) * pq);

  CHECK_THROWS_AS(polarize(var(one, 0) + x2), DomainError);
  CHECK(restitute(var(copy_variables(one, 2), 0) * var(copy_variables(one, 2), 1), one) == x2);
}

TEST_CASE("polarization matches inclusion-exclusion on Grassmann points") {
  const int n = 8;
  Sampler rng(41);
  for (VarKind kind : {VarKind::Even, VarKind::Odd, VarKind::Mixed}) {
    std::vector<Variable> vs = base_variables(kind);
    for (unsigned d = 1; d <= 3; ++d) {
      SuperPolynomial f = random_homogeneous(rng, vs, d);
      std::vector<std::vector<GrassmannElement>> pts;
      for (unsigned k = 0; k < d; ++k) pts.push_back(random_point(rng, vs, n));
      CHECK(polarize(f).evaluate(flatten(pts)) == inclusion_exclusion(f, pts, n));
    }
  }
}

TEST_CASE("property: restitute(polarize(f)) = d! f") {
  Sampler rng(0xF2C3);
  for (VarKind kind : {VarKind::Even, VarKind::Odd, VarKind::Mixed}) {
    std::vector<Variable> vs = base_variables(kind);
    for (unsigned d = 0; d <= 4; ++d) {
      for (int trial = 0; trial < 5; ++trial) {
        SuperPolynomial f = d == 0 ? SuperPolynomial::constant(vs, rng.nonzero_scalar(Mode::Exact))
                                   : random_homogeneous(rng, vs, d);
        CHECK(restitute(polarize(f), vs) == factorial(d) * f);
      }
    }
  }
}

TEST_CASE("property: polarization commutes with even linear substitutions") {
  const int n = 8;
  Sampler rng(5);
  std::vector<Variable> vs = base_variables(VarKind::Mixed);  // x, p, y, q
  for (int trial = 0; trial < 6; ++trial) {
    // Block matrix: even variables mix among themselves, odd among themselves.
    Scalar m[4][4] = {};
    const std::size_t evens[2] = {0, 2}, odds[2] = {1, 3};
    for (const auto* block : {evens, odds}) {
      Scalar det = q(0);
      while (det.is_zero()) {
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) m[block[a]][block[b]] = rng.scalar(Mode::Exact);
        }
        det = m[block[0]][block[0]] * m[block[1]][block[1]] - m[block[0]][block[1]] * m[block[1]][block[0]];
      }
    }
    std::vector<SuperPolynomial> images;
    for (std::size_t i = 0; i < 4; ++i) {
      SuperPolynomial img(vs, Mode::Exact);
      for (std::size_t j = 0; j < 4; ++j) img += m[i][j] * var(vs, j);
      images.push_back(img);
    }
    const unsigned d = static_cast<unsigned>(1 + trial % 3);
    SuperPolynomial f = random_homogeneous(rng, vs, d);
    std::vector<std::vector<GrassmannElement>> pts;
    std::vector<std::vector<GrassmannElement>> moved;
    for (unsigned k = 0; k < d; ++k) {
      pts.push_back(random_point(rng, vs, n));
      std::vector<GrassmannElement> mv;
      for (std::size_t i = 0; i < 4; ++i) {
        GrassmannElement acc(n, Mode::Exact);
        for (std::size_t j = 0; j < 4; ++j) acc += m[i][j] * pts.back()[j];
        mv.push_back(acc);
      }
      moved.push_back(mv);
    }
    CHECK(polarize(f.substitute(images)).evaluate(flatten(pts)) == polarize(f).evaluate(flatten(moved)));
  }
}
