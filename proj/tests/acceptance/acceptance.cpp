// Acceptance run: one PASS/FAIL line per criterion.
//
// A criterion whose literal statement is false for genuine group elements is
// reported as FAIL with the measured counts; it is marked "known" and does
// not change the exit status as long as the corrected identities it rests on
// hold. Any other failure makes the run exit 1.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "../support/poly_gen.hpp"
#include "sfk/census.hpp"
#include "sfk/errors.hpp"
#include "sfk/invariants.hpp"
#include "sfk/normalform.hpp"
#include "sfk/sampling.hpp"

#ifndef SFK_CLI_PATH
#error "SFK_CLI_PATH must name the sfk executable"
#endif
#ifndef SFK_FIXTURE_DIR
#error "SFK_FIXTURE_DIR must name the fixture directory"
#endif

using namespace sfk;
using namespace sfk::test;

namespace {

struct Outcome {
  bool pass = true;
  // Literal statement fails but the corrected identities hold.
  bool known = false;
  std::ostringstream notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " [failed: " << what << "]";
    }
  }
};

GrassmannElement one(int n) { return GrassmannElement::constant(n, Scalar::one(Mode::Exact)); }

// Literal relations with f = 1 + alpha beta as written.
bool literal_relations_hold(const SuperMatrix& g) {
  const auto &a = g(0, 0), &b = g(0, 1), &alpha = g(0, 2), &c = g(1, 0), &d = g(1, 1), &beta = g(1, 2);
  const auto &gamma = g(2, 0), &delta = g(2, 1), &f = g(2, 2);
  const int n = g.num_generators();
  return alpha == b * gamma - a * delta && beta == d * gamma - c * delta && gamma == a * beta - c * alpha &&
         delta == b * beta - d * alpha && f == one(n) + alpha * beta && f * (a * d - b * c) == one(n);
}

void criterion_osp(Outcome& out) {
  Sampler rng(kDefaultSeed);
  const int n = 8;
  const SuperMatrix j = form_matrix(n, Mode::Exact);
  std::size_t member = 0, literal = 0, inverse_ok = 0;
  for (int t = 0; t < 200; ++t) {
    OSpElement g = rng.osp(n, Mode::Exact);
    const SuperMatrix& m = g.matrix();
    const bool form = supertranspose(m) * j * m == j;
    const bool ber = berezinian(m) == one(n);
    if (form && ber && check_membership(m).ok) ++member;
    if (literal_relations_hold(m)) ++literal;
    if ((g * inverse(g)).matrix() == SuperMatrix::identity(3, n, Mode::Exact)) ++inverse_ok;
  }
  // Symbolic generic matrix: distinct odd generators, disjoint even monomials.
  const int s = 14;
  auto th = [&](int i) { return GrassmannElement::generator(s, i, Mode::Exact); };
  GrassmannElement a = th(5) * th(6), b = th(7) * th(8), c = th(9) * th(10), d = th(11) * th(12),
                   f = th(13) * th(14);
  GrassmannElement al = th(1), be = th(2), ga = th(3), de = th(4);
  SuperMatrix g = SuperMatrix::from_rows({{a, b, al}, {c, d, be}, {ga, de, f}}, MatrixParity::Even);
  SuperMatrix shown = SuperMatrix::from_rows({{d, -b, de}, {-c, a, -ga}, {-be, al, f}}, MatrixParity::Even);
  const bool symbolic =
      form_matrix_inverse(s, Mode::Exact) * supertranspose(g) * form_matrix(s, Mode::Exact) == shown;

  out.notes << "form+Ber+relations(f = 1 + beta alpha) " << member << "/200; inverse " << inverse_ok
            << "/200; symbolic inverse " << (symbolic ? "matches" : "differs") << "; relations with f = 1 + alpha beta "
            << literal << "/200";
  const bool corrected = member == 200 && inverse_ok == 200 && symbolic;
  out.require(corrected, "membership or displayed inverse");
  if (corrected && literal != 200) {
    out.pass = false;
    out.known = true;
    out.notes << " (written f relation has the wrong sign of the odd product)";
  }
}

void criterion_gram(Outcome& out) {
  Sampler rng(kDefaultSeed);
  std::size_t zero = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<SuperVector> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(rng.even_vector(8, Mode::Exact));
    if (leibniz_det(gram_matrix(vs)).is_zero()) ++zero;
  }
  out.notes << "det(G) = 0 on " << zero << "/100";
  out.require(zero == 100, "vanishing determinant");
  std::vector<std::vector<Rational>> reference;
  bool same = true, contains = true;
  for (int n : {6, 8}) {
    for (std::uint64_t seed : {std::uint64_t{0xF2C3}, std::uint64_t{0x1}}) {
      CensusResult r = relation_census(gram_scenario(n), 4, 1001, seed);
      contains = contains && r.contains(gram_determinant_vector(r.monomials));
      if (reference.empty()) {
        reference = r.kernel_basis;
        out.notes << "; kernel dim " << r.kernel_basis.size() << ", rank " << r.rank;
      } else {
        same = same && r.kernel_basis == reference;
      }
    }
  }
  out.notes << "; det in kernel " << (contains ? "yes" : "no") << "; kernels equal over seeds/N " << (same ? "yes" : "no");
  out.require(contains && same, "census");
}

void criterion_trace(Outcome& out) {
  Sampler rng(kDefaultSeed);
  const int n = 8;
  std::size_t ok = 0, total = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<SuperMatrix> as = {rng.even_matrix(n, Mode::Exact), rng.even_matrix(n, Mode::Exact),
                                   rng.even_matrix(n, Mode::Exact)};
    for (std::size_t k : {2u, 3u}) {
      std::vector<SuperMatrix> sub(as.begin(), as.begin() + static_cast<long>(k));
      for (const auto& sigma : PermutationInvariant::all(k)) {
        // Cycle product written out directly.
        GrassmannElement expected = one(n);
        for (const auto& cyc : sigma.cycles()) {
          SuperMatrix p = SuperMatrix::identity(3, n, Mode::Exact);
          for (std::size_t i : cyc) p = p * sub[i];
          expected = expected * supertrace(p);
        }
        ++total;
        if (mu_sigma(sub, sigma) == expected && mu_sigma_contraction(sub, sigma) == expected) ++ok;
      }
    }
  }
  std::size_t prop = 0;
  for (int t = 0; t < 100; ++t) {
    SuperVector v = t % 2 ? rng.odd_vector(n, Mode::Exact) : rng.even_vector(n, Mode::Exact);
    SuperVector phi = (t / 2) % 2 ? rng.odd_vector(n, Mode::Exact) : rng.even_vector(n, Mode::Exact);
    // sum_i (-1)^{|e_i|} v_i phi_i, with slot 3 the odd basis vector.
    GrassmannElement direct = v[0] * phi[0] + v[1] * phi[1] - v[2] * phi[2];
    if (supertrace(outer(v, phi)) == direct && dual_pairing(v, phi) == direct) ++prop;
  }
  out.notes << "mu_sigma " << ok << "/" << total << "; str(v (x) phi) " << prop << "/100";
  out.require(ok == total && prop == 100, "trace identities");
}

double sl2_residual(const Matrix2& a, const Matrix2& b, const NormalFormRecord& r) {
  const SuperMatrix& g = r.conjugator;
  SuperMatrix gi = form_matrix_inverse(1, Mode::Float) * supertranspose(g) * form_matrix(1, Mode::Float);
  SuperMatrix ea = from_sl2(a.to_float(), 1).matrix(), eb = from_sl2(b.to_float(), 1).matrix();
  return std::max((g * ea * gi - r.normal_a).max_abs(), (g * eb * gi - r.normal_b).max_abs());
}

void criterion_triangulation(Outcome& out) {
  Sampler rng(kDefaultSeed);
  std::size_t a_ok = 0, unipotent = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    auto [a, b] = rng.sl2_pair(t % 5 == 0);
    NormalFormRecord r = sl2_triangulate(a, b);
    const double res = sl2_residual(a, b, r);
    worst = std::max(worst, res);
    if (res < 1e-9 && r.normal_a(0, 1).is_zero() && r.normal_b(1, 0).is_zero()) ++a_ok;
    if (r.branch == Branch::Unipotent) ++unipotent;
  }
  out.notes << "(a) " << a_ok << "/100, unipotent " << unipotent << ", worst residual " << worst;
  out.require(a_ok == 100 && unipotent >= 5, "SL2 triangulation");

  const int n = 8;
  std::size_t shape = 0, conj = 0, psi = 0, xi_general = 0, xi_literal = 0, bodies = 0, c_zero = 0;
  for (int t = 0; t < 50; ++t) {
    auto [a0, b0] = rng.triangulable_pair(n, Mode::Exact);
    NormalFormRecord r = osp_triangulate(a0, b0);
    const SuperMatrix &na = r.normal_a, &nb = r.normal_b;
    if (na(0, 1).is_zero() && na(0, 2).is_zero() && nb(1, 0).is_zero() && nb(2, 0).is_zero()) ++shape;
    OSpElement g = OSpElement::from_matrix(r.conjugator);
    if (conjugate(g, a0).matrix() == na && conjugate(g, b0).matrix() == nb) ++conj;
    if (r.psi == r.nu * (ginv(r.mu) - one(n))) ++psi;
    const SuperMatrix& bm = b0.matrix();
    GrassmannElement xinv = ginv(r.x), linv = ginv(r.lambda);
    if (r.xi == linv * (xinv * xinv * bm(1, 0) * r.nu - xinv * bm(1, 2))) ++xi_general;
    if (r.xi == -(linv * xinv * bm(1, 2))) ++xi_literal;
    if ((bm(1, 0) * r.nu).is_zero()) ++c_zero;
    NormalFormRecord s = sl2_triangulate(reduce_body(a0), reduce_body(b0));
    auto diff = [](const GrassmannElement& x, const GrassmannElement& y) {
      return std::abs(x.body().to_complex() - y.body().to_complex());
    };
    auto mdiff = [](const SuperMatrix& x, const SuperMatrix& y) {
      double m = 0.0;
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) m = std::max(m, std::abs(x(i, j).body().to_complex() - y(i, j).body().to_complex()));
      }
      return m;
    };
    if (diff(r.lambda, s.lambda) < 1e-9 && diff(r.mu, s.mu) < 1e-9 && diff(r.kappa, s.kappa) < 1e-8 &&
        mdiff(na, s.normal_a) < 1e-8 && mdiff(nb, s.normal_b) < 1e-8) {
      ++bodies;
    }
  }
  out.notes << "; (b) zero pattern " << shape << "/50, conjugation " << conj << "/50, psi " << psi
            << "/50, xi = lambda^-1(x^-2 c nu - x^-1 beta) " << xi_general << "/50, xi = -lambda^-1 x^-1 beta "
            << xi_literal << "/50 (c nu = 0 in " << c_zero << "/50)"
            << "; (c) bodies " << bodies << "/50";
  const bool corrected = shape == 50 && conj == 50 && psi == 50 && xi_general == 50 && bodies == 50;
  out.require(corrected, "OSp triangulation");
  if (corrected && xi_literal != 50) {
    out.pass = false;
    out.known = true;
    out.notes << " (the short xi formula drops the c nu term of the odd-row entry)";
  }
}

void criterion_flip(Outcome& out) {
  Sampler rng(0x1);
  const int n = 8;
  std::size_t ok = 0;
  std::vector<GrassmannElement> values;
  for (int t = 0; t < 50; ++t) {
    auto [a0, b0] = rng.triangulable_pair(n, Mode::Exact);
    NormalFormRecord r = osp_triangulate(a0, b0);
    NormalFormRecord f = osp_triangulate(z2_flip(a0), z2_flip(b0));
    if (f.lambda == r.lambda && f.mu == r.mu && f.kappa == r.kappa && f.psi == -r.psi && f.xi == -r.xi) ++ok;
    FrickeCoords fc = fricke_coords(r.lambda, ginv(r.mu), r.kappa);
    for (const auto& v : {r.lambda, r.mu, r.kappa, fc.x, fc.y, fc.z}) values.push_back(v);
    RepresentationPair rho(a0, b0);
    for (const auto& w : parse_word_list("A,B,AB,Ab,AABB,ABab")) values.push_back(trace_word(w, rho));
  }
  // [[1,0,xi],[0,1,0],[0,-xi,1]] goes to the same matrix with xi -> -xi.
  GrassmannElement xi = GrassmannElement::generator(n, 1, Mode::Exact);
  OSpElement shown = exp_odd(xi, GrassmannElement(n, Mode::Exact));
  GrassmannElement zero(n, Mode::Exact);
  SuperMatrix expected = SuperMatrix::from_rows({{one(n), zero, -xi}, {zero, one(n), zero}, {zero, xi, one(n)}},
                                                MatrixParity::Even);
  SuperMatrix d = SuperMatrix::from_rows({{-one(n), zero, zero}, {zero, -one(n), zero}, {zero, zero, one(n)}},
                                         MatrixParity::Even);
  const bool displayed = z2_flip(shown).matrix() == expected && d * shown.matrix() * d == expected;
  const bool audit = parity_audit(values);
  out.notes << "flip " << ok << "/50; displayed conjugation " << (displayed ? "reproduced" : "differs")
            << "; parity audit over " << values.size() << " invariants " << (audit ? "true" : "false");
  out.require(ok == 50 && displayed && audit, "flip");
}

void criterion_count(Outcome& out) {
  GeneratorReport g = generator_census(8, kDefaultSeed);
  bool ranks = g.gram_ranks.size() == 10;
  for (std::size_t r : g.gram_ranks) ranks = ranks && r == 9;
  out.notes << "total " << g.total << ", ideal " << g.ideal << ", quotient " << g.quotient << "; Jacobian ranks "
            << (ranks ? "9 at all 10 points" : "not all 9") << "; Ber " << g.ber_passed << "/" << g.ber_trials
            << "; \"" << g.counting_line << "\"";
  out.require(g.total == 9 && g.ideal == 2 && g.quotient == 7 && ranks && g.ber_passed == g.ber_trials &&
                  g.counting_line == "9 = x + 2, x = 7",
              "count");
}

void criterion_fricke(Outcome& out) {
  CensusResult r = relation_census(fricke_scenario(), 3, 20, kDefaultSeed);
  Sampler rng(kDefaultSeed);
  std::size_t delta = 0, ch = 0;
  for (int t = 0; t < 100; ++t) {
    GrassmannElement lambda = rng.even(8, Mode::Exact);
    GrassmannElement x = lambda + ginv(lambda), dx = lambda - ginv(lambda);
    FrickeCoords fc = fricke_coords(lambda, one(8), GrassmannElement(8, Mode::Exact));
    if (dx * dx == x * x - GrassmannElement::constant(8, Mode::Exact, 4) && fc.delta_x == dx) ++delta;
  }
  for (int t = 0; t < 200; ++t) {
    Matrix2 a = rng.sl2_body(Mode::Exact, t % 2 == 1);
    if ((a * a).trace() == a.trace() * a.trace() - Scalar::integer(Mode::Exact, 2)) ++ch;
  }
  out.notes << "kernel dim " << r.kernel_basis.size() << " (rank " << r.rank << "/20); Delta_X^2 = X^2 - 4 " << delta
            << "/100; tr(A^2) = tr(A)^2 - 2 " << ch << "/200";
  out.require(r.kernel_basis.empty() && delta == 100 && ch == 200, "Fricke");
}

void criterion_polarization(Outcome& out) {
  Sampler rng(kDefaultSeed);
  std::size_t ok = 0, total = 0;
  std::array<std::size_t, 3> kinds{};
  for (unsigned d = 1; d <= 4; ++d) {
    for (int t = 0; t < 50; ++t) {
      const auto kind = static_cast<VarKind>(t % 3);
      ++kinds[static_cast<std::size_t>(t % 3)];
      std::vector<Variable> vs = base_variables(kind);
      SuperPolynomial f = random_homogeneous(rng, vs, d);
      std::int64_t fact = 1;
      for (unsigned k = 2; k <= d; ++k) fact *= k;
      ++total;
      if (!f.is_zero() && restitute(polarize(f), vs) == Scalar::integer(Mode::Exact, fact) * f) ++ok;
    }
  }
  out.notes << ok << "/" << total << " (even " << kinds[0] << ", odd " << kinds[1] << ", mixed " << kinds[2] << ")";
  out.require(ok == total, "polarization");
}

std::pair<int, std::string> run(const std::string& cmd) {
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

void criterion_cli(Outcome& out) {
  const std::string cli = SFK_CLI_PATH;
  auto [vcode, vout] = run(cli + " verify --suite all --mode exact --fixtures " + SFK_FIXTURE_DIR);
  auto [c1, out1] = run(cli + " census --seed 0xF2C3");
  auto [c2, out2] = run(cli + " census --seed 0xF2C3");
  const bool identical = c1 == 0 && c2 == 0 && !out1.empty() && out1 == out2;
  const bool count = out1.find("\"total\": 9") != std::string::npos && out1.find("\"quotient\": 7") != std::string::npos;
  out.notes << "verify exit " << vcode << "; census exits " << c1 << "," << c2 << ", " << out1.size() << " bytes, "
            << (identical ? "byte-identical" : "different");
  out.require(vcode == 0 && identical && count, "CLI");
  if (vcode != 0) std::cerr << vout;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double target_seconds;  // 0 means no target
    std::function<void(Outcome&)> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "OSp validity", 10, criterion_osp},
      {2, "Gram determinant and census", 60, criterion_gram},
      {3, "trace products and str(v (x) phi)", 0, criterion_trace},
      {4, "triangulation suites", 0, criterion_triangulation},
      {5, "Z2 flip and parity audit", 0, criterion_flip},
      {6, "generator count 9 = 7 + 2", 120, criterion_count},
      {7, "classical Fricke regression", 0, criterion_fricke},
      {8, "polarization restitution", 0, criterion_polarization},
      {9, "CLI end to end", 0, criterion_cli},
  };
  int unexpected = 0, passed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.known = false;
      out.notes << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.target_seconds > 0 && secs >= c.target_seconds) {
      out.pass = false;
      out.known = false;
      out.notes << " [over the " << c.target_seconds << " s target]";
    }
    if (out.pass) ++passed;
    if (!out.pass && !out.known) ++unexpected;
    std::printf("%s criterion %d (%s) %.2fs: %s\n", out.pass ? "PASS" : (out.known ? "FAIL (known)" : "FAIL"), c.id,
                c.name, secs, out.notes.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass, %d unexpected failures\n", passed, criteria.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
