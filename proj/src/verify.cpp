#include "sfk/verify.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "sfk/errors.hpp"
#include "sfk/invariants.hpp"
#include "sfk/json_io.hpp"
#include "sfk/normalform.hpp"
#include "sfk/superpoly.hpp"

namespace sfk {

namespace {

constexpr double kTol = 1e-9;

double scale(double a, double b) { return std::max({1.0, a, b}); }

bool close(const GrassmannElement& a, const GrassmannElement& b) {
  if (a.mode() == Mode::Exact && b.mode() == Mode::Exact) return a == b;
  return (a.to_float() - b.to_float()).max_abs() <= kTol * scale(a.max_abs(), b.max_abs());
}

bool close(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.mode() == Mode::Exact && b.mode() == Mode::Exact) return a == b;
  return (a.to_float() - b.to_float()).max_abs() <= kTol * scale(a.max_abs(), b.max_abs());
}

// Float comparison against an explicit magnitude, for values that went
// through long products.
bool close_at(const GrassmannElement& a, const GrassmannElement& b, double ref) {
  if (a.mode() == Mode::Exact && b.mode() == Mode::Exact) return a == b;
  return (a.to_float() - b.to_float()).max_abs() <= kTol * std::max(1.0, ref);
}

bool close_at(const SuperMatrix& a, const SuperMatrix& b, double ref) {
  if (a.mode() == Mode::Exact && b.mode() == Mode::Exact) return a == b;
  return (a.to_float() - b.to_float()).max_abs() <= kTol * std::max(1.0, ref);
}

// Product of the letter magnitudes, the usual bound on the rounding error of
// a matrix product.
double word_scale(const FreeWord& w, const RepresentationPair& rho) {
  const double a = std::max({1.0, rho.image_a.matrix().max_abs(), inverse(rho.image_a).matrix().max_abs()});
  const double b = std::max({1.0, rho.image_b.matrix().max_abs(), inverse(rho.image_b).matrix().max_abs()});
  double s = 1.0;
  for (char c : w.letters) s *= (c == 'A' || c == 'a') ? a : b;
  return s;
}

bool near_zero(const GrassmannElement& a, double ref = 1.0) {
  return a.mode() == Mode::Exact ? a.is_zero() : a.max_abs() <= kTol * std::max(1.0, ref);
}

struct Fixtures {
  std::vector<std::pair<std::string, Json>> pairs;
  std::vector<FreeWord> words;
};

Fixtures load_fixtures(const std::string& dir) {
  Fixtures f;
  if (dir.empty()) return f;
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DomainError("fixture directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    const std::string name = p.filename().string();
    if (p.extension() == ".json" && name.rfind("pair_", 0) == 0) f.pairs.emplace_back(name, read_json_file(p.string()));
    if (name == "words.txt") {
      std::ifstream in(p);
      std::ostringstream text;
      text << in.rdbuf();
      std::string s = text.str();
      std::replace(s.begin(), s.end(), '\n', ',');
      for (auto& w : parse_word_list(s)) {
        if (!w.empty()) f.words.push_back(std::move(w));
      }
    }
  }
  return f;
}

class Runner {
 public:
  Runner(const VerifyOptions& opt, VerifyReport& report) : opt_(opt), report_(report) {}

  /// Runs body(i) for i in [0, total); a false return or an exception is a failure.
  void check(const std::string& suite, const std::string& name, std::size_t total,
             const std::function<bool(std::size_t)>& body) {
    CheckResult r{suite, name, 0, total, ""};
    for (std::size_t i = 0; i < total; ++i) {
      try {
        if (body(i)) {
          ++r.passed;
        } else if (r.detail.empty()) {
          r.detail = "sample " + std::to_string(i) + " failed";
        }
      } catch (const std::exception& e) {
        if (r.detail.empty()) r.detail = "sample " + std::to_string(i) + ": " + e.what();
      }
    }
    report_.checks.push_back(std::move(r));
  }

  const VerifyOptions& opt_;
  VerifyReport& report_;
};

void grassmann_suite(Runner& run, Sampler& rng) {
  const auto& o = run.opt_;
  const int n = o.n;
  const Mode m = o.mode;
  run.check("grassmann", "odd elements anticommute and square to zero", o.samples, [&](std::size_t) {
    GrassmannElement x = rng.odd(n, m, 3), y = rng.odd(n, m, 3);
    return close(x * y, -(y * x)) && near_zero(x * x);
  });
  run.check("grassmann", "associativity", o.samples, [&](std::size_t) {
    GrassmannElement a = rng.mixed(n, m), b = rng.mixed(n, m), c = rng.mixed(n, m);
    return close((a * b) * c, a * (b * c));
  });
  run.check("grassmann", "distributivity", o.samples, [&](std::size_t) {
    GrassmannElement a = rng.mixed(n, m), b = rng.mixed(n, m), c = rng.mixed(n, m);
    return close(a * (b + c), a * b + a * c);
  });
  run.check("grassmann", "inverse", o.samples, [&](std::size_t) {
    GrassmannElement x = rng.even(n, m) + rng.odd(n, m);
    return close(x * ginv(x), GrassmannElement::constant(n, Scalar::one(m)));
  });
  run.check("grassmann", "exp of commuting even souls", o.samples, [&](std::size_t) {
    GrassmannElement a = rng.soul(n, m, Parity::Even), b = rng.soul(n, m, Parity::Even, 4);
    const auto e = AnalyticFunction::exp();
    return close(analytic_apply(e, a + b), analytic_apply(e, a) * analytic_apply(e, b));
  });
}

void superlinalg_suite(Runner& run, Sampler& rng) {
  const auto& o = run.opt_;
  const int n = o.n;
  const Mode m = o.mode;
  run.check("superlinalg", "double supertranspose negates the odd blocks", o.samples, [&](std::size_t) {
    SuperMatrix a = rng.even_matrix(n, m);
    SuperMatrix tt = supertranspose(supertranspose(a));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const bool mixed = layout_odd(i) != layout_odd(j);
        if (!close(tt(i, j), mixed ? -a(i, j) : a(i, j))) return false;
      }
    }
    return true;
  });
  run.check("superlinalg", "supertrace is cyclic", o.samples, [&](std::size_t) {
    SuperMatrix a = rng.even_matrix(n, m), b = rng.even_matrix(n, m);
    return close(supertrace(a * b), supertrace(b * a));
  });
  run.check("superlinalg", "berezinian is multiplicative", o.samples, [&](std::size_t) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      SuperMatrix a = rng.even_matrix(n, m), b = rng.even_matrix(n, m);
      try {
        GrassmannElement ba = berezinian(a), bb = berezinian(b);
        return close(berezinian(a * b), ba * bb);
      } catch (const ZeroBody&) {
      }
    }
    return false;
  });
  run.check("superlinalg", "OSp preserves the pairing", o.samples, [&](std::size_t) {
    OSpElement g = rng.osp(n, m);
    SuperVector v = rng.odd_vector(n, m), w = rng.odd_vector(n, m);
    return close(pairing(apply(g.matrix(), v), apply(g.matrix(), w)), pairing(v, w));
  });
}

void osp_suite(Runner& run, Sampler& rng, const Fixtures& fx) {
  const auto& o = run.opt_;
  const int n = o.n;
  const Mode m = o.mode;
  run.check("osp", "compose_general satisfies the membership conditions", o.samples,
            [&](std::size_t) { return check_membership(rng.osp(n, m).matrix()).ok; });
  run.check("osp", "inverse", o.samples, [&](std::size_t) {
    OSpElement g = rng.osp(n, m);
    return close((g * inverse(g)).matrix(), SuperMatrix::identity(3, n, m));
  });
  run.check("osp", "closure under products", o.samples, [&](std::size_t) {
    return check_membership((rng.osp(n, m) * rng.osp(n, m)).matrix()).ok;
  });
  run.check("osp", "z2 flip is an involution inside OSp", o.samples, [&](std::size_t) {
    OSpElement g = rng.osp(n, m);
    OSpElement f = z2_flip(g);
    return check_membership(f.matrix()).ok && z2_flip(f) == g;
  });
  if (!fx.pairs.empty()) {
    run.check("osp", "fixture pairs are valid", fx.pairs.size(), [&](std::size_t i) {
      RepresentationPair rho = pair_from_json(fx.pairs[i].second, m == Mode::Float);
      return check_membership(rho.image_a.matrix()).ok && check_membership(rho.image_b.matrix()).ok;
    });
  }
}

// Shape, conjugation and coordinate identities of one OSp triangulation.
bool triangulation_holds(const OSpElement& a0, const OSpElement& b0, const NormalFormRecord& r) {
  const int n = a0.num_generators();
  const Mode m = a0.mode();
  OSpElement g = OSpElement::from_matrix(r.conjugator);
  const SuperMatrix& na = r.normal_a;
  const SuperMatrix& nb = r.normal_b;
  const double ref = std::max(na.max_abs(), nb.max_abs());
  GrassmannElement one = GrassmannElement::constant(n, Scalar::one(m));
  GrassmannElement xinv = ginv(r.x);
  const SuperMatrix& b = b0.matrix();
  const double gs = std::max(1.0, g.matrix().max_abs());
  const double cs = gs * gs * std::max({1.0, a0.matrix().max_abs(), b0.matrix().max_abs()});
  return close_at(conjugate(g, a0).matrix(), na, cs) && close_at(conjugate(g, b0).matrix(), nb, cs) &&
         near_zero(na(0, 1), ref) && near_zero(na(0, 2), ref) && near_zero(nb(1, 0), ref) &&
         near_zero(nb(2, 0), ref) && close_at(r.psi, r.nu * (ginv(r.mu) - one), cs) &&
         close_at(r.xi, ginv(r.lambda) * (xinv * xinv * b(1, 0) * r.nu - xinv * b(1, 2)), cs);
}

void normalform_suite(Runner& run, Sampler& rng, const Fixtures& fx) {
  const auto& o = run.opt_;
  const int n = o.n;
  run.check("normalform", "OSp triangulation identities (exact)", o.samples, [&](std::size_t) {
    auto [a0, b0] = rng.triangulable_pair(n, Mode::Exact);
    return triangulation_holds(a0, b0, osp_triangulate(a0, b0));
  });
  if (o.mode == Mode::Float) {
    run.check("normalform", "OSp triangulation identities (float)", o.samples, [&](std::size_t) {
      auto [a0, b0] = rng.triangulable_pair(n, Mode::Float);
      return triangulation_holds(a0, b0, osp_triangulate(a0, b0));
    });
  }
  run.check("normalform", "SL2 triangulation residual (float)", o.samples, [&](std::size_t i) {
    auto [a, b] = rng.sl2_pair(i % 5 == 0);
    NormalFormRecord r = sl2_triangulate(a, b);
    const SuperMatrix& g = r.conjugator;
    SuperMatrix gi = form_matrix_inverse(1, Mode::Float) * supertranspose(g) * form_matrix(1, Mode::Float);
    SuperMatrix ea = from_sl2(a.to_float(), 1).matrix(), eb = from_sl2(b.to_float(), 1).matrix();
    return (g * ea * gi - r.normal_a).max_abs() < kTol * 10 && (g * eb * gi - r.normal_b).max_abs() < kTol * 10 &&
           r.normal_a(0, 1).is_zero() && r.normal_b(1, 0).is_zero();
  });
  run.check("normalform", "OSp bodies match the SL2 normal form", o.samples, [&](std::size_t) {
    auto [a0, b0] = rng.triangulable_pair(n, Mode::Exact);
    NormalFormRecord r = osp_triangulate(a0, b0);
    NormalFormRecord s = sl2_triangulate(reduce_body(a0), reduce_body(b0));
    auto diff = [](const GrassmannElement& x, const GrassmannElement& y) {
      return std::abs(x.body().to_complex() - y.body().to_complex());
    };
    return diff(r.lambda, s.lambda) < 1e-9 && diff(r.mu, s.mu) < 1e-9 && diff(r.kappa, s.kappa) < 1e-8;
  });
  run.check("normalform", "z2 flip negates psi and xi (exact)", o.samples, [&](std::size_t) {
    auto [a0, b0] = rng.triangulable_pair(n, Mode::Exact);
    NormalFormRecord r = osp_triangulate(a0, b0);
    NormalFormRecord f = osp_triangulate(z2_flip(a0), z2_flip(b0));
    return f.lambda == r.lambda && f.mu == r.mu && f.kappa == r.kappa && f.psi == -r.psi && f.xi == -r.xi;
  });
  run.check("normalform", "Hensel lift of y^2 = 1 + t1 t2", 1, [&](std::size_t) {
    const Mode m = o.mode;
    GrassmannElement t12 = GrassmannElement::generator(n, 1, m) * GrassmannElement::generator(n, 2, m);
    GrassmannElement one = GrassmannElement::constant(n, Scalar::one(m));
    LambdaPolynomial p({-(one + t12), GrassmannElement(n, m), one});
    GrassmannElement y = hensel_lift_root(p, Scalar::one(m));
    return near_zero(p(y)) && close(y, one + Scalar::rational(m, Rational(1, 2)) * t12);
  });
  std::vector<const std::pair<std::string, Json>*> expected;
  for (const auto& p : fx.pairs) {
    if (p.second.contains("expected")) expected.push_back(&p);
  }
  if (!expected.empty()) {
    run.check("normalform", "fixture normal forms match expected values", expected.size(), [&](std::size_t i) {
      const Json& j = expected[i]->second;
      RepresentationPair rho = pair_from_json(j, o.mode == Mode::Float);
      NormalFormRecord r = osp_triangulate(rho.image_a, rho.image_b);
      if (!triangulation_holds(rho.image_a, rho.image_b, r)) return false;
      const Json& e = j.at("expected");
      auto body_is = [&](const GrassmannElement& x, const Json& v) {
        return std::abs(x.body().to_complex() - scalar_from_json(v, Mode::Float).to_complex()) < 1e-9;
      };
      FrickeCoords fc = fricke_coords(r.lambda, ginv(r.mu), r.kappa);
      const Json& fr = e.at("fricke");
      return body_is(r.lambda, e.at("lambda")) && body_is(r.mu, e.at("mu")) && body_is(r.kappa, e.at("kappa")) &&
             body_is(fc.x, fr.at("x")) && body_is(fc.y, fr.at("y")) && body_is(fc.z, fr.at("z"));
    });
  }
}

void invariants_suite(Runner& run, Sampler& rng, const Fixtures& fx) {
  const auto& o = run.opt_;
  const int n = o.n;
  const Mode m = o.mode;
  std::vector<FreeWord> words = fx.words;
  if (words.empty()) words = parse_word_list("A,B,AB,Ab,AABB,ABab");
  run.check("invariants", "trace words are conjugation invariant", o.samples, [&](std::size_t) {
    RepresentationPair rho(rng.osp(n, m), rng.osp(n, m));
    RepresentationPair moved = conjugate(rng.osp(n, m), rho);
    for (const auto& w : words) {
      const double ref = std::max(word_scale(w, rho), word_scale(w, moved));
      if (!close_at(trace_word(w, moved), trace_word(w, rho), ref)) return false;
    }
    return true;
  });
  if (!fx.pairs.empty()) {
    run.check("invariants", "fixture trace words are conjugation invariant and even", fx.pairs.size(),
              [&](std::size_t i) {
                RepresentationPair rho = pair_from_json(fx.pairs[i].second, m == Mode::Float);
                RepresentationPair moved = conjugate(rng.osp(rho.num_generators(), rho.mode()), rho);
                std::vector<GrassmannElement> values;
                for (const auto& w : words) {
                  values.push_back(trace_word(w, rho));
                  const double ref = std::max(word_scale(w, rho), word_scale(w, moved));
                  if (!close_at(trace_word(w, moved), values.back(), ref)) return false;
                }
                return parity_audit(values);
              });
  }
  run.check("invariants", "word evaluation is a homomorphism", o.samples, [&](std::size_t i) {
    RepresentationPair rho(rng.osp(n, m), rng.osp(n, m));
    const FreeWord& w1 = words[i % words.size()];
    const FreeWord& w2 = words[(i + 1) % words.size()];
    return close_at(evaluate_word(w1 * w2, rho), evaluate_word(w1, rho) * evaluate_word(w2, rho),
                    word_scale(w1 * w2, rho));
  });
  run.check("invariants", "cycle products equal tensor contractions", o.samples, [&](std::size_t) {
    std::vector<SuperMatrix> as = {rng.even_matrix(n, m), rng.even_matrix(n, m), rng.even_matrix(n, m)};
    for (const auto& s : PermutationInvariant::all(3)) {
      if (!close(mu_sigma(as, s), mu_sigma_contraction(as, s))) return false;
    }
    return true;
  });
  run.check("invariants", "Gram determinant of four vectors vanishes (exact)", o.samples, [&](std::size_t) {
    std::vector<SuperVector> vs;
    for (int k = 0; k < 4; ++k) vs.push_back(rng.even_vector(n, Mode::Exact));
    return leibniz_det(gram_matrix(vs)).is_zero();
  });
  run.check("invariants", "restitution of the polarization is d! f (exact)", o.samples, [&](std::size_t i) {
    const std::vector<Variable> vars = {{"x", false, 0}, {"p", true, 0}, {"y", false, 0}, {"q", true, 0}};
    const unsigned d = static_cast<unsigned>(1 + i % 4);
    SuperPolynomial f = SuperPolynomial::constant(vars, Scalar::one(Mode::Exact));
    std::int64_t fact = 1;
    for (unsigned k = 1; k <= d; ++k) {
      SuperPolynomial lin(vars, Mode::Exact);
      for (std::size_t v = 0; v < vars.size(); ++v) {
        lin += rng.scalar(Mode::Exact) * SuperPolynomial::variable(vars, v, Mode::Exact);
      }
      f = f * lin;
      fact *= k;
    }
    return restitute(polarize(f), vars) == Scalar::integer(Mode::Exact, fact) * f;
  });
  run.check("invariants", "parity audit of mu_sigma values", o.samples, [&](std::size_t) {
    std::vector<SuperMatrix> as = {rng.even_matrix(n, m), rng.even_matrix(n, m), rng.even_matrix(n, m)};
    std::vector<GrassmannElement> values;
    for (const auto& s : PermutationInvariant::all(3)) values.push_back(mu_sigma(as, s));
    return parity_audit(values);
  });
}

}  // namespace

bool VerifyReport::ok() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"grassmann", "superlinalg", "osp", "normalform", "invariants"};
  return names;
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto& names = suite_names();
  if (options.suite != "all" && std::find(names.begin(), names.end(), options.suite) == names.end()) {
    throw DomainError("unknown suite \"" + options.suite + "\"");
  }
  if (options.n < 4 || options.n > kMaxGenerators) throw DomainError("n must lie in 4..16");
  if (options.samples == 0) throw DomainError("samples must be positive");
  Fixtures fx = load_fixtures(options.fixtures);
  VerifyReport report;
  Runner run(options, report);
  auto want = [&](const char* s) { return options.suite == "all" || options.suite == s; };
  // Each suite draws from its own stream so results do not depend on which
  // other suites ran.
  if (want("grassmann")) {
    Sampler rng(options.seed ^ 0x1);
    grassmann_suite(run, rng);
  }
  if (want("superlinalg")) {
    Sampler rng(options.seed ^ 0x2);
    superlinalg_suite(run, rng);
  }
  if (want("osp")) {
    Sampler rng(options.seed ^ 0x3);
    osp_suite(run, rng, fx);
  }
  if (want("normalform")) {
    Sampler rng(options.seed ^ 0x4);
    normalform_suite(run, rng, fx);
  }
  if (want("invariants")) {
    Sampler rng(options.seed ^ 0x5);
    invariants_suite(run, rng, fx);
  }
  return report;
}

void print_report(std::ostream& os, const VerifyReport& report) {
  std::size_t width = 5;
  for (const auto& c : report.checks) width = std::max(width, c.suite.size() + 2 + c.name.size());
  for (const auto& c : report.checks) {
    os << std::left << std::setw(static_cast<int>(width)) << (c.suite + ": " + c.name) << "  "
       << (c.ok() ? "PASS" : "FAIL") << "  " << c.passed << "/" << c.total;
    if (!c.ok() && !c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  std::size_t passed = 0;
  for (const auto& c : report.checks) passed += c.ok() ? 1 : 0;
  os << passed << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace sfk
