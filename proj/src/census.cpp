#include "sfk/census.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "sfk/errors.hpp"
#include "sfk/invariants.hpp"

namespace sfk {

namespace {

void enumerate(std::size_t k, std::size_t var, unsigned left, Exponents& cur, std::vector<Exponents>& out) {
  if (var + 1 == k) {
    cur[var] = left;
    out.push_back(cur);
    return;
  }
  for (unsigned e = left + 1; e-- > 0;) {
    cur[var] = e;
    enumerate(k, var + 1, left - e, cur, out);
  }
  cur[var] = 0;
}

// Rows are integer vectors kept sorted by pivot column; every row is
// primitive and reduction uses only cross multiplication.
class Echelon {
 public:
  explicit Echelon(std::size_t cols) : cols_(cols) {}
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  void add(std::vector<mpz_class> r) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (r[c] == 0) continue;
      const std::vector<mpz_class>& p = rows_[k];
      mpz_class g = gcd(p[c], r[c]);
      mpz_class fp = p[c] / g;
      mpz_class fr = r[c] / g;
      for (std::size_t j = 0; j < cols_; ++j) r[j] = fp * r[j] - fr * p[j];
    }
    auto lead = std::find_if(r.begin(), r.end(), [](const mpz_class& x) { return x != 0; });
    if (lead == r.end()) return;
    mpz_class content = 0;
    for (const auto& x : r) content = gcd(content, x);
    if (content != 1) {
      for (auto& x : r) x /= content;
    }
    const std::size_t pivot = static_cast<std::size_t>(lead - r.begin());
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    const auto idx = pos - pivots_.begin();
    pivots_.insert(pos, pivot);
    rows_.insert(rows_.begin() + idx, std::move(r));
  }

  /// Null-space vectors from the reduced row echelon form, keyed by free column.
  std::vector<std::pair<std::size_t, std::vector<mpq_class>>> kernel() const {
    std::vector<std::vector<mpq_class>> rr(rows_.size(), std::vector<mpq_class>(cols_));
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      for (std::size_t j = 0; j < cols_; ++j) rr[k][j] = rows_[k][j];
    }
    for (std::size_t k = rr.size(); k-- > 0;) {
      const std::size_t c = pivots_[k];
      mpq_class inv = 1 / rr[k][c];
      for (auto& x : rr[k]) x *= inv;
      for (std::size_t up = 0; up < k; ++up) {
        if (rr[up][c] == 0) continue;
        mpq_class f = rr[up][c];
        for (std::size_t j = c; j < cols_; ++j) rr[up][j] -= f * rr[k][j];
      }
    }
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots_) is_pivot[c] = true;
    std::vector<std::pair<std::size_t, std::vector<mpq_class>>> out;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<mpq_class> v(cols_);
      v[f] = 1;
      for (std::size_t k = 0; k < rr.size(); ++k) v[pivots_[k]] = -rr[k][f];
      out.emplace_back(f, std::move(v));
    }
    return out;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<mpz_class>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<mpz_class> integer_row(const std::vector<mpq_class>& q) {
  mpz_class l = 1;
  for (const auto& x : q) {
    if (x != 0) l = lcm(l, x.get_den());
  }
  std::vector<mpz_class> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i].get_num() * (l / q[i].get_den());
  return out;
}

struct Block {
  std::vector<std::size_t> columns;  // global monomial indices
  Echelon echelon;
};

std::vector<Variable> gram_variables() {
  std::vector<Variable> vars;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i; j <= 4; ++j) vars.push_back({"g" + std::to_string(i) + std::to_string(j), false, 0});
  }
  return vars;
}

std::size_t gram_index(std::size_t i, std::size_t j) {
  // Position of (i, j), i <= j, in row-major upper-triangular order of a 4x4.
  static const std::size_t start[4] = {0, 4, 7, 9};
  return start[i] + (j - i);
}

}  // namespace

std::vector<Exponents> census_monomials(std::size_t k, unsigned degree) {
  std::vector<Exponents> out;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  for (unsigned d = 0; d <= degree; ++d) {
    Exponents cur(k, 0);
    enumerate(k, 0, d, cur, out);
  }
  return out;
}

std::string CensusResult::relation_string(const std::vector<Rational>& v) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (v[m].is_zero()) continue;
    Rational c = v[m];
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (c.sign() < 0) c = -c;
    first = false;
    bool any = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < monomials[m].size(); ++i) {
      if (monomials[m][i] == 0) continue;
      if (any) mono << "*";
      any = true;
      mono << names[i];
      if (monomials[m][i] > 1) mono << "^" << monomials[m][i];
    }
    if (!any) {
      os << c.str();
    } else {
      if (!c.is_one()) os << c.str() << "*";
      os << mono.str();
    }
  }
  return first ? "0" : os.str();
}

bool CensusResult::contains(const std::vector<Rational>& v) const {
  if (v.size() != monomials.size()) throw ShapeError("vector does not match the monomial basis");
  std::vector<Rational> rest = v;
  for (std::size_t k = 0; k < kernel_basis.size(); ++k) {
    const Rational c = rest[free_monomials[k]];
    if (c.is_zero()) continue;
    for (std::size_t m = 0; m < rest.size(); ++m) {
      if (!kernel_basis[k][m].is_zero()) rest[m] -= c * kernel_basis[k][m];
    }
  }
  return std::all_of(rest.begin(), rest.end(), [](const Rational& x) { return x.is_zero(); });
}

CensusResult relation_census(const CensusScenario& scenario, unsigned degree, std::size_t samples,
                             std::uint64_t seed) {
  if (degree < 1) throw DomainError("census degree must be at least 1");
  const std::size_t k = scenario.names.size();
  CensusResult result;
  result.names = scenario.names;
  result.monomials = census_monomials(k, degree);
  const std::size_t count = result.monomials.size();
  if (samples < count) {
    throw InsufficientSamples("need at least " + std::to_string(count) + " sample points, got " +
                              std::to_string(samples));
  }
  if (!scenario.weights.empty() && scenario.weights.size() != k) throw ShapeError("one weight per generator");

  // Parent of each monomial: same exponents with one factor of its last variable removed.
  std::map<Exponents, std::size_t> index;
  for (std::size_t m = 0; m < count; ++m) index[result.monomials[m]] = m;
  std::vector<std::size_t> parent(count, 0), factor(count, 0);
  for (std::size_t m = 1; m < count; ++m) {
    Exponents e = result.monomials[m];
    std::size_t last = k;
    while (last-- > 0 && e[last] == 0) {
    }
    --e[last];
    parent[m] = index.at(e);
    factor[m] = last;
  }

  // Group monomials into weight blocks.
  std::map<std::vector<int>, std::size_t> block_of_weight;
  std::vector<Block> blocks;
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<int> w;
    if (!scenario.weights.empty()) {
      w.assign(scenario.weights[0].size(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t t = 0; t < w.size(); ++t) w[t] += static_cast<int>(result.monomials[m][i]) * scenario.weights[i][t];
      }
    }
    auto [it, inserted] = block_of_weight.emplace(w, blocks.size());
    if (inserted) blocks.push_back({{}, Echelon(0)});
    blocks[it->second].columns.push_back(m);
  }
  for (auto& b : blocks) b.echelon = Echelon(b.columns.size());

  Sampler rng(seed);
  // Weights of the functional on Grassmann monomials, drawn once per run.
  std::vector<std::int64_t> functional;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<GrassmannElement> values = scenario.sample(rng);
    if (values.size() != k) throw ShapeError("scenario returned the wrong number of values");
    const int n = values[0].num_generators();
    if (functional.empty()) {
      Sampler weights(seed ^ 0x9E3779B97F4A7C15ull);
      functional.resize(std::size_t{1} << n);
      for (auto& w : functional) w = weights.integer(1, 1000003);
    }
    for (const auto& v : values) {
      if (v.mode() != Mode::Exact) throw ModeMismatch("the census needs exact values");
      if (!v.is_even()) throw ParityError("census generators must be even");
    }
    std::vector<GrassmannElement> mono(count, GrassmannElement(n, Mode::Exact));
    mono[0] = GrassmannElement::constant(n, Scalar::one(Mode::Exact));
    for (std::size_t m = 1; m < count; ++m) {
      const GrassmannElement& p = mono[parent[m]];
      const GrassmannElement& g = values[factor[m]];
      if (!p.is_zero() && !g.is_zero()) mono[m] = p * g;
    }
    // One row per block: a fixed random functional applied to the Grassmann
    // coefficients, real and imaginary parts separately.
    std::vector<Rational> re(count), im(count);
    bool complex = false;
    for (std::size_t m = 0; m < count; ++m) {
      for (const Term& t : mono[m].terms()) {
        const Rational w(functional[t.mask]);
        re[m] += w * t.coeff.re();
        if (!t.coeff.im().is_zero()) {
          im[m] += w * t.coeff.im();
          complex = true;
        }
      }
    }
    for (auto& block : blocks) {
      if (block.echelon.full()) continue;
      std::vector<mpq_class> row(block.columns.size());
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = re[block.columns[c]].to_mpq();
      block.echelon.add(integer_row(row));
      if (complex) {
        for (std::size_t c = 0; c < row.size(); ++c) row[c] = im[block.columns[c]].to_mpq();
        block.echelon.add(integer_row(row));
      }
    }
  }

  std::vector<std::pair<std::size_t, std::vector<Rational>>> kernel;
  for (const auto& block : blocks) {
    result.rank += block.echelon.rank();
    for (auto& [free, v] : block.echelon.kernel()) {
      std::vector<Rational> full(count);
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] != 0) full[block.columns[c]] = Rational(v[c]);
      }
      kernel.emplace_back(block.columns[free], std::move(full));
    }
  }
  std::sort(kernel.begin(), kernel.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [free, v] : kernel) {
    result.free_monomials.push_back(free);
    result.kernel_basis.push_back(std::move(v));
  }
  result.samples = samples;
  return result;
}

CensusScenario polynomial_scenario(const std::vector<SuperPolynomial>& generators, int n) {
  if (generators.empty()) throw ShapeError("no generators");
  CensusScenario s;
  for (std::size_t i = 0; i < generators.size(); ++i) s.names.push_back("f" + std::to_string(i + 1));
  const std::vector<Variable> vars = generators[0].variables();
  s.sample = [generators, vars, n](Sampler& rng) {
    std::vector<GrassmannElement> point;
    for (const auto& v : vars) point.push_back(v.odd ? rng.odd(n, Mode::Exact) : rng.even(n, Mode::Exact, false));
    std::vector<GrassmannElement> out;
    for (const auto& g : generators) out.push_back(g.evaluate(point));
    return out;
  };
  return s;
}

namespace {

// Grassmann element with integer coefficients: optional body plus 1..3
// monomials of the given degree.
GrassmannElement integer_element(Sampler& rng, int n, int degree, bool with_body) {
  GrassmannElement e = GrassmannElement::constant(n, Mode::Exact, with_body ? rng.integer(-7, 7) : 0);
  if (n < degree) return e;
  const std::int64_t terms = rng.integer(1, 3);
  for (std::int64_t t = 0; t < terms; ++t) {
    Mask mask = 0;
    while (std::popcount(mask) < degree) mask |= Mask{1} << rng.integer(0, n - 1);
    std::int64_t c = rng.integer(1, 7) * (rng.coin() ? 1 : -1);
    e += GrassmannElement::monomial(n, mask, Scalar::exact(Rational(c)));
  }
  return e;
}

}  // namespace

CensusScenario gram_scenario(int n) {
  CensusScenario s;
  for (const auto& v : gram_variables()) s.names.push_back(v.name);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j) {
      std::vector<int> w(4, 0);
      ++w[i];
      ++w[j];
      s.weights.push_back(w);
    }
  }
  s.sample = [n](Sampler& rng) {
    std::vector<SuperVector> vs;
    for (int i = 0; i < 4; ++i) {
      vs.push_back(SuperVector{{integer_element(rng, n, 2, true), integer_element(rng, n, 2, true),
                                integer_element(rng, n, 1, false)}});
    }
    std::vector<GrassmannElement> out;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i; j < 4; ++j) out.push_back(pairing(vs[i], vs[j]));
    }
    return out;
  };
  return s;
}

CensusScenario fricke_scenario() {
  CensusScenario s;
  s.names = {"X", "Y", "Z"};
  s.sample = [](Sampler& rng) {
    Matrix2 a = rng.sl2_body(Mode::Exact);
    Matrix2 b = rng.sl2_body(Mode::Exact);
    return std::vector<GrassmannElement>{GrassmannElement::constant(1, a.trace()),
                                         GrassmannElement::constant(1, b.trace()),
                                         GrassmannElement::constant(1, (a * b).trace())};
  };
  return s;
}

std::vector<Rational> gram_determinant_vector(const std::vector<Exponents>& monomials) {
  const std::vector<Variable> vars = gram_variables();
  auto entry = [&](std::size_t i, std::size_t j) {
    if (i <= j) return SuperPolynomial::variable(vars, gram_index(i, j), Mode::Exact);
    return -SuperPolynomial::variable(vars, gram_index(j, i), Mode::Exact);
  };
  SuperPolynomial det(vars, Mode::Exact);
  std::vector<std::size_t> perm = {0, 1, 2, 3};
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) inversions += perm[a] > perm[b] ? 1 : 0;
    }
    SuperPolynomial term = SuperPolynomial::constant(vars, Scalar::integer(Mode::Exact, inversions % 2 ? -1 : 1));
    for (std::size_t r = 0; r < 4; ++r) term = term * entry(r, perm[r]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Rational> out(monomials.size());
  for (const auto& [e, c] : det.terms()) {
    auto it = std::find(monomials.begin(), monomials.end(), e);
    if (it == monomials.end()) throw DomainError("census degree too small for the Gram determinant");
    out[static_cast<std::size_t>(it - monomials.begin())] = c.re();
  }
  return out;
}

namespace {

GrassmannElement constant_of(const Rational& q) { return GrassmannElement::constant(1, Scalar::exact(q)); }

// Generic 3x3 matrix of small nonzero rationals as constants over Lambda_1.
SuperMatrix generic_matrix(Sampler& rng) {
  SuperMatrix m(3, 3, 1, Mode::Exact);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) m.set(i, j, constant_of(rng.nonzero_rational()));
  }
  return m;
}

// Gradient of str(w(A, B)) in the 18 entries of A and B.
std::vector<GrassmannElement> trace_gradient(const std::string& word, const SuperMatrix& a, const SuperMatrix& b) {
  SuperMatrix s = SuperMatrix::identity(3, 1, Mode::Exact).with_parity(MatrixParity::None);
  s.set(2, 2, constant_of(-1));
  std::vector<GrassmannElement> grad(18, GrassmannElement(1, Mode::Exact));
  const SuperMatrix id = SuperMatrix::identity(3, 1, Mode::Exact).with_parity(MatrixParity::None);
  for (std::size_t r = 0; r < word.size(); ++r) {
    SuperMatrix p = id, q = id;
    for (std::size_t t = 0; t < r; ++t) p = p * (word[t] == 'A' ? a : b);
    for (std::size_t t = r + 1; t < word.size(); ++t) q = q * (word[t] == 'A' ? a : b);
    // d str(P E_pq Q) = (Q S P)_qp.
    SuperMatrix qsp = q * s * p;
    const std::size_t offset = word[r] == 'A' ? 0 : 9;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) grad[offset + i * 3 + j] += qsp(j, i);
    }
  }
  return grad;
}

std::vector<std::string> necklaces(std::size_t max_length) {
  std::vector<std::string> out;
  for (std::size_t len = 1; len <= max_length; ++len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::string w;
      for (std::size_t t = 0; t < len; ++t) w.push_back(((bits >> (len - 1 - t)) & 1u) ? 'B' : 'A');
      bool least = true;
      for (std::size_t r = 1; r < len && least; ++r) {
        if (w.substr(r) + w.substr(0, r) < w) least = false;
      }
      if (least) out.push_back(w);
    }
  }
  return out;
}

}  // namespace

GeneratorReport generator_census(int n, std::uint64_t seed, std::size_t word_length, std::size_t points) {
  GeneratorReport report;
  Sampler rng(seed);

  // Ber(A) - 1 and Ber(B) - 1 under simultaneous conjugation.
  const char* labels[2] = {"Ber(A)-1", "Ber(B)-1"};
  for (const char* label : labels) {
    std::size_t passed = 0;
    const std::size_t trials = 10;
    for (std::size_t t = 0; t < trials; ++t) {
      SuperMatrix m = rng.even_matrix(n, Mode::Exact);
      if (m(2, 2).body().is_zero()) m.set(2, 2, m(2, 2) + GrassmannElement::constant(n, Mode::Exact, 1));
      m = m.with_parity(MatrixParity::Even);
      OSpElement g = rng.osp(n, Mode::Exact);
      SuperMatrix c = g.matrix() * m * inverse(g).matrix();
      GrassmannElement one = GrassmannElement::constant(n, Mode::Exact, 1);
      if (berezinian(c) - one == berezinian(m) - one) ++passed;
    }
    report.ber_trials += trials;
    report.ber_passed += passed;
    if (passed == trials) report.ideal_invariants.emplace_back(label);
  }

  // Jacobian of B(v_i, v_j), i <= j, in the 12 coordinates of four vectors.
  const SuperMatrix j = form_matrix(1, Mode::Exact);
  for (std::size_t pt = 0; pt < points; ++pt) {
    std::vector<std::array<Rational, 3>> v(4);
    for (auto& vec : v) {
      for (auto& x : vec) x = rng.nonzero_rational();
    }
    auto jv = [&](std::size_t b) {  // J v_b
      std::array<Rational, 3> out{};
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) out[r] += j(r, c).body().re() * v[b][c];
      }
      return out;
    };
    auto vj = [&](std::size_t a) {  // v_a^T J
      std::array<Rational, 3> out{};
      for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t r = 0; r < 3; ++r) out[c] += v[a][r] * j(r, c).body().re();
      }
      return out;
    };
    SuperMatrix jac(10, 12, 1, Mode::Exact);
    std::size_t row = 0;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a; b < 4; ++b, ++row) {
        std::array<Rational, 3> left = jv(b), right = vj(a);
        for (std::size_t c = 0; c < 3; ++c) {
          Rational da = left[c], db = right[c];
          if (a == b) {
            jac.set(row, a * 3 + c, constant_of(da + db));
          } else {
            jac.set(row, a * 3 + c, constant_of(da));
            jac.set(row, b * 3 + c, constant_of(db));
          }
        }
      }
    }
    report.gram_ranks.push_back(lambda_rank(jac).rank);
  }
  report.gram_rank = report.gram_ranks.empty() ? 0 : *std::min_element(report.gram_ranks.begin(), report.gram_ranks.end());

  report.total = report.gram_rank;
  report.ideal = report.ideal_invariants.size();
  report.quotient = report.total >= report.ideal ? report.total - report.ideal : 0;
  report.counting_line = std::to_string(report.total) + " = x + " + std::to_string(report.ideal) +
                         ", x = " + std::to_string(report.quotient);

  // Exploratory: trace words of positive letters, greedily kept when their
  // gradient at a generic point raises the rank.
  SuperMatrix a = generic_matrix(rng);
  SuperMatrix b = generic_matrix(rng);
  std::vector<std::vector<GrassmannElement>> kept;
  for (const std::string& w : necklaces(word_length)) {
    std::vector<std::vector<GrassmannElement>> trial = kept;
    trial.push_back(trace_gradient(w, a, b));
    SuperMatrix m(trial.size(), 18, 1, Mode::Exact);
    for (std::size_t r = 0; r < trial.size(); ++r) {
      for (std::size_t c = 0; c < 18; ++c) m.set(r, c, trial[r][c]);
    }
    std::size_t rank = lambda_rank(m).rank;
    if (rank > kept.size()) {
      kept = std::move(trial);
      report.trace_words.push_back(w);
      report.trace_word_rank = rank;
    }
  }
  return report;
}

}  // namespace sfk
