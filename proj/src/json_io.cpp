#include "sfk/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sfk/errors.hpp"

namespace sfk {

namespace {

Json rational_json(const Rational& q) { return q.str(); }

Json idx_json(Mask mask) {
  Json idx = Json::array();
  for (int i = 0; i < kMaxGenerators; ++i) {
    if ((mask >> i) & 1u) idx.push_back(i + 1);
  }
  return idx;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) {
    const double d = j.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15) return Rational(static_cast<std::int64_t>(d));
    throw DomainError("non-integral number in exact input");
  }
  throw DomainError("expected a number or a fraction string");
}

double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return Rational::parse(j.get<std::string>()).to_double();
  throw DomainError("expected a number or a fraction string");
}

MatrixParity parity_from_string(const std::string& s) {
  if (s == "even") return MatrixParity::Even;
  if (s == "odd") return MatrixParity::Odd;
  if (s == "none") return MatrixParity::None;
  throw DomainError("unknown parity \"" + s + "\"");
}

}  // namespace

Json to_json(const Scalar& s) {
  if (s.is_exact()) {
    if (s.im().is_zero()) return rational_json(s.re());
    return Json{{"re", rational_json(s.re())}, {"im", rational_json(s.im())}};
  }
  const std::complex<double> z = s.to_complex();
  if (z.imag() == 0.0) return z.real();
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json to_json(const GrassmannElement& x) {
  std::vector<const Term*> order;
  for (const Term& t : x.terms()) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) { return canonical_less(a->mask, b->mask); });
  Json terms = Json::array();
  for (const Term* tp : order) {
    const Term& t = *tp;
    Json term;
    term["idx"] = idx_json(t.mask);
    if (t.coeff.is_exact()) {
      term["re"] = rational_json(t.coeff.re());
      term["im"] = rational_json(t.coeff.im());
    } else {
      term["re"] = t.coeff.to_complex().real();
      term["im"] = t.coeff.to_complex().imag();
    }
    terms.push_back(std::move(term));
  }
  Json out;
  out["n"] = x.num_generators();
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const SuperMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["parity"] = to_string(m.parity());
  out["entries"] = std::move(rows);
  return out;
}

Json to_json(const OSpElement& g) {
  Json out = to_json(g.matrix());
  if (g.provenance()) {
    Json sl2 = Json::array(), odd = Json::array();
    for (const auto& e : g.provenance()->sl2) sl2.push_back(to_json(e));
    for (const auto& e : g.provenance()->odd) odd.push_back(to_json(e));
    out["provenance"] = Json{{"sl2", sl2}, {"odd", odd}};
  }
  return out;
}

Json to_json(const NormalFormRecord& r) {
  Json out;
  out["branch"] = to_string(r.branch);
  out["coords"] = Json{{"lambda", to_json(r.lambda)},
                       {"mu", to_json(r.mu)},
                       {"kappa", to_json(r.kappa)},
                       {"psi", to_json(r.psi)},
                       {"xi", to_json(r.xi)}};
  out["params"] = Json{{"x", to_json(r.x)}, {"y", to_json(r.y)}, {"nu", to_json(r.nu)}};
  out["conjugator"] = to_json(r.conjugator);
  out["normal_a"] = to_json(r.normal_a);
  out["normal_b"] = to_json(r.normal_b);
  return out;
}

Json to_json(const CensusResult& r) {
  Json out;
  out["generators"] = r.names;
  out["monomials"] = r.monomials.size();
  out["samples"] = r.samples;
  out["rank"] = r.rank;
  out["kernel_dimension"] = r.kernel_basis.size();
  Json basis = Json::array();
  for (const auto& v : r.kernel_basis) basis.push_back(r.relation_string(v));
  out["kernel_basis"] = std::move(basis);
  return out;
}

Json to_json(const GeneratorReport& r) {
  Json out;
  out["gram_rank"] = r.gram_rank;
  out["gram_ranks"] = r.gram_ranks;
  out["ideal_invariants"] = r.ideal_invariants;
  out["ber_checks"] = Json{{"trials", r.ber_trials}, {"passed", r.ber_passed}};
  out["count"] = Json{{"total", r.total}, {"ideal", r.ideal}, {"quotient", r.quotient}};
  out["counting_line"] = r.counting_line;
  out["trace_words"] = r.trace_words;
  out["trace_word_rank"] = r.trace_word_rank;
  return out;
}

bool contains_float(const Json& j) {
  if (j.is_number_float()) {
    const double d = j.get<double>();
    return d != std::floor(d);
  }
  if (j.is_structured()) {
    for (const auto& item : j) {
      if (contains_float(item)) return true;
    }
  }
  return false;
}

Scalar scalar_from_json(const Json& j, Mode mode) {
  if (j.is_object()) {
    const Json zero = 0;
    const Json& re = require(j, "re");
    const Json& im = j.contains("im") ? j.at("im") : zero;
    if (mode == Mode::Exact) return Scalar::exact(rational_from_json(re), rational_from_json(im));
    return Scalar::floating({double_from_json(re), double_from_json(im)});
  }
  if (mode == Mode::Exact) return Scalar::exact(rational_from_json(j));
  return Scalar::floating(double_from_json(j));
}

GrassmannElement element_from_json(const Json& j, int n, Mode mode) {
  if (!j.is_object()) return GrassmannElement::constant(n, scalar_from_json(j, mode));
  const int own = j.contains("n") ? j.at("n").get<int>() : n;
  if (own < 1 || own > kMaxGenerators) throw DomainError("generator count out of range");
  if (own > n) throw ShapeError("element uses more generators than the pair");
  std::vector<Term> terms;
  for (const auto& t : require(j, "terms")) {
    Mask mask = 0;
    for (const auto& i : require(t, "idx")) {
      const int k = i.get<int>();
      if (k < 1 || k > own) throw DomainError("generator index out of range");
      const Mask bit = Mask{1} << (k - 1);
      if (mask & bit) throw DomainError("repeated generator index");
      mask |= bit;
    }
    terms.push_back({mask, scalar_from_json(t, mode)});
  }
  return GrassmannElement::from_terms(own, mode, std::move(terms)).widen(n);
}

SuperMatrix matrix_from_json(const Json& j, int n, Mode mode) {
  std::vector<std::vector<GrassmannElement>> rows;
  for (const auto& row : require(j, "entries")) {
    std::vector<GrassmannElement> r;
    for (const auto& e : row) r.push_back(element_from_json(e, n, mode));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ShapeError("matrix has no rows");
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != rows.size()) {
    throw ShapeError("row count disagrees with entries");
  }
  if (j.contains("cols") && j.at("cols").get<std::size_t>() != rows.front().size()) {
    throw ShapeError("column count disagrees with entries");
  }
  const MatrixParity parity = parity_from_string(j.value("parity", std::string("none")));
  return SuperMatrix::from_rows(rows, parity);
}

OSpElement osp_from_json(const Json& j, int n, Mode mode) {
  if (j.is_object() && j.contains("entries")) {
    SuperMatrix m = matrix_from_json(j, n, mode);
    if (m.parity() == MatrixParity::None) m = m.with_parity(MatrixParity::Even);
    return OSpElement::from_matrix(m);
  }
  const Json& src = j.is_object() && j.contains("provenance") ? j.at("provenance") : j;
  const Json& sl2 = require(src, "sl2");
  if (!sl2.is_array() || sl2.size() != 4) throw ShapeError("\"sl2\" needs four entries");
  std::array<GrassmannElement, 4> e = {element_from_json(sl2[0], n, mode), element_from_json(sl2[1], n, mode),
                                       element_from_json(sl2[2], n, mode), element_from_json(sl2[3], n, mode)};
  GrassmannElement gamma(n, mode), delta(n, mode);
  if (src.contains("odd")) {
    const Json& odd = src.at("odd");
    if (!odd.is_array() || odd.size() != 2) throw ShapeError("\"odd\" needs two entries");
    gamma = element_from_json(odd[0], n, mode);
    delta = element_from_json(odd[1], n, mode);
  }
  return compose_general(e[0], e[1], e[2], e[3], gamma, delta);
}

RepresentationPair pair_from_json(const Json& j, bool force_float) {
  if (!j.is_object()) throw DomainError("pair input must be an object");
  const int n = j.value("n", kDefaultGenerators);
  if (n < 1 || n > kMaxGenerators) throw DomainError("generator count out of range");
  const Mode mode = force_float || contains_float(j) ? Mode::Float : Mode::Exact;
  return RepresentationPair(osp_from_json(require(j, "A"), n, mode), osp_from_json(require(j, "B"), n, mode));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

}  // namespace sfk
