#include "sfk/invariants.hpp"

#include <algorithm>
#include <numeric>

#include "sfk/errors.hpp"

namespace sfk {

SuperMatrix gram_matrix(const std::vector<SuperVector>& vs) {
  if (vs.empty()) throw ShapeError("gram_matrix needs at least one vector");
  const int n = vs[0].num_generators();
  const Mode mode = vs[0].mode();
  for (const auto& v : vs) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (v[i].num_generators() != n) throw ShapeError("vectors use different N");
      if (v[i].mode() != mode) throw ModeMismatch("vectors use different modes");
    }
  }
  SuperMatrix g(vs.size(), vs.size(), n, mode);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) g.set(i, j, pairing(vs[i], vs[j]));
  }
  return g;
}

GrassmannElement matching_invariant(const std::vector<SuperVector>& vs,
                                    std::vector<std::pair<std::size_t, std::size_t>> matching) {
  const std::size_t count = vs.size();
  if (count == 0 || count % 2 != 0) throw DomainError("matching_invariant needs an even, positive number of vectors");
  if (matching.size() * 2 != count) throw DomainError("matching does not cover every vector");
  std::vector<bool> seen(count, false);
  for (auto& [i, j] : matching) {
    if (i >= count || j >= count || i == j || seen[i] || seen[j]) throw DomainError("not a perfect matching");
    seen[i] = seen[j] = true;
    if (j < i) std::swap(i, j);
  }
  std::sort(matching.begin(), matching.end());
  GrassmannElement out = GrassmannElement::constant(vs[0].num_generators(), Scalar::one(vs[0].mode()));
  for (const auto& [i, j] : matching) out = out * pairing(vs[i], vs[j]);
  return out;
}

PermutationInvariant::PermutationInvariant(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x : images_) {
    if (x >= images_.size() || seen[x]) throw DomainError("not a permutation");
    seen[x] = true;
  }
  std::fill(seen.begin(), seen.end(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t i = start; !seen[i]; i = images_[i]) {
      seen[i] = true;
      cycle.push_back(i);
    }
    cycles_.push_back(std::move(cycle));
  }
}

PermutationInvariant PermutationInvariant::identity(std::size_t k) {
  std::vector<std::size_t> id(k);
  std::iota(id.begin(), id.end(), 0);
  return PermutationInvariant(std::move(id));
}

std::vector<PermutationInvariant> PermutationInvariant::all(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<PermutationInvariant> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

void require_even_squares(const std::vector<SuperMatrix>& as, const PermutationInvariant& sigma) {
  if (as.size() != sigma.size()) throw ShapeError("permutation size differs from the number of matrices");
  for (const auto& a : as) {
    if (!a.is_layout_square() || !a.satisfies_parity(MatrixParity::Even)) {
      throw ParityError("mu_sigma needs even 3x3 matrices");
    }
  }
}

GrassmannElement unit(const std::vector<SuperMatrix>& as) {
  return GrassmannElement::constant(as.empty() ? 1 : as[0].num_generators(),
                                    Scalar::one(as.empty() ? Mode::Exact : as[0].mode()));
}

}  // namespace

GrassmannElement mu_sigma(const std::vector<SuperMatrix>& as, const PermutationInvariant& sigma) {
  require_even_squares(as, sigma);
  GrassmannElement out = unit(as);
  for (const auto& cycle : sigma.cycles()) {
    SuperMatrix prod = as[cycle[0]];
    for (std::size_t r = 1; r < cycle.size(); ++r) prod = prod * as[cycle[r]];
    out = out * supertrace(prod);
  }
  return out;
}

GrassmannElement mu_sigma_contraction(const std::vector<SuperMatrix>& as, const PermutationInvariant& sigma) {
  require_even_squares(as, sigma);
  if (as.empty()) return unit(as);
  const SuperMatrix j = form_matrix(as[0].num_generators(), as[0].mode());
  GrassmannElement out = unit(as);
  for (const auto& cycle : sigma.cycles()) {
    SuperMatrix chain = end_to_tensor(as[cycle[0]]);
    for (std::size_t r = 1; r < cycle.size(); ++r) chain = chain * j * end_to_tensor(as[cycle[r]]);
    // Close the cycle: pair the free right slot with the free left slot.
    GrassmannElement closed(as[0].num_generators(), as[0].mode());
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        if (j(b, a).is_zero() || chain(a, b).is_zero()) continue;
        GrassmannElement t = chain(a, b) * j(b, a);
        closed += layout_odd(a) ? -t : t;
      }
    }
    out = out * closed;
  }
  return out;
}

SuperMatrix end_to_tensor(const SuperMatrix& a) {
  if (!a.is_layout_square()) throw ShapeError("end_to_tensor needs a 3x3 matrix");
  return a * form_matrix_inverse(a.num_generators(), a.mode());
}

SuperMatrix tensor_to_end(const SuperMatrix& t) {
  if (!t.is_layout_square()) throw ShapeError("tensor_to_end needs a 3x3 tensor");
  return t * form_matrix(t.num_generators(), t.mode());
}

SuperMatrix tensor_action(const SuperMatrix& g, const SuperMatrix& t) {
  if (!g.is_layout_square() || !t.is_layout_square()) throw ShapeError("tensor_action needs 3x3 inputs");
  SuperMatrix out(3, 3, g.num_generators(), g.mode(), MatrixParity::None);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      GrassmannElement acc(g.num_generators(), g.mode());
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
          GrassmannElement term = g(a, i) * t(i, k) * g(b, k);
          acc += (!layout_odd(k) && layout_odd(b)) ? -term : term;
        }
      }
      out.set(a, b, std::move(acc));
    }
  }
  if (out.satisfies_parity(MatrixParity::Even)) return out.with_parity(MatrixParity::Even);
  return out;
}

GrassmannElement tensor_pairing(const SuperMatrix& t, const SuperVector& v, const SuperVector& w) {
  const SuperMatrix j = form_matrix(t.num_generators(), t.mode());
  const SuperMatrix m = j * t * j;
  GrassmannElement acc(t.num_generators(), t.mode());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t l = 0; l < 3; ++l) {
      if (!m(i, l).is_zero()) acc += v[i] * m(i, l) * w[l];
    }
  }
  return acc;
}

GrassmannElement dual_pairing(const SuperVector& v, const SuperVector& phi) {
  GrassmannElement acc(v.num_generators(), v.mode());
  for (std::size_t i = 0; i < 3; ++i) {
    GrassmannElement t = v[i] * phi[i];
    acc += layout_odd(i) ? -t : t;
  }
  return acc;
}

GrassmannElement trace_word(const FreeWord& w, const RepresentationPair& rho) {
  return supertrace(evaluate_word(w, rho));
}

bool parity_audit(const std::vector<GrassmannElement>& values) {
  return std::all_of(values.begin(), values.end(), [](const GrassmannElement& x) { return x.odd_part().is_zero(); });
}

}  // namespace sfk
