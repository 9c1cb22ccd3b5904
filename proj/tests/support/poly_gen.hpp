#pragma once

#include <vector>

#include "sfk/sampling.hpp"
#include "sfk/superpoly.hpp"

namespace sfk::test {

enum class VarKind { Even, Odd, Mixed };

inline std::vector<Variable> base_variables(VarKind kind) {
  switch (kind) {
    case VarKind::Even: return {{"x", false, 0}, {"y", false, 0}};
    case VarKind::Odd: return {{"p", true, 0}, {"q", true, 0}, {"r", true, 0}, {"s", true, 0}};
    case VarKind::Mixed: break;
  }
  return {{"x", false, 0}, {"p", true, 0}, {"y", false, 0}, {"q", true, 0}};
}

/// Random homogeneous polynomial of degree d, nonzero whenever the variables
/// admit a monomial of that degree.
inline SuperPolynomial random_homogeneous(Sampler& rng, const std::vector<Variable>& vars, unsigned d, int terms = 4) {
  SuperPolynomial f(vars, Mode::Exact);
  for (int attempt = 0; attempt < 64 && static_cast<int>(f.terms().size()) < terms; ++attempt) {
    Exponents e(vars.size(), 0);
    unsigned left = d;
    bool ok = true;
    for (int guard = 0; left > 0 && guard < 64; ++guard) {
      std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(vars.size()) - 1));
      if (vars[i].odd && e[i] == 1) continue;
      ++e[i];
      --left;
    }
    if (left > 0) ok = false;
    if (ok) f += SuperPolynomial::monomial(vars, e, rng.nonzero_scalar(Mode::Exact));
  }
  return f;
}

/// Random point: even values for even variables, odd values for odd ones.
inline std::vector<GrassmannElement> random_point(Sampler& rng, const std::vector<Variable>& vars, int n) {
  std::vector<GrassmannElement> out;
  for (const auto& v : vars) out.push_back(v.odd ? rng.odd(n, Mode::Exact) : rng.even(n, Mode::Exact, false));
  return out;
}

}  // namespace sfk::test
