#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sfk/sampling.hpp"
#include "sfk/superpoly.hpp"

namespace sfk {

/// A family of even functions sampled at pseudo-random exact points.
struct CensusScenario {
  std::vector<std::string> names;
  /// Optional torus weight per generator. When present, monomials are split
  /// into blocks of equal total weight and each block is eliminated on its
  /// own; this is valid when the sampled set is stable under the torus.
  std::vector<std::vector<int>> weights;
  /// Values of all generators at one fresh random point.
  std::function<std::vector<GrassmannElement>(Sampler&)> sample;
};

struct CensusResult {
  std::vector<std::string> names;
  /// Monomials of degree <= D, by degree and then reverse lexicographic.
  std::vector<Exponents> monomials;
  /// Canonical basis of the relation space: each vector has coefficient 1
  /// at its own free monomial and 0 at every other free monomial.
  std::vector<std::vector<Rational>> kernel_basis;
  /// Free monomial owned by each kernel vector.
  std::vector<std::size_t> free_monomials;
  std::size_t rank = 0;
  std::size_t samples = 0;

  std::string relation_string(const std::vector<Rational>& v) const;
  /// True when v (indexed like monomials) lies in the span of kernel_basis.
  bool contains(const std::vector<Rational>& v) const;
};

/// All monomials of total degree <= degree in k generators.
std::vector<Exponents> census_monomials(std::size_t k, unsigned degree);

/// Evaluates every monomial at `samples` points and returns the kernel of
/// the evaluation matrix, one row per (point, Grassmann monomial, real or
/// imaginary part). Throws InsufficientSamples when samples is below the
/// monomial count and ModeMismatch for float values.
CensusResult relation_census(const CensusScenario& scenario, unsigned degree, std::size_t samples,
                             std::uint64_t seed);

/// Generators given as polynomials; points draw even variables from
/// Sampler::even and odd ones from Sampler::odd over Lambda_n.
CensusScenario polynomial_scenario(const std::vector<SuperPolynomial>& generators, int n);

/// The ten pairings B(v_i, v_j), i <= j, of four vectors with even entries in
/// slots 1, 2 and an odd entry in slot 3. Weight of (i, j) is e_i + e_j.
CensusScenario gram_scenario(int n);

/// X = tr A, Y = tr B, Z = tr AB on random exact SL(2) pairs.
CensusScenario fricke_scenario();

/// Expansion of the 4x4 Leibniz determinant of the Gram variables in the
/// census monomial basis. Lower entries are g_ji = -g_ij, the symmetry of
/// the pairing on the sampled vectors.
std::vector<Rational> gram_determinant_vector(const std::vector<Exponents>& monomials);

struct GeneratorReport {
  std::size_t ber_trials = 0;
  std::size_t ber_passed = 0;
  /// Lambda-rank of the Gram Jacobian at each generic point.
  std::vector<std::size_t> gram_ranks;
  std::size_t gram_rank = 0;
  std::vector<std::string> ideal_invariants;
  std::size_t total = 0;
  std::size_t ideal = 0;
  std::size_t quotient = 0;
  std::string counting_line;
  /// Greedy selection of trace words whose gradients raise the rank.
  std::vector<std::string> trace_words;
  std::size_t trace_word_rank = 0;
};

/// Ber invariance under simultaneous conjugation, the Jacobian rank of the
/// ten Gram invariants on V^4 = End(V)^2 at `points` generic all-even
/// points, and the subtraction count derived from both.
GeneratorReport generator_census(int n, std::uint64_t seed, std::size_t word_length = 4, std::size_t points = 10);

}  // namespace sfk
