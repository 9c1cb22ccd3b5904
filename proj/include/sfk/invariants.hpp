#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sfk/charvar.hpp"
#include "sfk/superlinalg.hpp"

namespace sfk {

/// G_ij = B(v_i, v_j).
SuperMatrix gram_matrix(const std::vector<SuperVector>& vs);

/// Product of B over the pairs of a perfect matching (0-based indices).
/// Pairs are ordered by their smaller endpoint and each pair is evaluated
/// as B(v_small, v_large). Throws DomainError for odd N or a bad matching.
GrassmannElement matching_invariant(const std::vector<SuperVector>& vs,
                                    std::vector<std::pair<std::size_t, std::size_t>> matching);

/// Permutation of {0..k-1} in one-line notation.
class PermutationInvariant {
 public:
  /// Throws DomainError unless images is a permutation.
  explicit PermutationInvariant(std::vector<std::size_t> images);
  static PermutationInvariant identity(std::size_t k);
  /// All k! permutations in lexicographic order.
  static std::vector<PermutationInvariant> all(std::size_t k);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& one_line() const { return images_; }
  /// Cycles (i, sigma(i), sigma^2(i), ...), each starting at its smallest
  /// element, fixed points included, sorted by first element.
  const std::vector<std::vector<std::size_t>>& cycles() const { return cycles_; }

 private:
  std::vector<std::size_t> images_;
  std::vector<std::vector<std::size_t>> cycles_;
};

/// Product over the cycles of sigma of str(A_i1 A_i2 ... A_ic).
GrassmannElement mu_sigma(const std::vector<SuperMatrix>& as, const PermutationInvariant& sigma);

/// The same invariant computed as a contraction of tensors: every A_i is
/// taken to V (x) V by end_to_tensor, consecutive tensors in a cycle are
/// contracted through the form, and each cycle is closed with the graded
/// trace of the form.
GrassmannElement mu_sigma_contraction(const std::vector<SuperMatrix>& as, const PermutationInvariant& sigma);

/// Lowers the second index of A with the form: T = A J^-1.
SuperMatrix end_to_tensor(const SuperMatrix& a);
/// Inverse of end_to_tensor: A = T J.
SuperMatrix tensor_to_end(const SuperMatrix& t);
/// Graded action of g (x) g on a rank-2 tensor:
/// (g.T)_ab = sum_ik g_ai T_ik g_bk s(k, b) with s = -1 exactly when
/// k is even and b is odd.
SuperMatrix tensor_action(const SuperMatrix& g, const SuperMatrix& t);
/// sum v_i (J T J)_il w_l; for T = end_to_tensor(I) this is B(v, w).
GrassmannElement tensor_pairing(const SuperMatrix& t, const SuperVector& v, const SuperVector& w);

/// <v, phi> = sum_i (-1)^{|e_i||phi_i|} v_i phi_i with phi in the dual basis.
GrassmannElement dual_pairing(const SuperVector& v, const SuperVector& phi);

/// str of the word evaluated on rho; the empty word gives 1.
GrassmannElement trace_word(const FreeWord& w, const RepresentationPair& rho);

/// True iff every value has zero odd part.
bool parity_audit(const std::vector<GrassmannElement>& values);

}  // namespace sfk
