#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sfk/osp.hpp"

namespace sfk {

/// Word in the free group on A, B; lowercase letters are inverses.
struct FreeWord {
  std::string letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  const std::string& str() const { return letters; }
  /// Cancels adjacent inverse pairs until none remain.
  FreeWord reduced() const;
  FreeWord inverse() const;
  friend FreeWord operator*(const FreeWord& x, const FreeWord& y) { return {x.letters + y.letters}; }
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

/// Accepts letters from "AaBb" and whitespace. No reduction is applied.
/// Throws SyntaxError carrying the offending index.
FreeWord parse_word(std::string_view text);

/// Comma-separated word list; entries are trimmed and may be empty.
std::vector<FreeWord> parse_word_list(std::string_view text);

/// Images of the two generators of the free group.
struct RepresentationPair {
  OSpElement image_a;
  OSpElement image_b;

  /// Validates that both generators share N and mode.
  RepresentationPair(OSpElement a, OSpElement b);
  int num_generators() const { return image_a.num_generators(); }
  Mode mode() const { return image_a.mode(); }
};

/// Simultaneous conjugation h rho h^-1.
RepresentationPair conjugate(const OSpElement& h, const RepresentationPair& rho);

/// Ordered product of the letter images; the empty word gives the identity.
SuperMatrix evaluate_word(const FreeWord& w, const RepresentationPair& rho);

}  // namespace sfk
