#include "sfk/charvar.hpp"

#include <algorithm>
#include <cctype>

#include "sfk/errors.hpp"

namespace sfk {

namespace {

char invert(char c) { return std::isupper(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c)) : static_cast<char>(std::toupper(c)); }

}  // namespace

FreeWord FreeWord::reduced() const {
  std::string out;
  for (char c : letters) {
    if (!out.empty() && out.back() == invert(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return {out};
}

FreeWord FreeWord::inverse() const {
  std::string out(letters.rbegin(), letters.rend());
  for (char& c : out) c = invert(c);
  return {out};
}

FreeWord parse_word(std::string_view text) {
  FreeWord w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c != 'A' && c != 'a' && c != 'B' && c != 'b') {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    w.letters.push_back(c);
  }
  return w;
}

std::vector<FreeWord> parse_word_list(std::string_view text) {
  std::vector<FreeWord> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      out.push_back(parse_word(item));
    } catch (const SyntaxError& e) {
      throw SyntaxError("bad word in list", start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

RepresentationPair::RepresentationPair(OSpElement a, OSpElement b) : image_a(std::move(a)), image_b(std::move(b)) {
  if (image_a.num_generators() != image_b.num_generators()) throw ShapeError("generator images use different N");
  if (image_a.mode() != image_b.mode()) throw ModeMismatch("generator images use different modes");
}

RepresentationPair conjugate(const OSpElement& h, const RepresentationPair& rho) {
  return RepresentationPair(conjugate(h, rho.image_a), conjugate(h, rho.image_b));
}

SuperMatrix evaluate_word(const FreeWord& w, const RepresentationPair& rho) {
  const SuperMatrix& a = rho.image_a.matrix();
  const SuperMatrix& b = rho.image_b.matrix();
  const SuperMatrix ainv = inverse(rho.image_a).matrix();
  const SuperMatrix binv = inverse(rho.image_b).matrix();
  SuperMatrix out = SuperMatrix::identity(3, rho.num_generators(), rho.mode());
  for (char c : w.letters) {
    switch (c) {
      case 'A': out = out * a; break;
      case 'a': out = out * ainv; break;
      case 'B': out = out * b; break;
      case 'b': out = out * binv; break;
      default: throw SyntaxError("invalid letter in word", 0);
    }
  }
  return out;
}

}  // namespace sfk
