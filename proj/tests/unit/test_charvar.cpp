#include "helpers.hpp"
#include "sfk/charvar.hpp"
#include "sfk/errors.hpp"
#include "sfk/sampling.hpp"

using namespace sfk;
using namespace sfk::test;

namespace {

FreeWord random_word(Sampler& rng, std::size_t max_len) {
  static const char letters[] = "AaBb";
  FreeWord w;
  const auto len = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(max_len)));
  for (std::size_t i = 0; i < len; ++i) w.letters.push_back(letters[rng.integer(0, 3)]);
  return w;
}

}  // namespace

TEST_CASE("parse_word examples") {
  CHECK(parse_word("AB").letters == "AB");
  CHECK(parse_word("Aa").letters == "Aa");
  CHECK(parse_word(" A b ").letters == "Ab");
  CHECK(parse_word("").empty());
  try {
    parse_word("AxB");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 1);
  }
  CHECK_THROWS_AS(parse_word_list("A,Bq"), SyntaxError);
  auto list = parse_word_list("A, B,,AB");
  REQUIRE(list.size() == 4);
  CHECK(list[2].empty());
  CHECK(list[3].letters == "AB");
}

TEST_CASE("free reduction") {
  CHECK(parse_word("Aa").reduced().empty());
  CHECK(parse_word("ABba").reduced().empty());
  CHECK(parse_word("AbBBa").reduced().letters == "ABa");
  CHECK(parse_word("ABab").reduced().letters == "ABab");
  CHECK(parse_word("AB").inverse().letters == "ba");
}

TEST_CASE("evaluate_word examples") {
  const int n = 6;
  Sampler rng(3);
  RepresentationPair rho(rng.osp(n, Mode::Exact), rng.osp(n, Mode::Exact));
  CHECK(evaluate_word(parse_word("A"), rho) == rho.image_a.matrix());
  CHECK(evaluate_word(parse_word(""), rho) == SuperMatrix::identity(3, n, Mode::Exact));
  SuperMatrix ab = evaluate_word(parse_word("AB"), rho);
  CHECK(evaluate_word(parse_word("ABAB"), rho) == ab * ab);
  CHECK(evaluate_word(parse_word("Aa"), rho) == SuperMatrix::identity(3, n, Mode::Exact));

  // Commuting diagonal bodies with zero odd parts.
  GrassmannElement zero(n, Mode::Exact);
  RepresentationPair diag(from_sl2(c(n, 2), zero, zero, c(n, 1, 2)), from_sl2(c(n, -3), zero, zero, c(n, -1, 3)));
  CHECK(evaluate_word(parse_word("ABab"), diag) == SuperMatrix::identity(3, n, Mode::Exact));
}

TEST_CASE("property: evaluate_word is a homomorphism and ignores free reduction") {
  const int n = 6;
  Sampler rng(0xF2C3);
  for (int trial = 0; trial < 25; ++trial) {
    RepresentationPair rho(rng.osp(n, Mode::Exact), rng.osp(n, Mode::Exact));
    FreeWord w1 = random_word(rng, 5);
    FreeWord w2 = random_word(rng, 5);
    CHECK(evaluate_word(w1 * w2, rho) == evaluate_word(w1, rho) * evaluate_word(w2, rho));
    CHECK(evaluate_word(w1, rho) == evaluate_word(w1.reduced(), rho));
    CHECK(evaluate_word(w1 * w1.inverse(), rho) == SuperMatrix::identity(3, n, Mode::Exact));
  }
}

TEST_CASE("representation pairs must agree on N and mode") {
  Sampler rng(1);
  CHECK_THROWS_AS(RepresentationPair(rng.osp(4, Mode::Exact), rng.osp(6, Mode::Exact)), ShapeError);
  CHECK_THROWS_AS(RepresentationPair(rng.osp(4, Mode::Exact), rng.osp(4, Mode::Float)), ModeMismatch);
}
