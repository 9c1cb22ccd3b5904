#include "helpers.hpp"
#include "sfk/errors.hpp"
#include "sfk/json_io.hpp"
#include "sfk/sampling.hpp"

using namespace sfk;
using namespace sfk::test;

TEST_CASE("element encoding uses canonical term order and fraction strings") {
  const int n = 4;
  GrassmannElement x = c(n, 3, 2) + q(-1, 3) * (th(n, 2) * th(n, 1)) + th(n, 4);
  Json j = to_json(x);
  CHECK(j["n"] == 4);
  REQUIRE(j["terms"].size() == 3);
  CHECK(j["terms"][0]["idx"] == Json::array());
  CHECK(j["terms"][0]["re"] == "3/2");
  CHECK(j["terms"][1]["idx"] == Json::array({4}));
  CHECK(j["terms"][2]["idx"] == Json::array({1, 2}));
  CHECK(j["terms"][2]["re"] == "1/3");
  CHECK(j["terms"][2]["im"] == "0");
  CHECK(element_from_json(j, n, Mode::Exact) == x);
}

TEST_CASE("bare scalars are constants and small elements widen") {
  CHECK(element_from_json(Json("5/7"), 6, Mode::Exact) == c(6, 5, 7));
  CHECK(element_from_json(Json(2), 6, Mode::Exact) == c(6, 2));
  Json small = to_json(th(2, 1));
  CHECK(element_from_json(small, 6, Mode::Exact) == th(6, 1));
  CHECK_THROWS_AS(element_from_json(to_json(th(8, 7)), 6, Mode::Exact), ShapeError);
  CHECK_THROWS_AS(element_from_json(Json(0.5), 6, Mode::Exact), DomainError);
  Json repeated = {{"n", 4}, {"terms", {{{"idx", {1, 1}}, {"re", "1"}}}}};
  CHECK_THROWS_AS(element_from_json(repeated, 4, Mode::Exact), DomainError);
}

TEST_CASE("float coefficients switch the pair to float mode") {
  Json j = {{"n", 2}, {"A", {{"sl2", {0.5, 0, 0, 2}}}}, {"B", {{"sl2", {1, 1, 0, 1}}}}};
  CHECK(contains_float(j));
  RepresentationPair rho = pair_from_json(j);
  CHECK(rho.mode() == Mode::Float);
  Json e = {{"n", 2}, {"A", {{"sl2", {"1/2", 0, 0, 2}}}}, {"B", {{"sl2", {1, 1, 0, 1}}}}};
  CHECK(pair_from_json(e).mode() == Mode::Exact);
  CHECK(pair_from_json(e, true).mode() == Mode::Float);
}

TEST_CASE("property: matrix and OSp round trips") {
  Sampler rng(0xF2C3);
  const int n = 6;
  for (int trial = 0; trial < 20; ++trial) {
    OSpElement g = rng.osp(n, Mode::Exact);
    Json j = to_json(g);
    CHECK(j.contains("provenance"));
    CHECK(matrix_from_json(j, n, Mode::Exact) == g.matrix());
    Json raw = to_json(g.matrix());
    CHECK(osp_from_json(raw, n, Mode::Exact) == g);
    Json prov = j["provenance"];
    CHECK(osp_from_json(prov, n, Mode::Exact) == g);
    OSpElement f = rng.osp(n, Mode::Float);
    CHECK(osp_from_json(to_json(f.matrix()), n, Mode::Float) == f);
  }
}

TEST_CASE("raw matrices must pass the membership check") {
  const int n = 4;
  SuperMatrix m = SuperMatrix::identity(3, n, Mode::Exact);
  m.set(0, 0, c(n, 2));
  CHECK_THROWS_AS(osp_from_json(to_json(m), n, Mode::Exact), MembershipError);
  Json pair = {{"A", to_json(m)}};
  CHECK_THROWS_AS(pair_from_json(pair), DomainError);
}
