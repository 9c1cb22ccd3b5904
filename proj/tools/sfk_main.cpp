#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "sfk/census.hpp"
#include "sfk/errors.hpp"
#include "sfk/invariants.hpp"
#include "sfk/json_io.hpp"
#include "sfk/normalform.hpp"
#include "sfk/verify.hpp"

#ifndef SFK_FIXTURE_DIR
#define SFK_FIXTURE_DIR ""
#endif

namespace {

using namespace sfk;

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used, hex ? 16 : 10);
  } catch (const std::exception&) {
    throw DomainError("invalid seed \"" + text + "\"");
  }
  if (used != text.size() || text.front() == '-') throw DomainError("invalid seed \"" + text + "\"");
  return v;
}

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::Exact;
  if (text == "float") return Mode::Float;
  throw DomainError("mode must be exact or float");
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

bool has_odd_content(const OSpElement& g) {
  const SuperMatrix& m = g.matrix();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (!m(i, j).soul().is_zero()) return true;
    }
  }
  return false;
}

int cmd_verify(const std::string& suite, const std::string& seed, std::size_t samples, const std::string& mode,
               const std::string& fixtures, int n) {
  VerifyOptions opt;
  opt.suite = suite;
  opt.seed = parse_seed(seed);
  opt.samples = samples;
  opt.mode = parse_mode(mode);
  opt.fixtures = fixtures;
  opt.n = n;
  VerifyReport report = run_verify(opt);
  print_report(std::cout, report);
  return report.ok() ? 0 : kExitFailure;
}

int cmd_normal_form(const std::string& input, const std::string& mode) {
  RepresentationPair rho = pair_from_json(read_json_file(input), parse_mode(mode) == Mode::Float);
  NormalFormRecord r;
  if (!has_odd_content(rho.image_a) && !has_odd_content(rho.image_b)) {
    r = sl2_triangulate(reduce_body(rho.image_a), reduce_body(rho.image_b));
  } else {
    r = osp_triangulate(rho.image_a, rho.image_b);
  }
  emit(to_json(r));
  return 0;
}

int cmd_invariants(const std::string& input, const std::string& words) {
  RepresentationPair rho = pair_from_json(read_json_file(input));
  Json out = Json::object();
  for (const auto& w : parse_word_list(words)) out[w.str()] = to_json(trace_word(w, rho));
  emit(out);
  return 0;
}

int cmd_census(unsigned degree, std::size_t samples, const std::string& seed_text, int n) {
  const std::uint64_t seed = parse_seed(seed_text);
  if (n < 4 || n > kMaxGenerators) throw DomainError("n must lie in 4..16");
  CensusScenario scenario = gram_scenario(n);
  if (samples == 0) samples = census_monomials(scenario.names.size(), degree).size();
  CensusResult census = relation_census(scenario, degree, samples, seed);
  GeneratorReport gen = generator_census(n, seed);
  Json out;
  out["gram_rank"] = gen.gram_rank;
  out["ideal_invariants"] = gen.ideal_invariants;
  out["count"] = Json{{"total", gen.total}, {"ideal", gen.ideal}, {"quotient", gen.quotient}};
  out["counting_line"] = gen.counting_line;
  Json basis = Json::array();
  for (const auto& v : census.kernel_basis) basis.push_back(census.relation_string(v));
  out["kernel_basis"] = std::move(basis);
  out["kernel_contains_det"] = census.contains(gram_determinant_vector(census.monomials));
  out["seed"] = seed;
  out["n_generators"] = n;
  out["degree"] = degree;
  out["census"] = to_json(census);
  out["census"].erase("kernel_basis");
  out["generators"] = to_json(gen);
  emit(out);
  return 0;
}

int cmd_eval(const std::string& input, const std::string& word) {
  RepresentationPair rho = pair_from_json(read_json_file(input));
  emit(to_json(evaluate_word(parse_word(word), rho)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant computations for pairs in OSp(1|2) over a Grassmann algebra"};
  app.require_subcommand(1);

  std::string suite = "all", seed = "0xF2C3", mode = "exact", fixtures = SFK_FIXTURE_DIR, input, words, word;
  std::size_t samples = 0;
  std::size_t verify_samples = 20;
  unsigned degree = 4;
  int n = kDefaultGenerators;

  auto* verify = app.add_subcommand("verify", "Run the property suites and print a pass/fail table");
  verify->add_option("--suite", suite, "grassmann|superlinalg|osp|normalform|invariants|all");
  verify->add_option("--seed", seed, "Seed, decimal or 0x-hex");
  verify->add_option("--samples", verify_samples, "Samples per check");
  verify->add_option("--mode", mode, "exact|float");
  verify->add_option("--fixtures", fixtures, "Fixture directory");
  verify->add_option("--n", n, "Grassmann generators");

  auto* normal = app.add_subcommand("normal-form", "Triangulate a pair and print the normal form record");
  normal->add_option("--input", input, "Pair JSON")->required();
  normal->add_option("--mode", mode, "exact|float");

  auto* inv = app.add_subcommand("invariants", "Evaluate trace words on a pair");
  inv->add_option("--input", input, "Pair JSON")->required();
  inv->add_option("--words", words, "Comma-separated words")->required();

  auto* census = app.add_subcommand("census", "Relation census of the Gram variables and the generator count");
  census->add_option("--degree", degree, "Monomial degree bound");
  census->add_option("--samples", samples, "Sample points (default: number of monomials)");
  census->add_option("--seed", seed, "Seed, decimal or 0x-hex");
  census->add_option("--n", n, "Grassmann generators");

  auto* eval = app.add_subcommand("eval", "Evaluate a word on a pair");
  eval->add_option("--input", input, "Pair JSON")->required();
  eval->add_option("--word", word, "Word over AaBb");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*verify) return cmd_verify(suite, seed, verify_samples, mode, fixtures, n);
    if (*normal) return cmd_normal_form(input, mode);
    if (*inv) return cmd_invariants(input, words);
    if (*census) return cmd_census(degree, samples, seed, n);
    if (*eval) return cmd_eval(input, word);
  } catch (const sfk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const sfk::Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
