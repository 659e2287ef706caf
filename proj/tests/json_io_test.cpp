#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellgap/errors.hpp"
#include "bellgap/functional.hpp"
#include "bellgap/games.hpp"
#include "bellgap/json_io.hpp"
#include "bellgap/solvers.hpp"
#include "bellgap/verify.hpp"

using namespace bellgap;
using nlohmann::json;

namespace {

void check_bitwise_roundtrip(const BellFunctional& g) {
  const BellFunctional back = io::game_from_json(io::game_to_json(g));
  CHECK(back.scenario() == g.scenario());
  CHECK(back.kind() == g.kind());
  REQUIRE(back.size() == g.size());
  for (Index i = 0; i < g.size(); ++i) {
    CHECK(back.coeffs()[i] == g.coeffs()[i]);  // bit-exact, not approximate
  }
  CHECK(back.meta() == g.meta());
}

}  // namespace

TEST_CASE("game files round-trip bitwise") {
  check_bitwise_roundtrip(games::chsh_game());
  check_bitwise_roundtrip(games::chsh_correlation_functional());
  check_bitwise_roundtrip(games::khot_vishnoi({2, 0.2}));
  check_bitwise_roundtrip(games::hadamard_correlation_functional(4));
  check_bitwise_roundtrip(games::hat_construction(games::chsh_game()));

  // Irrational coefficients survive the decimal encoding exactly.
  const Scenario s = Scenario::uniform(2, 2, 2);
  std::vector<double> coeffs(s.input_tuples() * s.output_tuples(), 0.0);
  coeffs[0] = 1.0 / 3.0;
  coeffs[5] = std::sqrt(2.0);
  coeffs[9] = -1e-17;
  coeffs[15] = 0.1;
  check_bitwise_roundtrip(
      BellFunctional(s, FunctionalKind::kGeneral, coeffs, {{"name", "probe"}}));
}

TEST_CASE("game files are 1-based on disk") {
  const std::string text = io::game_to_json(games::chsh_game());
  const json doc = json::parse(text);
  CHECK(doc["parties"] == 2);
  CHECK(doc["inputs"] == json::array({2, 2}));
  CHECK(doc["outputs"] == json::array({2, 2}));
  CHECK(doc["kind"] == "game");
  for (const auto& entry : doc["coeffs"]) {
    for (int x : entry["x"]) CHECK((1 <= x && x <= 2));
    for (int a : entry["a"]) CHECK((1 <= a && a <= 2));
    CHECK(entry["v"].get<double>() > 0.0);  // zeros are omitted
  }
  CHECK(doc["coeffs"].size() == 8);  // chsh has 8 winning cells
}

TEST_CASE("loader rejects malformed game files") {
  const auto load = [](const std::string& text) { return io::game_from_json(text); };
  CHECK_THROWS_AS(load("not json at all"), ValidationError);
  CHECK_THROWS_AS(load("{}"), ValidationError);

  const std::string base = io::game_to_json(games::chsh_game());

  // Out-of-range 1-based index.
  {
    json doc = json::parse(base);
    doc["coeffs"][0]["x"][0] = 3;
    CHECK_THROWS_AS(load(doc.dump()), ValidationError);
  }
  // 0-based index smuggled in.
  {
    json doc = json::parse(base);
    doc["coeffs"][0]["x"][0] = 0;
    CHECK_THROWS_AS(load(doc.dump()), ValidationError);
  }
  // Duplicate coefficient entries.
  {
    json doc = json::parse(base);
    doc["coeffs"].push_back(doc["coeffs"][0]);
    CHECK_THROWS_AS(load(doc.dump()), ValidationError);
  }
  // Correlation functionals must not carry outputs.
  {
    json doc = json::parse(io::game_to_json(games::chsh_correlation_functional()));
    doc["coeffs"][0]["a"] = json::array({1, 1});
    CHECK_THROWS_AS(load(doc.dump()), ValidationError);
  }
  // Negative coefficient in a game.
  {
    json doc = json::parse(base);
    doc["coeffs"][0]["v"] = -0.25;
    CHECK_THROWS(load(doc.dump()));
  }
  // Meta values must be strings.
  {
    json doc = json::parse(base);
    doc["meta"]["name"] = 7;
    CHECK_THROWS_AS(load(doc.dump()), ValidationError);
  }
}

TEST_CASE("save and load through files") {
  const std::string path = "bellgap_test_game.json";
  const BellFunctional g = games::khot_vishnoi({2, 0.1});
  io::save_game(g, path);
  const BellFunctional back = io::load_game(path);
  for (Index i = 0; i < g.size(); ++i) CHECK(back.coeffs()[i] == g.coeffs()[i]);
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::load_game("definitely_missing_file.json"), ValidationError);
}

TEST_CASE("value reports serialize the full witness chain") {
  const BellFunctional g = games::chsh_game();
  const solvers::ValueReport r = solvers::local_value(g);
  const json doc = json::parse(io::value_report_to_json(r, 0.125));
  CHECK(doc["functional"] == "chsh");
  CHECK(doc["class"] == "local");
  CHECK(doc["value"].get<double>() == 0.75);
  CHECK(doc["method"] == "enumeration");
  CHECK(doc["is_bound"] == false);
  CHECK(doc["seconds"].get<double>() == 0.125);
  REQUIRE(doc["certificate"].contains("behaviour"));
  REQUIRE(doc["certificate"].contains("strategy"));
  // 1-based strategy rows within the output alphabet.
  for (const auto& row : doc["certificate"]["strategy"]) {
    for (int a : row) CHECK((1 <= a && a <= 2));
  }
  // The serialized behaviour re-evaluates to the reported value.
  const auto& table = doc["certificate"]["behaviour"]["table"];
  REQUIRE(table.size() == 4 * 4);
  double pair = 0.0;
  for (Index x = 0; x < 4; ++x) {
    for (Index a = 0; a < 4; ++a) {
      pair += g.coeff(x, a) * table[x * 4 + a].get<double>();
    }
  }
  CHECK(pair == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("check reports are reproducible from their recorded fields") {
  const auto checks = verify::run_suite("lemma1");
  const json doc = json::parse(io::checks_to_json("lemma1", checks));
  CHECK(doc["suite"] == "lemma1");
  CHECK(doc["all_pass"] == verify::all_pass(checks));
  for (const auto& c : doc["checks"]) {
    const double lhs = c["lhs"].get<double>();
    const double rhs = c["rhs"].get<double>();
    const double tol = c["tol"].get<double>();
    const std::string cmp = c["cmp"].get<std::string>();
    bool expect = false;
    if (cmp == "<=") expect = lhs <= rhs + tol;
    if (cmp == ">=") expect = lhs >= rhs - tol;
    if (cmp == "~") expect = std::abs(lhs - rhs) <= tol;
    CHECK(c["pass"].get<bool>() == expect);
  }
}

TEST_CASE("lv reports carry both sides") {
  const BellFunctional g = games::chsh_game();
  const solvers::LVReport lv =
      solvers::lv_ratio(solvers::ns_value(g), solvers::local_value(g));
  const json doc = json::parse(io::lv_report_to_json(lv, 0.5));
  CHECK(doc["ratio"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(doc["numerator"]["class"] == "ns");
  CHECK(doc["denominator"]["class"] == "local");
}
