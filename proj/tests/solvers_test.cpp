#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bellgap/behaviour.hpp"
#include "bellgap/errors.hpp"
#include "bellgap/functional.hpp"
#include "bellgap/games.hpp"
#include "bellgap/solvers.hpp"
#include "bellgap/valuation.hpp"

using namespace bellgap;
using namespace bellgap::solvers;

namespace {

// Random normalized tripartite game: uniform coefficients rescaled so
// sum_x max_a = 1, which keeps values comparable across instances.
BellFunctional random_tripartite_game(std::mt19937_64& rng, int inputs,
                                      int outputs) {
  const Scenario s = Scenario::uniform(3, inputs, outputs);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> coeffs(s.input_tuples() * s.output_tuples());
  for (double& c : coeffs) c = coin(rng);
  double norm = 0.0;
  for (Index x = 0; x < s.input_tuples(); ++x) {
    double best = 0.0;
    for (Index a = 0; a < s.output_tuples(); ++a) {
      best = std::max(best, coeffs[x * s.output_tuples() + a]);
    }
    norm += best;
  }
  for (double& c : coeffs) c /= norm;
  return BellFunctional(s, FunctionalKind::kGame, std::move(coeffs));
}

}  // namespace

TEST_CASE("local value of chsh is 3/4 with a replayable certificate") {
  const BellFunctional g = games::chsh_game();
  const ValueReport r = local_value(g);
  CHECK(r.value == 0.75);
  CHECK(r.method == "enumeration");
  CHECK(r.class_label == "local");
  CHECK_FALSE(r.is_bound);
  REQUIRE(r.certificate.strategy.has_value());
  REQUIRE(r.certificate.behaviour.has_value());
  CHECK(std::abs(re_evaluate(r, g) - r.value) <= 1e-9);
}

TEST_CASE("value solvers use absolute pairing for signed functionals") {
  const BellFunctional g = games::chsh_game();
  const BellFunctional neg = g.scaled(-1.0);
  CHECK(local_value(neg).value == 0.75);
  CHECK(ns_value(neg).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ns value of chsh reaches 1 with a non-signalling witness") {
  const BellFunctional g = games::chsh_game();
  const ValueReport r = ns_value(g);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.method == "lp");
  REQUIRE(r.certificate.behaviour.has_value());
  CHECK(is_non_signalling(*r.certificate.behaviour).non_signalling);
  CHECK(std::abs(re_evaluate(r, g) - r.value) <= 1e-9);

  // Deterministic: an identical call reproduces the value bitwise.
  CHECK(ns_value(g).value == r.value);
}

TEST_CASE("bilocal values of the lifted chsh game match the chain") {
  const BellFunctional hat = games::hat_construction(games::chsh_game());
  const ValueReport general = bilocal_value_general(hat);
  CHECK(general.value == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(general.certificate.partition.has_value());
  CHECK(std::abs(re_evaluate(general, hat) - general.value) <= 1e-9);

  const ValueReport ns_b = bilocal_value_ns(hat);
  CHECK(ns_b.value == doctest::Approx(0.5625).epsilon(1e-9));
  CHECK(std::abs(re_evaluate(ns_b, hat) - ns_b.value) <= 1e-9);

  const ValueReport loc = local_value(hat);
  CHECK(loc.value == doctest::Approx(0.4375).epsilon(1e-12));

  // local <= bilocal-NS <= bilocal-general, strict at every step here.
  CHECK(loc.value < ns_b.value);
  CHECK(ns_b.value < general.value);
}

TEST_CASE("bilocal solvers reject non-tripartite functionals") {
  const BellFunctional g = games::chsh_game();
  CHECK_THROWS_AS(bilocal_value_general(g), UnsupportedError);
  CHECK_THROWS_AS(bilocal_value_ns(g), UnsupportedError);
  CHECK_THROWS_AS(bilocal_correlation_value(games::chsh_correlation_functional()),
                  UnsupportedError);
}

TEST_CASE("correlation-scenario values on the chsh functional") {
  const BellFunctional m = games::chsh_correlation_functional();
  CHECK(local_correlation_value(m).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ns_correlation_value(m).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ns_correlation_value(m).method == "closed-form");
  CHECK_THROWS_AS(local_correlation_value(games::chsh_game()), UnsupportedError);
}

TEST_CASE("hadamard correlation functional: ns 16, bilocal 16, local 8") {
  const BellFunctional m = games::hadamard_correlation_functional(4);
  CHECK(ns_correlation_value(m).value == 16.0);
  CHECK(bilocal_correlation_value(m).value == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(local_correlation_value(m).value == doctest::Approx(8.0).epsilon(1e-12));
  const ValueReport b = bilocal_correlation_value(m);
  CHECK(std::abs(re_evaluate(b, m) - b.value) <= 1e-9);
}

TEST_CASE("lower and upper bound reports are labeled and ordered") {
  std::mt19937_64 rng(3);
  const BellFunctional g = random_tripartite_game(rng, 2, 2);
  const ValueReport exact = local_value(g);
  const ValueReport lower = local_value_lower(g, 16);
  CHECK(lower.is_bound);
  CHECK(lower.bound_kind == "lower");
  CHECK(lower.method == "hill-climb");
  CHECK(lower.value <= exact.value + 1e-12);
  CHECK(std::abs(re_evaluate(lower, g) - lower.value) <= 1e-9);

  const ValueReport upper = ns_value_upper(g);
  CHECK(upper.is_bound);
  CHECK(upper.bound_kind == "upper");
  CHECK(upper.method == "sum-max");
  CHECK(upper.value >= ns_value(g).value - 1e-9);
}

TEST_CASE("solvers refuse work beyond the scan budget") {
  const BellFunctional t = games::tensor_product(games::chsh_game(),
                                                 games::chsh_game());
  SolveOptions tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(local_value(t, tiny), ResourceError);
  try {
    local_value(t, tiny);
  } catch (const ResourceError& e) {
    CHECK_FALSE(e.bound().empty());
  }
}

TEST_CASE("lv ratios divide the recorded values") {
  const BellFunctional g = games::chsh_game();
  const LVReport lv = lv_ratio(ns_value(g), local_value(g));
  CHECK(lv.ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  const LVReport unit = lv_ratio(local_value(g), local_value(g));
  CHECK(unit.ratio == 1.0);
}

TEST_CASE("value class labels round-trip") {
  for (ValueClass c : {ValueClass::kLocal, ValueClass::kBilocalGeneral,
                       ValueClass::kBilocalNs, ValueClass::kNs,
                       ValueClass::kQuantumLower, ValueClass::kLocalCor,
                       ValueClass::kBilocalCor, ValueClass::kNsCor}) {
    CHECK(value_class_from_string(to_string(c)) == c);
  }
  CHECK_THROWS_AS(value_class_from_string("nope"), DomainError);
}

TEST_CASE("compute_value routes classes by functional kind") {
  const BellFunctional game = games::chsh_game();
  const BellFunctional cor = games::chsh_correlation_functional();

  CHECK(compute_value(game, ValueClass::kLocal).value == 0.75);
  CHECK(compute_value(cor, ValueClass::kLocal).value ==
        doctest::Approx(0.5).epsilon(1e-12));  // correlation kind reroutes
  CHECK(compute_value(cor, ValueClass::kNsCor).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(compute_value(game, ValueClass::kLocalCor), UnsupportedError);
  CHECK_THROWS_AS(compute_value(game, ValueClass::kBilocalGeneral),
                  UnsupportedError);  // tripartite only

  // quantum-lower: constructed strategy for the recognized game names.
  const ValueReport q = compute_value(game, ValueClass::kQuantumLower);
  CHECK(q.is_bound);
  CHECK(q.bound_kind == "lower");
  CHECK(q.method == "constructed");
  CHECK(q.value == doctest::Approx(0.85355339059327373).epsilon(1e-12));

  // Unrecognized games cannot be routed to a constructed strategy.
  const BellFunctional anon(game.scenario(), FunctionalKind::kGame,
                            std::vector<double>(game.coeffs().begin(),
                                                game.coeffs().end()));
  CHECK_THROWS_AS(compute_value(anon, ValueClass::kQuantumLower),
                  UnsupportedError);
}
