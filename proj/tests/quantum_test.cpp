#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "bellgap/behaviour.hpp"
#include "bellgap/errors.hpp"
#include "bellgap/functional.hpp"
#include "bellgap/games.hpp"
#include "bellgap/quantum.hpp"
#include "bellgap/quantum_types.hpp"
#include "bellgap/solvers.hpp"

using namespace bellgap;
using namespace bellgap::quantum;

TEST_CASE("chsh optimal strategy attains (2 + sqrt 2)/4") {
  const QuantumStrategy qs = chsh_optimal_strategy();
  CHECK_NOTHROW(validate(qs));
  const Behaviour p = behaviour_of(qs);
  CHECK(is_non_signalling(p).non_signalling);
  const double v = evaluate(games::chsh_game(), p);
  CHECK(v == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-14));
}

TEST_CASE("chsh optimal observables attain sqrt(2)/2 on the correlation form") {
  const CorrelationObservables obs = chsh_optimal_observables();
  CHECK_NOTHROW(validate(obs));
  const Correlation c = correlation_of(obs);
  const double v = evaluate(games::chsh_correlation_functional(), c);
  CHECK(v == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));

  // Observable strategy and its two-outcome POVM strategy agree.
  const QuantumStrategy qs = observables_to_strategy(obs);
  CHECK_NOTHROW(validate(qs));
  const Correlation c2 = correlation_from_behaviour(behaviour_of(qs));
  for (Index x = 0; x < c.scenario().input_tuples(); ++x) {
    CHECK(c2.value(x) == doctest::Approx(c.value(x)).epsilon(1e-12));
  }
}

TEST_CASE("deterministic strategies embed as dimension-1 quantum strategies") {
  const Scenario s = Scenario::uniform(2, 2, 2);
  const DeterministicStrategy f(s, {{0, 1}, {1, 0}});
  const QuantumStrategy qs = deterministic_quantum(f);
  CHECK_NOTHROW(validate(qs));
  const Behaviour direct = behaviour_from_deterministic(f);
  const Behaviour viaq = behaviour_of(qs);
  for (Index x = 0; x < s.input_tuples(); ++x) {
    for (Index a = 0; a < s.output_tuples(); ++a) {
      CHECK(viaq.prob(x, a) == doctest::Approx(direct.prob(x, a)).epsilon(1e-14));
    }
  }
}

TEST_CASE("validate rejects broken strategies") {
  QuantumStrategy qs = chsh_optimal_strategy();
  qs.state *= 2.0;  // norm 2
  CHECK_THROWS_AS(validate(qs), ValidationError);

  QuantumStrategy incomplete = chsh_optimal_strategy();
  incomplete.povms[0][0][0] *= 0.5;  // family no longer sums to identity
  CHECK_THROWS_AS(validate(incomplete), ValidationError);

  CorrelationObservables obs = chsh_optimal_observables();
  obs.observables[0][0] *= 3.0;  // spectral norm 3
  CHECK_THROWS_AS(validate(obs), ValidationError);
}

TEST_CASE("kv strategy measures exact projective bases") {
  const games::KVParams params{2, -1.0};
  const QuantumStrategy qs = kv_strategy(params);
  CHECK_NOTHROW(validate(qs));
  CHECK(qs.dims == std::vector<int>{4, 4});
  // Rank-1 projective: E^2 = E within numerical dust.
  for (const auto& party : qs.povms) {
    for (const auto& family : party) {
      for (const Matrix& e : family) {
        CHECK((e * e - e).norm() <= 1e-10);
      }
    }
  }
  // The noiseless game is won with certainty on the matched coset element.
  const double v = evaluate(games::khot_vishnoi(params), behaviour_of(qs));
  CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("hat strategy cubes the base strategy's value") {
  const QuantumStrategy base = chsh_optimal_strategy();
  const QuantumStrategy hs = hat_strategy(base);
  CHECK_NOTHROW(validate(hs));
  const double chsh_v = evaluate(games::chsh_game(), behaviour_of(base));
  const double hat_v =
      evaluate(games::hat_construction(games::chsh_game()), behaviour_of(hs));
  CHECK(hat_v == doctest::Approx(chsh_v * chsh_v * chsh_v).epsilon(1e-12));
}

TEST_CASE("see-saw reaches the tsirelson point of the chsh functional") {
  const BellFunctional m = games::chsh_correlation_functional();
  SeesawOptions opt;
  opt.seeds = 6;
  const solvers::ValueReport r = correlation_seesaw(m, opt);
  CHECK(r.method == "see-saw");
  CHECK(r.is_bound);
  CHECK(r.bound_kind == "lower");
  CHECK(r.value >= std::sqrt(2.0) / 2.0 - 1e-6);
  CHECK(r.value <= std::sqrt(2.0) / 2.0 + 1e-9);  // Tsirelson upper bound
  REQUIRE(r.certificate.observables.has_value());
  CHECK_NOTHROW(validate(*r.certificate.observables));
  REQUIRE(r.certificate.behaviour.has_value());
  CHECK(std::abs(solvers::re_evaluate(r, m) - r.value) <= 1e-9);

  // Same options, same seeds: bitwise reproducible.
  CHECK(correlation_seesaw(m, opt).value == r.value);
}

TEST_CASE("see-saw validates its options") {
  const BellFunctional m = games::chsh_correlation_functional();
  SeesawOptions bad;
  bad.seeds = 0;
  CHECK_THROWS_AS(correlation_seesaw(m, bad), DomainError);
  SeesawOptions huge;
  huge.dims = {32, 32};
  CHECK_THROWS_AS(correlation_seesaw(m, huge), DomainError);
  CHECK_THROWS_AS(correlation_seesaw(games::chsh_game(), SeesawOptions{}),
                  UnsupportedError);
}

TEST_CASE("dimension and output bounds hold for the lifted chsh strategy") {
  const QuantumStrategy hs = hat_strategy(chsh_optimal_strategy());
  const BellFunctional hat = games::hat_construction(games::chsh_game());
  CHECK(check_dimension_bound(hs, hat));
  CHECK(check_output_bound(hs, hat));
}
