#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bellgap/behaviour.hpp"
#include "bellgap/correlation.hpp"
#include "bellgap/errors.hpp"
#include "bellgap/multi_index.hpp"
#include "bellgap/scenario.hpp"
#include "bellgap/strategy.hpp"

using namespace bellgap;

TEST_CASE("multi_index round-trips flat indices") {
  const std::vector<int> radix{3, 2, 4};
  CHECK(tuple_count(radix) == 24);

  std::vector<int> tuple(3, 0);
  Index flat = 0;
  do {
    CHECK(flat_index(tuple, radix) == flat);
    std::vector<int> back(3);
    unflatten(flat, radix, back);
    CHECK(back == tuple);
    ++flat;
  } while (next_tuple(tuple, radix));
  CHECK(flat == 24);  // odometer visited every tuple exactly once
}

TEST_CASE("scenario validates and exposes alphabets") {
  const Scenario s({2, 3}, {4, 5});
  CHECK(s.parties() == 2);
  CHECK(s.input_count(1) == 3);
  CHECK(s.output_count(0) == 4);
  CHECK(s.input_tuples() == 6);
  CHECK(s.output_tuples() == 20);
  CHECK_FALSE(s.uniform_alphabets());

  const Scenario u = Scenario::uniform(3, 2, 2);
  CHECK(u.uniform_alphabets());
  CHECK(u.inputs_per_party() == 2);
  CHECK(u == Scenario::uniform(3, 2, 2));

  CHECK_THROWS_AS(Scenario({2}, {2, 2}), DimensionError);
  CHECK_THROWS_AS(Scenario({0}, {2}), DomainError);
  CHECK_THROWS_AS(Scenario::uniform(0, 2, 2), DomainError);
}

TEST_CASE("tripartite partitions cover each lone party once") {
  const auto all = Partition::all_tripartite();
  std::vector<bool> seen(3, false);
  for (const Partition& p : all) {
    CHECK(p.merged[0] < p.merged[1]);
    CHECK(p.merged[0] != p.lone);
    CHECK(p.merged[1] != p.lone);
    seen[static_cast<std::size_t>(p.lone)] = true;
  }
  CHECK(seen == std::vector<bool>(3, true));
  CHECK_THROWS_AS(Partition::around_lone(3), DomainError);
}

TEST_CASE("behaviour constructor enforces the probability axioms") {
  const Scenario s = Scenario::uniform(1, 1, 2);
  CHECK_NOTHROW(Behaviour(s, {0.25, 0.75}));
  CHECK_THROWS_AS(Behaviour(s, {-0.1, 1.1}), ValidationError);
  CHECK_THROWS_AS(Behaviour(s, {0.2, 0.2}), ValidationError);
  CHECK_THROWS_AS(Behaviour(s, {1.0}), DimensionError);
}

TEST_CASE("deterministic strategies produce 0/1 behaviours") {
  const Scenario s = Scenario::uniform(2, 2, 2);
  const DeterministicStrategy f(s, {{0, 1}, {1, 1}});
  CHECK(f.response(0, 1) == 1);
  const Behaviour p = behaviour_from_deterministic(f);
  for (Index x = 0; x < s.input_tuples(); ++x) {
    double row = 0.0;
    for (Index a = 0; a < s.output_tuples(); ++a) {
      const double v = p.prob(x, a);
      CHECK((v == 0.0 || v == 1.0));
      row += v;
    }
    CHECK(row == 1.0);
  }
  const std::vector<int> x{1, 0};
  const std::vector<int> a{1, 1};
  CHECK(p.prob(x, a) == 1.0);  // party responses (f0(1), f1(0)) = (1, 1)

  CHECK_THROWS_AS(DeterministicStrategy(s, {{0, 1}}), DimensionError);
  CHECK_THROWS_AS(DeterministicStrategy(s, {{0, 2}, {0, 0}}), DomainError);
}

TEST_CASE("non-signalling check accepts products and flags signalling") {
  const Scenario s = Scenario::uniform(2, 2, 2);
  const DeterministicStrategy f(s, {{0, 1}, {1, 0}});
  CHECK(is_non_signalling(behaviour_from_deterministic(f)).non_signalling);

  // First party answers the second party's input: maximally signalling.
  std::vector<double> table(s.input_tuples() * s.output_tuples(), 0.0);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const std::vector<int> in{x, y};
      const std::vector<int> out{y, 0};
      table[flat_index(in, s.inputs()) * s.output_tuples() +
            flat_index(out, s.outputs())] = 1.0;
    }
  }
  const NsCheck check = is_non_signalling(Behaviour(s, std::move(table)));
  CHECK_FALSE(check.non_signalling);
  CHECK(check.worst_violation == doctest::Approx(1.0));
  CHECK_FALSE(check.worst_constraint.empty());
}

TEST_CASE("correlation box witness is non-signalling and round-trips") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coin(-1.0, 1.0);
  for (int parties = 2; parties <= 3; ++parties) {
    const Scenario s = Scenario::uniform(parties, 3, 2);
    std::vector<double> gamma(s.input_tuples());
    for (double& g : gamma) g = coin(rng);
    const Correlation c(s, gamma);

    const Behaviour p = behaviour_from_correlation(c);
    CHECK(is_non_signalling(p).non_signalling);

    const Correlation back = correlation_from_behaviour(p);
    for (Index x = 0; x < s.input_tuples(); ++x) {
      CHECK(back.value(x) == doctest::Approx(c.value(x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("correlation constructors reject bad data") {
  const Scenario s = Scenario::uniform(2, 2, 2);
  CHECK_THROWS_AS(Correlation(s, {2.0, 0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Correlation(s, {0.0}), DimensionError);
  const Scenario wide = Scenario::uniform(2, 2, 3);
  CHECK_THROWS_AS(Correlation(wide, std::vector<double>(4, 0.0)),
                  UnsupportedError);
}

TEST_CASE("correlation of a deterministic behaviour is a product of signs") {
  const Scenario s = Scenario::uniform(2, 2, 2);
  const DeterministicStrategy f(s, {{0, 1}, {1, 0}});
  const Correlation c = correlation_from_behaviour(behaviour_from_deterministic(f));
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const std::vector<int> in{x, y};
      const double expect = output_sign(f.response(0, x)) *
                            output_sign(f.response(1, y));
      CHECK(c.value(in) == expect);
    }
  }
}
