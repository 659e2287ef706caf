#include "bellgap/correlation.hpp"

#include <cmath>

#include "bellgap/errors.hpp"

namespace bellgap {

Correlation::Correlation(Scenario scenario, std::vector<double> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  for (int i = 0; i < scenario_.parties(); ++i) {
    if (scenario_.output_count(i) != 2) {
      throw UnsupportedError("correlations need binary outputs for every party");
    }
  }
  if (table_.size() != scenario_.input_tuples()) {
    throw DimensionError("correlation table size does not match the scenario");
  }
  for (double g : table_) {
    if (std::abs(g) > 1.0 + 1e-12) {
      throw DomainError("correlation entries must lie in [-1, 1]");
    }
  }
}

Correlation correlation_from_behaviour(const Behaviour& p) {
  const Scenario& sc = p.scenario();
  for (int i = 0; i < sc.parties(); ++i) {
    if (sc.output_count(i) != 2) {
      throw UnsupportedError("correlation_from_behaviour needs binary outputs");
    }
  }
  const Index outputs = sc.output_tuples();
  std::vector<double> table(sc.input_tuples(), 0.0);
  std::vector<int> a(sc.parties());
  for (Index x = 0; x < sc.input_tuples(); ++x) {
    double gamma = 0.0;
    for (Index af = 0; af < outputs; ++af) {
      unflatten(af, sc.outputs(), a);
      int sign = 1;
      for (int ai : a) sign *= output_sign(ai);
      gamma += sign * p.prob(x, af);
    }
    // Clip the float dust so the result is a valid Correlation.
    table[x] = std::min(1.0, std::max(-1.0, gamma));
  }
  return Correlation(sc, std::move(table));
}

Behaviour behaviour_from_correlation(const Correlation& c) {
  const Scenario& sc = c.scenario();
  const Index outputs = sc.output_tuples();
  const double cell = 1.0 / static_cast<double>(outputs);  // 1 / 2^k
  std::vector<double> table(sc.input_tuples() * outputs, 0.0);
  std::vector<int> a(sc.parties());
  for (Index x = 0; x < sc.input_tuples(); ++x) {
    const double gamma = c.value(x);
    for (Index af = 0; af < outputs; ++af) {
      unflatten(af, sc.outputs(), a);
      int sign = 1;
      for (int ai : a) sign *= output_sign(ai);
      table[x * outputs + af] = cell * (1.0 + sign * gamma);
    }
  }
  return Behaviour(sc, std::move(table));
}

}  // namespace bellgap
