#pragma once

#include <span>
#include <string>
#include <vector>

#include "bellgap/scenario.hpp"
#include "bellgap/strategy.hpp"

namespace bellgap {

// Joint conditional probability table P(a1..ak | x1..xk), stored densely
// with the input tuple as the slow index. Immutable after construction;
// the constructor enforces non-negativity (1e-12 slack) and per-input
// normalization (1e-9 slack).
class Behaviour {
 public:
  Behaviour(Scenario scenario, std::vector<double> table);

  const Scenario& scenario() const { return scenario_; }
  std::span<const double> table() const { return table_; }

  double prob(Index input_flat, Index output_flat) const {
    return table_[input_flat * scenario_.output_tuples() + output_flat];
  }
  double prob(std::span<const int> inputs, std::span<const int> outputs) const {
    return prob(flat_index(inputs, scenario_.inputs()),
                flat_index(outputs, scenario_.outputs()));
  }

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

// The deterministic behaviour of a strategy: P = 1 iff every party answers
// its assigned output.
Behaviour behaviour_from_deterministic(const DeterministicStrategy& strategy);

// Result of the non-signalling membership check. When violated,
// `worst_constraint` names the marginal-independence constraint with the
// largest discrepancy.
struct NsCheck {
  bool non_signalling = true;
  double worst_violation = 0.0;
  std::string worst_constraint;
};

// Checks, for every strict non-empty subset S of parties, that the
// marginal distribution on S is independent of the complement's inputs.
NsCheck is_non_signalling(const Behaviour& p, double tolerance = 1e-9);

}  // namespace bellgap
