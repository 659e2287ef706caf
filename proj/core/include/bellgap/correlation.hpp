#pragma once

#include <span>
#include <vector>

#include "bellgap/behaviour.hpp"
#include "bellgap/scenario.hpp"

namespace bellgap {

// Output sign convention for the binary-output correlation scenario:
// output index 0 is +1, output index 1 is -1.
inline int output_sign(int output_index) { return output_index == 0 ? +1 : -1; }

// Correlation tensor gamma_{x1..xk} = E[a1...ak | x1..xk] for a K=2
// scenario with +-1 outputs. Entries live in [-1, 1]; that box is exactly
// the set of non-signalling correlations.
class Correlation {
 public:
  Correlation(Scenario scenario, std::vector<double> table);

  const Scenario& scenario() const { return scenario_; }
  std::span<const double> table() const { return table_; }

  double value(Index input_flat) const { return table_[input_flat]; }
  double value(std::span<const int> inputs) const {
    return table_[flat_index(inputs, scenario_.inputs())];
  }

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

// gamma_x = sum_a (prod_i sign(a_i)) P(a|x). Requires K = 2.
Correlation correlation_from_behaviour(const Behaviour& p);

// The constructive non-signalling witness for a box correlation:
// P(a|x) = (1 + gamma_x)/2^k on even-sign output tuples and
// (1 - gamma_x)/2^k on odd ones. Always non-signalling, and its
// correlation is exactly the input tensor.
Behaviour behaviour_from_correlation(const Correlation& c);

}  // namespace bellgap
