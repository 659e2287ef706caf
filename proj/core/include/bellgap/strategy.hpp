#pragma once

#include <vector>

#include "bellgap/scenario.hpp"

namespace bellgap {

// One deterministic output assignment per party: party i maps each of its
// inputs to a fixed output. These are the extreme points of the fully
// local set. Outputs are stored 0-based; JSON interchange is 1-based.
struct DeterministicStrategy {
  Scenario scenario;
  std::vector<std::vector<int>> assignment;  // [party][input] -> output

  DeterministicStrategy(Scenario s, std::vector<std::vector<int>> a);

  int response(int party, int input) const { return assignment[party][input]; }
};

}  // namespace bellgap
