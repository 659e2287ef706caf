#include "bellgap/strategy.hpp"

#include "bellgap/errors.hpp"

namespace bellgap {

DeterministicStrategy::DeterministicStrategy(Scenario s, std::vector<std::vector<int>> a)
    : scenario(std::move(s)), assignment(std::move(a)) {
  if (assignment.size() != static_cast<std::size_t>(scenario.parties())) {
    throw DimensionError("strategy needs one assignment per party");
  }
  for (int i = 0; i < scenario.parties(); ++i) {
    if (assignment[i].size() != static_cast<std::size_t>(scenario.input_count(i))) {
      throw DimensionError("strategy needs one response per input");
    }
    for (int a_i : assignment[i]) {
      if (a_i < 0 || a_i >= scenario.output_count(i)) {
        throw DomainError("strategy response outside the output alphabet");
      }
    }
  }
}

}  // namespace bellgap
