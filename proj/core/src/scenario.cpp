#include "bellgap/scenario.hpp"

#include <algorithm>

#include "bellgap/errors.hpp"

namespace bellgap {

Scenario::Scenario(std::vector<int> inputs, std::vector<int> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  if (inputs_.empty() || inputs_.size() != outputs_.size()) {
    throw DimensionError("scenario needs one input and one output count per party");
  }
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i] < 1 || outputs_[i] < 1) {
      throw DomainError("alphabet sizes must be positive");
    }
  }
}

Scenario Scenario::uniform(int parties, int inputs_per_party, int outputs_per_party) {
  if (parties < 1) throw DomainError("party count must be positive");
  return Scenario(std::vector<int>(parties, inputs_per_party),
                  std::vector<int>(parties, outputs_per_party));
}

bool Scenario::uniform_alphabets() const {
  auto all_equal = [](std::span<const int> v) {
    return std::all_of(v.begin(), v.end(), [&](int x) { return x == v[0]; });
  };
  return all_equal(inputs_) && all_equal(outputs_);
}

Partition Partition::around_lone(int lone_party) {
  if (lone_party < 0 || lone_party > 2) {
    throw DomainError("lone party index must be 0, 1, or 2");
  }
  Partition p{};
  p.lone = lone_party;
  int j = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != lone_party) p.merged[j++] = i;
  }
  return p;
}

std::array<Partition, 3> Partition::all_tripartite() {
  return {around_lone(2), around_lone(1), around_lone(0)};
}

}  // namespace bellgap
