#pragma once

#include <array>
#include <span>
#include <vector>

#include "bellgap/multi_index.hpp"

namespace bellgap {

// A Bell scenario: number of parties and per-party input/output alphabet
// sizes. The standard setting is a shared alphabet (N inputs, K outputs
// for every party); per-party sizes exist for the one construction that
// needs them (the two-instance tripartite game, where the middle party
// holds a pair of inputs).
class Scenario {
 public:
  // Empty placeholder (0 parties) so scenario-bearing aggregates can be
  // built field by field; every real scenario goes through the validating
  // constructor below.
  Scenario() = default;

  Scenario(std::vector<int> inputs, std::vector<int> outputs);

  static Scenario uniform(int parties, int inputs_per_party, int outputs_per_party);

  int parties() const { return static_cast<int>(inputs_.size()); }
  int input_count(int party) const { return inputs_[party]; }
  int output_count(int party) const { return outputs_[party]; }
  std::span<const int> inputs() const { return inputs_; }
  std::span<const int> outputs() const { return outputs_; }

  bool uniform_alphabets() const;
  // Shared alphabet sizes; only meaningful when uniform_alphabets().
  int inputs_per_party() const { return inputs_[0]; }
  int outputs_per_party() const { return outputs_[0]; }

  Index input_tuples() const { return tuple_count(inputs_); }
  Index output_tuples() const { return tuple_count(outputs_); }

  bool operator==(const Scenario&) const = default;

 private:
  std::vector<int> inputs_;
  std::vector<int> outputs_;
};

// A bipartition of three parties into a merged pair and a lone party.
struct Partition {
  std::array<int, 2> merged;  // ascending party indices (0-based)
  int lone;

  static Partition around_lone(int lone_party);
  static std::array<Partition, 3> all_tripartite();
};

}  // namespace bellgap
