#include "bellgap/behaviour.hpp"

#include <cmath>
#include <sstream>

#include "bellgap/errors.hpp"

namespace bellgap {
namespace {

// Renders "(2,0,1)" for error and report messages.
std::string tuple_string(std::span<const int> t) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
  out << ')';
  return out.str();
}

std::string party_set_string(const std::vector<int>& parties) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < parties.size(); ++i) {
    out << (i ? "," : "") << parties[i] + 1;
  }
  out << '}';
  return out.str();
}

std::vector<int> subset_radix(const std::vector<int>& parties, std::span<const int> radix) {
  std::vector<int> out;
  out.reserve(parties.size());
  for (int p : parties) out.push_back(radix[p]);
  return out;
}

}  // namespace

Behaviour::Behaviour(Scenario scenario, std::vector<double> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  const Index inputs = scenario_.input_tuples();
  const Index outputs = scenario_.output_tuples();
  if (table_.size() != inputs * outputs) {
    throw DimensionError("behaviour table size does not match the scenario");
  }
  for (Index x = 0; x < inputs; ++x) {
    double sum = 0.0;
    for (Index a = 0; a < outputs; ++a) {
      const double p = table_[x * outputs + a];
      if (p < -1e-12) {
        throw ValidationError("behaviour entry below zero at input " +
                              std::to_string(x));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError("behaviour rows must sum to 1; input " +
                            std::to_string(x) + " sums to " + std::to_string(sum));
    }
  }
}

Behaviour behaviour_from_deterministic(const DeterministicStrategy& strategy) {
  const Scenario& sc = strategy.scenario;
  const Index outputs = sc.output_tuples();
  std::vector<double> table(sc.input_tuples() * outputs, 0.0);
  std::vector<int> x = zero_tuple(sc.parties());
  std::vector<int> a(sc.parties());
  Index x_flat = 0;
  do {
    for (int i = 0; i < sc.parties(); ++i) a[i] = strategy.response(i, x[i]);
    table[x_flat * outputs + flat_index(a, sc.outputs())] = 1.0;
    ++x_flat;
  } while (next_tuple(x, sc.inputs()));
  return Behaviour(sc, std::move(table));
}

NsCheck is_non_signalling(const Behaviour& p, double tolerance) {
  const Scenario& sc = p.scenario();
  const int k = sc.parties();
  NsCheck result;

  std::vector<int> x_full(k), a_full(k);
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<int> kept, dropped;
    for (int i = 0; i < k; ++i) ((mask >> i) & 1u ? kept : dropped).push_back(i);

    const std::vector<int> kept_in = subset_radix(kept, sc.inputs());
    const std::vector<int> kept_out = subset_radix(kept, sc.outputs());
    const std::vector<int> drop_in = subset_radix(dropped, sc.inputs());
    const std::vector<int> drop_out = subset_radix(dropped, sc.outputs());

    // Marginal of the kept parties for one full input assignment.
    auto marginal = [&](std::span<const int> x_kept, std::span<const int> x_drop,
                        std::span<const int> a_kept) {
      for (std::size_t i = 0; i < kept.size(); ++i) {
        x_full[kept[i]] = x_kept[i];
        a_full[kept[i]] = a_kept[i];
      }
      for (std::size_t i = 0; i < dropped.size(); ++i) x_full[dropped[i]] = x_drop[i];
      double sum = 0.0;
      std::vector<int> a_drop = zero_tuple(dropped.size());
      do {
        for (std::size_t i = 0; i < dropped.size(); ++i) a_full[dropped[i]] = a_drop[i];
        sum += p.prob(x_full, a_full);
      } while (next_tuple(a_drop, drop_out));
      return sum;
    };

    std::vector<int> x_kept = zero_tuple(kept.size());
    do {
      std::vector<int> a_kept = zero_tuple(kept.size());
      do {
        const std::vector<int> x_ref = zero_tuple(dropped.size());
        const double ref = marginal(x_kept, x_ref, a_kept);
        std::vector<int> x_drop = zero_tuple(dropped.size());
        while (next_tuple(x_drop, drop_in)) {
          const double diff = std::abs(marginal(x_kept, x_drop, a_kept) - ref);
          if (diff > result.worst_violation) {
            result.worst_violation = diff;
            result.worst_constraint =
                "marginal on parties " + party_set_string(kept) + " at x=" +
                tuple_string(x_kept) + ", a=" + tuple_string(a_kept) +
                " changes when the complement input moves to " + tuple_string(x_drop);
          }
        }
      } while (next_tuple(a_kept, kept_out));
    } while (next_tuple(x_kept, kept_in));
  }

  result.non_signalling = result.worst_violation <= tolerance;
  return result;
}

}  // namespace bellgap
