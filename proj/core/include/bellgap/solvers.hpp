#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bellgap/behaviour.hpp"
#include "bellgap/correlation.hpp"
#include "bellgap/functional.hpp"
#include "bellgap/quantum_types.hpp"
#include "bellgap/scenario.hpp"
#include "bellgap/strategy.hpp"

namespace bellgap::solvers {

enum class ValueClass {
  kLocal,
  kBilocalGeneral,
  kBilocalNs,
  kNs,
  kQuantumLower,
  kLocalCor,
  kBilocalCor,
  kNsCor,
};

std::string to_string(ValueClass c);
ValueClass value_class_from_string(const std::string& label);

struct SolveOptions {
  // Cap on elementary scans (coefficient reads) before a solver refuses.
  double budget = 1e8;
  // 0 = one worker per hardware thread. Results are identical regardless.
  int threads = 0;
};

// Witness attached to a ValueReport. `behaviour` is present for every
// exact value and every lower bound, and re-evaluates against the
// functional to |value| within 1e-9; upper bounds carry no witness. The
// other fields describe how the witness was built, depending on the method.
struct Certificate {
  std::optional<Behaviour> behaviour;
  std::optional<DeterministicStrategy> strategy;
  std::optional<Partition> partition;
  std::optional<Correlation> correlation;
  std::optional<quantum::CorrelationObservables> observables;
};

struct ValueReport {
  std::string functional_id;  // meta["name"] when present
  std::string class_label;    // to_string of the ValueClass
  double value = 0.0;
  std::string method;  // enumeration | lp | closed-form | see-saw | hill-climb | sum-max
  Certificate certificate;
  bool is_bound = false;       // true when value is a bound, not the optimum
  std::string bound_kind;      // "lower" or "upper" when is_bound
};

// |<M, certificate behaviour>|; the report invariant is
// |re_evaluate(r, m) - r.value| <= 1e-9 (exact for bounds, which store the
// witness that attains them; upper bounds store the behaviour the bound was
// derived from and skip the invariant).
double re_evaluate(const ValueReport& report, const BellFunctional& m);

// --- Exact enumeration ---------------------------------------------------------

// Exact max over deterministic strategies of |<M, P>|. Enumerates parties
// 1..k-1 and takes the last party's best response input-by-input. Kinds
// general and game only; correlation functionals go through
// local_correlation_value.
ValueReport local_value(const BellFunctional& m, const SolveOptions& options = {});

// Exact max over the three partitions of the bipartite local value of the
// merged-pair game: the lone party runs over its deterministic strategies,
// the merged pair answers with an arbitrary joint (possibly signalling)
// distribution, whose optimum is a per-input best response. Tripartite
// games with non-negative coefficients only.
ValueReport bilocal_value_general(const BellFunctional& m,
                                  const SolveOptions& options = {});

// --- LP-based values ------------------------------------------------------------

// Max |<M, P>| over the full non-signalling polytope (2 or 3 parties).
// Games solve one LP; signed functionals solve one per sign.
ValueReport ns_value(const BellFunctional& m, const SolveOptions& options = {});

// Max over partitions and lone-party deterministic strategies of the
// two-party NS LP on the merged pair, with the lone response folded into
// the coefficients. Tripartite only.
ValueReport bilocal_value_ns(const BellFunctional& m,
                             const SolveOptions& options = {});

// --- Correlation-scenario values -------------------------------------------------

// Exact max over sign assignments of |sum_x M_x prod_i a_i(x_i)|; last
// party by best response (sign of partial sums).
ValueReport local_correlation_value(const BellFunctional& m,
                                    const SolveOptions& options = {});

// Closed form sum_x |M_x|: the NS correlation set is the unit cube.
ValueReport ns_correlation_value(const BellFunctional& m);

// Closed form over the three partitions: max over lone-party sign vectors
// s of sum_{pair input} |sum_{lone input} M s| (cube optimum on the merged
// pair). Tripartite correlation functionals only.
ValueReport bilocal_correlation_value(const BellFunctional& m,
                                      const SolveOptions& options = {});

// --- Bounds for instances beyond exact reach -------------------------------------

// Local-search lower bound on the local value: steepest-ascent over single
// response flips from `restarts` deterministic starting points. Always a
// valid lower bound; labeled as such in the report.
ValueReport local_value_lower(const BellFunctional& m, int restarts = 64,
                              const SolveOptions& options = {});

// sum_x max_a M upper bound on the NS value (equals it when the per-input
// maxima are NS-compatible). Always valid for non-negative coefficients.
ValueReport ns_value_upper(const BellFunctional& m);

// --- Ratios -----------------------------------------------------------------------

struct LVReport {
  std::string functional_id;
  ValueReport numerator;
  ValueReport denominator;
  double ratio = 0.0;  // +inf with numerator > 0 and denominator 0
};

LVReport lv_ratio(const ValueReport& numerator, const ValueReport& denominator);

}  // namespace bellgap::solvers
