#include "bellgap/valuation.hpp"

#include <string>

#include "bellgap/errors.hpp"
#include "bellgap/games.hpp"

namespace bellgap {
namespace {

using solvers::ValueClass;
using solvers::ValueReport;

std::string meta_name(const BellFunctional& m) {
  const auto it = m.meta().find("name");
  return it == m.meta().end() ? std::string() : it->second;
}

int meta_int(const BellFunctional& m, const std::string& key, int fallback) {
  const auto it = m.meta().find(key);
  return it == m.meta().end() ? fallback : std::stoi(it->second);
}

double meta_double(const BellFunctional& m, const std::string& key,
                   double fallback) {
  const auto it = m.meta().find(key);
  return it == m.meta().end() ? fallback : std::stod(it->second);
}

// Lower bound for games via one of the hand-built strategies. Only the
// functionals we know how to play are accepted; anything else has no
// general-kind quantum solver here.
ValueReport quantum_lower_game(const BellFunctional& m) {
  const std::string name = meta_name(m);
  quantum::QuantumStrategy qs;
  if (name == "chsh") {
    qs = quantum::chsh_optimal_strategy();
  } else if (name == "kv") {
    games::KVParams params;
    params.l = meta_int(m, "l", params.l);
    params.eta = meta_double(m, "eta", params.eta);
    qs = quantum::kv_strategy(params);
  } else if (name == "hat(chsh)") {
    qs = quantum::hat_strategy(quantum::chsh_optimal_strategy());
  } else {
    throw UnsupportedError(
        "no constructed quantum strategy for this functional; quantum-lower "
        "supports correlation functionals and the chsh / kv / hat(chsh) games");
  }

  Behaviour p = quantum::behaviour_of(qs);
  ValueReport report;
  report.functional_id = name;
  report.class_label = to_string(ValueClass::kQuantumLower);
  report.value = evaluate(m, p);
  report.method = "constructed";
  report.certificate.behaviour = std::move(p);
  report.is_bound = true;
  report.bound_kind = "lower";
  return report;
}

}  // namespace

ValueReport compute_value(const BellFunctional& m, ValueClass value_class,
                          const solvers::SolveOptions& options,
                          const QuantumLowerOptions& quantum_options) {
  const bool correlation = m.kind() == FunctionalKind::kCorrelation;

  switch (value_class) {
    case ValueClass::kLocal:
      if (correlation) return solvers::local_correlation_value(m, options);
      return solvers::local_value(m, options);
    case ValueClass::kBilocalGeneral:
      if (correlation) {
        throw UnsupportedError(
            "general-bilocal over a correlation functional is not computed "
            "here; use bilocal-cor or bilocal-ns");
      }
      return solvers::bilocal_value_general(m, options);
    case ValueClass::kBilocalNs:
      if (correlation) {
        // Equal to the bilocal correlation value, computed on the embedded
        // general functional so the certificate is a full behaviour.
        ValueReport report =
            solvers::bilocal_value_ns(embed_correlation_functional(m), options);
        report.class_label = to_string(ValueClass::kBilocalNs);
        return report;
      }
      return solvers::bilocal_value_ns(m, options);
    case ValueClass::kNs:
      if (correlation) return solvers::ns_correlation_value(m);
      return solvers::ns_value(m, options);
    case ValueClass::kLocalCor:
      if (!correlation) {
        throw UnsupportedError("local-cor needs a correlation functional");
      }
      return solvers::local_correlation_value(m, options);
    case ValueClass::kBilocalCor:
      if (!correlation) {
        throw UnsupportedError("bilocal-cor needs a correlation functional");
      }
      return solvers::bilocal_correlation_value(m, options);
    case ValueClass::kNsCor:
      if (!correlation) {
        throw UnsupportedError("ns-cor needs a correlation functional");
      }
      return solvers::ns_correlation_value(m);
    case ValueClass::kQuantumLower:
      if (correlation) {
        return quantum::correlation_seesaw(m, quantum_options.seesaw);
      }
      return quantum_lower_game(m);
  }
  throw DomainError("unknown value class");
}

}  // namespace bellgap
