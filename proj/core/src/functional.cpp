#include "bellgap/functional.hpp"

#include <cmath>

#include "bellgap/errors.hpp"

namespace bellgap {

std::string to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::kGeneral: return "general";
    case FunctionalKind::kGame: return "game";
    case FunctionalKind::kCorrelation: return "correlation-functional";
  }
  throw DomainError("unknown functional kind");
}

FunctionalKind functional_kind_from_string(const std::string& name) {
  if (name == "general") return FunctionalKind::kGeneral;
  if (name == "game") return FunctionalKind::kGame;
  if (name == "correlation-functional") return FunctionalKind::kCorrelation;
  throw DomainError("unknown functional kind '" + name + "'");
}

BellFunctional::BellFunctional(Scenario scenario, FunctionalKind kind,
                               std::vector<double> coeffs,
                               std::map<std::string, std::string> meta)
    : scenario_(std::move(scenario)),
      kind_(kind),
      coeffs_(std::move(coeffs)),
      meta_(std::move(meta)) {
  const Index expected = kind_ == FunctionalKind::kCorrelation
                             ? scenario_.input_tuples()
                             : scenario_.input_tuples() * scenario_.output_tuples();
  if (coeffs_.size() != expected) {
    throw DimensionError("coefficient tensor size does not match the scenario");
  }
  if (kind_ == FunctionalKind::kCorrelation) {
    for (int i = 0; i < scenario_.parties(); ++i) {
      if (scenario_.output_count(i) != 2) {
        throw UnsupportedError("correlation functionals need binary outputs");
      }
    }
  }
  if (kind_ == FunctionalKind::kGame) {
    for (double v : coeffs_) {
      if (v < 0.0) throw DomainError("games have non-negative coefficients");
    }
  }
}

double BellFunctional::coeff(Index input_flat, Index output_flat) const {
  if (kind_ == FunctionalKind::kCorrelation) {
    throw UnsupportedError("correlation functionals have no per-output coefficients");
  }
  return coeffs_[input_flat * scenario_.output_tuples() + output_flat];
}

double BellFunctional::correlation_coeff(Index input_flat) const {
  if (kind_ != FunctionalKind::kCorrelation) {
    throw UnsupportedError("per-input coefficients exist only for correlation functionals");
  }
  return coeffs_[input_flat];
}

BellFunctional BellFunctional::scaled(double s) const {
  std::vector<double> out(coeffs_);
  for (double& v : out) v *= s;
  FunctionalKind kind = kind_;
  if (kind == FunctionalKind::kGame && s < 0.0) kind = FunctionalKind::kGeneral;
  return BellFunctional(scenario_, kind, std::move(out), meta_);
}

double evaluate(const BellFunctional& m, const Behaviour& p) {
  if (m.scenario() != p.scenario()) {
    throw DimensionError("functional and behaviour scenarios differ");
  }
  if (m.kind() == FunctionalKind::kCorrelation) {
    return evaluate(m, correlation_from_behaviour(p));
  }
  double sum = 0.0;
  const Index inputs = m.scenario().input_tuples();
  const Index outputs = m.scenario().output_tuples();
  for (Index x = 0; x < inputs; ++x) {
    for (Index a = 0; a < outputs; ++a) sum += m.coeff(x, a) * p.prob(x, a);
  }
  return sum;
}

double evaluate(const BellFunctional& m, const Correlation& c) {
  if (m.kind() != FunctionalKind::kCorrelation) {
    throw UnsupportedError("pairing with a correlation needs a correlation functional");
  }
  if (m.scenario() != c.scenario()) {
    throw DimensionError("functional and correlation scenarios differ");
  }
  double sum = 0.0;
  for (Index x = 0; x < m.scenario().input_tuples(); ++x) {
    sum += m.correlation_coeff(x) * c.value(x);
  }
  return sum;
}

BellFunctional embed_correlation_functional(const BellFunctional& m) {
  if (m.kind() != FunctionalKind::kCorrelation) {
    throw UnsupportedError("embedding applies to correlation functionals");
  }
  const Scenario& sc = m.scenario();
  const Index outputs = sc.output_tuples();
  std::vector<double> coeffs(sc.input_tuples() * outputs, 0.0);
  std::vector<int> a(sc.parties());
  for (Index x = 0; x < sc.input_tuples(); ++x) {
    for (Index af = 0; af < outputs; ++af) {
      unflatten(af, sc.outputs(), a);
      int sign = 1;
      for (int ai : a) sign *= output_sign(ai);
      coeffs[x * outputs + af] = sign * m.correlation_coeff(x);
    }
  }
  return BellFunctional(sc, FunctionalKind::kGeneral, std::move(coeffs), m.meta());
}

}  // namespace bellgap
