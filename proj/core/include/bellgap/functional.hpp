#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bellgap/behaviour.hpp"
#include "bellgap/correlation.hpp"
#include "bellgap/scenario.hpp"

namespace bellgap {

enum class FunctionalKind {
  kGeneral,      // arbitrary real coefficients on (inputs, outputs)
  kGame,         // non-negative coefficients; value = winning probability
  kCorrelation,  // coefficients on inputs only (K = 2, +-1 outputs)
};

std::string to_string(FunctionalKind kind);
FunctionalKind functional_kind_from_string(const std::string& name);

// A Bell functional M over a scenario. Storage is dense and x-major:
// general/game coefficients index (input_flat * output_tuples + output_flat),
// correlation coefficients index input_flat alone.
class BellFunctional {
 public:
  BellFunctional(Scenario scenario, FunctionalKind kind,
                 std::vector<double> coeffs,
                 std::map<std::string, std::string> meta = {});

  const Scenario& scenario() const { return scenario_; }
  FunctionalKind kind() const { return kind_; }
  std::span<const double> coeffs() const { return coeffs_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  double coeff(Index input_flat, Index output_flat) const;
  double correlation_coeff(Index input_flat) const;

  // Same coefficients times s. Kind is preserved for s >= 0; scaling a game
  // by s < 0 yields a general functional.
  BellFunctional scaled(double s) const;

  // Number of stored coefficients (dense size).
  Index size() const { return coeffs_.size(); }

 private:
  Scenario scenario_;
  FunctionalKind kind_;
  std::vector<double> coeffs_;
  std::map<std::string, std::string> meta_;
};

// <M, P> = sum_{x,a} M(x,a) P(a|x). Correlation functionals pair with the
// correlation of P: sum_x M_x gamma_x.
double evaluate(const BellFunctional& m, const Behaviour& p);
double evaluate(const BellFunctional& m, const Correlation& c);

// A correlation functional as a general one on the same K=2 scenario:
// coefficient at (x, a) is M_x * prod_i sign(a_i). Pairings agree:
// <embed(M), P> = <M, gamma(P)> for every behaviour P.
BellFunctional embed_correlation_functional(const BellFunctional& m);

}  // namespace bellgap
