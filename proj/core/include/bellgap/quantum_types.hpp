#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bellgap/scenario.hpp"

namespace bellgap::quantum {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// A finite-dimensional quantum strategy: a shared pure state on the tensor
// product of per-party spaces, and one POVM per (party, input).
// povms[party][input][output] is a dim_i x dim_i PSD matrix; each
// (party, input) family sums to the identity.
struct QuantumStrategy {
  Scenario scenario;
  std::vector<int> dims;  // local dimension per party
  Vector state;           // length prod(dims)
  std::vector<std::vector<std::vector<Matrix>>> povms;
};

// Correlation-scenario strategy: one self-adjoint, norm <= 1 observable per
// (party, input) instead of a POVM. gamma_x = <state| A_{x1} x ... |state>.
struct CorrelationObservables {
  Scenario scenario;
  std::vector<int> dims;
  Vector state;
  std::vector<std::vector<Matrix>> observables;  // [party][input]
};

}  // namespace bellgap::quantum
