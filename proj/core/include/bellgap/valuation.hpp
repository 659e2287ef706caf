#pragma once

#include "bellgap/functional.hpp"
#include "bellgap/quantum.hpp"
#include "bellgap/solvers.hpp"

namespace bellgap {

struct QuantumLowerOptions {
  quantum::SeesawOptions seesaw;  // used for correlation functionals
};

// Routes a (functional, class) pair to the right solver. quantum-lower uses
// the see-saw for correlation functionals and a constructed strategy for the
// recognized games (meta name chsh / kv / hat(chsh)); correlation classes
// require kind = correlation-functional, the rest reject it.
solvers::ValueReport compute_value(const BellFunctional& m,
                                   solvers::ValueClass value_class,
                                   const solvers::SolveOptions& options = {},
                                   const QuantumLowerOptions& quantum = {});

}  // namespace bellgap
