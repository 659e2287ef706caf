#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bellgap::linprog {

// maximize c.x subject to A x = b, x >= 0. Dense storage, row-major A.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<double> objective;  // length variables
  std::vector<double> constraints;  // rows * variables, row-major
  std::vector<double> rhs;          // length rows
  std::size_t rows() const { return rhs.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> point;  // optimal point when status == kOptimal
};

// Small programs: two-phase primal simplex with Dantzig pricing and a Bland
// fallback when progress stalls, returning an exact vertex. Large programs
// (more than ~1e6 tableau cells, in practice the marginal-consistency
// systems of multi-input scenarios, which are too degenerate for tableau
// pivoting) go through a Mehrotra predictor-corrector interior-point solver
// and return a strictly interior near-optimal point; if it fails to
// converge, the simplex stays authoritative. Deterministic for identical
// input either way. Optimal points satisfy the constraints to ~1e-9;
// callers re-validate certificates regardless.
LpResult solve_lp(const LinearProgram& p);

// Max |residual| of A x = b and min coordinate of x, for caller-side
// certificate validation.
struct LpResidual {
  double max_equality_violation = 0.0;
  double min_coordinate = 0.0;
};
LpResidual residual(const LinearProgram& p, const std::vector<double>& x);

}  // namespace bellgap::linprog
