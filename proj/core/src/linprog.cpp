#include "bellgap/linprog.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "bellgap/errors.hpp"

namespace bellgap::linprog {
namespace {

constexpr double kReducedCostEps = 1e-9;
constexpr double kPivotEps = 1e-11;
constexpr double kFeasibilityEps = 1e-7;
// Iterations of no objective progress before switching to Bland's rule,
// which rules out cycling at the price of slower pivots.
constexpr int kStallLimit = 64;
// Programs with more tableau cells than this skip the simplex and go through
// the interior-point solver first. Marginal-consistency systems above this
// size carry thousands of zero-rhs rows, and tableau methods spend almost all
// pivots on the resulting degenerate vertex fans.
constexpr double kSimplexCellLimit = 1.0e6;

// Dense tableau: `rows` constraint rows then one objective row, each of
// `cols` columns with the rhs last. The objective row holds reduced costs
// and, in the rhs slot, minus the current objective value; standard row
// elimination keeps that invariant through pivots.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> t;
  std::vector<std::size_t> basis;  // basic variable of each row

  double& at(std::size_t r, std::size_t c) { return t[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * cols + c]; }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    for (std::size_t j = 0; j < cols; ++j) at(row, j) /= p;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) at(i, j) -= f * at(row, j);
      at(i, col) = 0.0;  // cancel elimination dust exactly
    }
    at(row, col) = 1.0;
    basis[row] = col;
  }
};

enum class IterateOutcome { kOptimal, kUnbounded };

// Runs the simplex loop to optimality or an unbounded ray. Dantzig pricing
// (most positive reduced cost, lowest column on ties); after kStallLimit
// pivots without objective progress Bland's rule takes over until progress
// resumes. Dantzig stretches strictly improve and Bland stretches are
// finite from any basis, so the loop always terminates.
IterateOutcome iterate(Tableau& tab, std::size_t variable_limit) {
  const std::size_t obj = tab.rows;
  const std::size_t rhs = tab.cols - 1;
  int stalled = 0;
  double last_value = -tab.at(obj, rhs);
  for (;;) {
    const bool bland = stalled >= kStallLimit;
    std::size_t enter = variable_limit;
    if (bland) {
      for (std::size_t j = 0; j < variable_limit; ++j) {
        if (tab.at(obj, j) > kReducedCostEps) {
          enter = j;
          break;
        }
      }
    } else {
      double best = kReducedCostEps;
      for (std::size_t j = 0; j < variable_limit; ++j) {
        if (tab.at(obj, j) > best) {
          best = tab.at(obj, j);
          enter = j;
        }
      }
    }
    if (enter == variable_limit) return IterateOutcome::kOptimal;

    std::size_t leave = tab.rows;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < tab.rows; ++i) {
      const double a = tab.at(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = tab.at(i, rhs) / a;
      const bool better =
          leave == tab.rows || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 &&
           (bland ? tab.basis[i] < tab.basis[leave] : i < leave));
      if (better) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == tab.rows) return IterateOutcome::kUnbounded;

    tab.pivot(leave, enter);

    const double value = -tab.at(obj, rhs);
    if (value > last_value + 1e-12) {
      stalled = 0;
      last_value = value;
    } else {
      ++stalled;
    }
  }
}

// ---------------------------------------------------------------------------
// Interior-point path for large programs.
//
// Mehrotra predictor-corrector on the standard form min c.x, Ax = b, x >= 0,
// solving the normal equations A diag(x/s) A^T dy = rhs by dense Cholesky.
// The constraint matrices this path sees are extremely sparse (a behaviour
// column meets one normalization row plus a handful of marginal rows), so the
// normal matrix is assembled from per-column supports; the Cholesky itself is
// the per-iteration cost. Redundant rows make the normal matrix only positive
// semidefinite, hence the adaptive ridge in the factorization.
//
// Interior iterates never sit on a vertex, so this path returns a strictly
// positive near-optimal point rather than an exact basic solution; callers
// validate it through `residual` exactly like a simplex optimum.

struct ColEntry {
  std::size_t row;
  double coeff;
};

LpResult solve_lp_ipm(const LinearProgram& p) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const std::size_t n = p.variables;
  const std::size_t m = p.rows();

  std::vector<std::vector<ColEntry>> cols(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = p.constraints[i * n + j];
      if (a != 0.0) cols[j].push_back({i, a});
    }
  }

  const VectorXd b = Eigen::Map<const VectorXd>(p.rhs.data(), static_cast<Eigen::Index>(m));
  VectorXd c(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) c[static_cast<Eigen::Index>(j)] = -p.objective[j];

  auto mul_a = [&](const VectorXd& x) {
    VectorXd r = VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < n; ++j) {
      const double xj = x[static_cast<Eigen::Index>(j)];
      if (xj == 0.0) continue;
      for (const ColEntry& e : cols[j]) r[static_cast<Eigen::Index>(e.row)] += e.coeff * xj;
    }
    return r;
  };
  auto mul_at = [&](const VectorXd& y) {
    VectorXd r(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (const ColEntry& e : cols[j]) s += e.coeff * y[static_cast<Eigen::Index>(e.row)];
      r[static_cast<Eigen::Index>(j)] = s;
    }
    return r;
  };
  auto normal_matrix = [&](const VectorXd& d) {
    MatrixXd mat = MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < n; ++j) {
      const double dj = d[static_cast<Eigen::Index>(j)];
      for (const ColEntry& e1 : cols[j]) {
        const double f = dj * e1.coeff;
        for (const ColEntry& e2 : cols[j]) {
          mat(static_cast<Eigen::Index>(e1.row), static_cast<Eigen::Index>(e2.row)) += f * e2.coeff;
        }
      }
    }
    return mat;
  };
  auto factor = [&](const MatrixXd& mat, Eigen::LLT<MatrixXd>& llt) {
    const double scale = std::max(mat.diagonal().maxCoeff(), 1.0);
    for (double ridge = 1e-12 * scale; ridge <= 1e-4 * scale; ridge *= 100.0) {
      MatrixXd shifted = mat;
      shifted.diagonal().array() += ridge;
      llt.compute(shifted);
      if (llt.info() == Eigen::Success) return true;
    }
    return false;
  };

  const double b_norm = b.lpNorm<Eigen::Infinity>();
  const double c_norm = c.lpNorm<Eigen::Infinity>();

  // Mehrotra starting point: least-squares solutions shifted into the
  // positive orthant.
  VectorXd x, y, s;
  {
    Eigen::LLT<MatrixXd> llt;
    if (!factor(normal_matrix(VectorXd::Ones(static_cast<Eigen::Index>(n))), llt)) {
      return LpResult{LpStatus::kInfeasible, 0.0, {}};
    }
    x = mul_at(llt.solve(b));
    y = llt.solve(mul_a(c));
    s = c - mul_at(y);
    const double dx = std::max(-1.5 * x.minCoeff(), 0.0);
    const double ds = std::max(-1.5 * s.minCoeff(), 0.0);
    x.array() += dx;
    s.array() += ds;
    const double xs = x.dot(s);
    double dxh = 0.5 * xs / std::max(s.sum(), 1e-300);
    double dsh = 0.5 * xs / std::max(x.sum(), 1e-300);
    if (!std::isfinite(dxh) || dxh <= 0.0) dxh = 1.0;
    if (!std::isfinite(dsh) || dsh <= 0.0) dsh = 1.0;
    x.array() += dxh;
    s.array() += dsh;
    const double floor_x = 1e-8 * (1.0 + b_norm);
    const double floor_s = 1e-8 * (1.0 + c_norm);
    x = x.cwiseMax(floor_x);
    s = s.cwiseMax(floor_s);
  }

  // Longest step that keeps v + alpha * dv >= (1 - eta) * v, as a fraction
  // eta of the exact boundary step.
  auto max_step = [](const VectorXd& v, const VectorXd& dv) {
    double alpha = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
    }
    return alpha;
  };

  constexpr int kMaxIterations = 200;
  for (int it = 0; it < kMaxIterations; ++it) {
    const VectorXd rp = b - mul_a(x);
    const VectorXd rd = c - mul_at(y) - s;
    const double mu = x.dot(s) / static_cast<double>(n);
    const double pobj = c.dot(x);
    const double dobj = b.dot(y);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    if (rp.lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + b_norm) &&
        rd.lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + c_norm) && gap <= 1e-10) {
      LpResult result;
      result.status = LpStatus::kOptimal;
      result.point.assign(x.data(), x.data() + x.size());
      double value = 0.0;
      for (std::size_t j = 0; j < n; ++j) value += p.objective[j] * result.point[j];
      result.value = value;
      return result;
    }
    if (!std::isfinite(mu) || mu > 1e16) break;

    const VectorXd d = x.cwiseQuotient(s);
    Eigen::LLT<MatrixXd> llt;
    if (!factor(normal_matrix(d), llt)) break;

    // Affine (predictor) direction: complementarity target zero.
    const VectorXd dy_aff = llt.solve(b + mul_a(d.cwiseProduct(rd)));
    const VectorXd ds_aff = rd - mul_at(dy_aff);
    const VectorXd dx_aff = -x - d.cwiseProduct(ds_aff);

    const double alpha_p_aff = max_step(x, dx_aff);
    const double alpha_d_aff = max_step(s, ds_aff);
    const double mu_aff = (x + alpha_p_aff * dx_aff).dot(s + alpha_d_aff * ds_aff) /
                          static_cast<double>(n);
    const double ratio = mu_aff / std::max(mu, 1e-300);
    const double sigma = std::min(1.0, ratio * ratio * ratio);

    // Corrector: recentre and compensate the predictor's second-order term.
    const VectorXd rc =
        (-x.cwiseProduct(s) - dx_aff.cwiseProduct(ds_aff)).array() + sigma * mu;
    const VectorXd dy = llt.solve(rp - mul_a(rc.cwiseQuotient(s)) + mul_a(d.cwiseProduct(rd)));
    const VectorXd ds = rd - mul_at(dy);
    const VectorXd dx = rc.cwiseQuotient(s) - d.cwiseProduct(ds);

    const double eta = mu < 1e-8 ? 0.9999 : 0.995;
    const double alpha_p = std::min(1.0, eta * max_step(x, dx));
    const double alpha_d = std::min(1.0, eta * max_step(s, ds));
    x += alpha_p * dx;
    y += alpha_d * dy;
    s += alpha_d * ds;
  }
  return LpResult{LpStatus::kInfeasible, 0.0, {}};  // did not converge
}

}  // namespace

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

LpResult solve_lp(const LinearProgram& p) {
  const std::size_t n = p.variables;
  const std::size_t m = p.rows();
  if (p.objective.size() != n || p.constraints.size() != m * n) {
    throw DimensionError("linear program dimensions are inconsistent");
  }
  for (double b : p.rhs) {
    if (!std::isfinite(b)) throw DomainError("rhs must be finite");
  }

  // Large programs go through the interior-point solver; if it fails to
  // converge (which also covers infeasible or unbounded data, where the
  // central path does not exist), the exact tableau method below stays
  // authoritative.
  if (static_cast<double>(n) * static_cast<double>(m) > kSimplexCellLimit) {
    LpResult ipm = solve_lp_ipm(p);
    if (ipm.status == LpStatus::kOptimal) return ipm;
  }

  // Phase 1 tableau: n real variables, m artificials, rhs. Rows with
  // negative rhs are negated so the artificial start is feasible.
  Tableau tab;
  tab.rows = m;
  tab.cols = n + m + 1;
  tab.t.assign((m + 1) * tab.cols, 0.0);
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = p.rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      tab.at(i, j) = sign * p.constraints[i * n + j];
    }
    tab.at(i, n + i) = 1.0;
    tab.at(i, tab.cols - 1) = sign * p.rhs[i];
    tab.basis[i] = n + i;
  }
  // Phase-1 objective: maximize minus the artificial sum. Reduced costs for
  // real columns are the column sums; the artificial columns start at 0.
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += tab.at(i, j);
    tab.at(m, j) = s;
  }
  {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += tab.at(i, tab.cols - 1);
    tab.at(m, tab.cols - 1) = s;
  }

  iterate(tab, n + m);
  const double infeasibility = tab.at(m, tab.cols - 1);
  if (infeasibility > kFeasibilityEps) {
    return LpResult{LpStatus::kInfeasible, 0.0, {}};
  }

  // Drive artificials out of the basis; rows that admit no real pivot are
  // redundant and get dropped.
  std::vector<char> keep(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.at(i, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col < n) {
      tab.pivot(i, col);
    } else {
      keep[i] = 0;
    }
  }
  // Phase-2 tableau: redundant rows and the artificial columns go away
  // entirely (every surviving basic variable is real after the drive-out).
  {
    Tableau compact;
    compact.rows = std::count(keep.begin(), keep.end(), 1);
    compact.cols = n + 1;
    compact.t.assign((compact.rows + 1) * compact.cols, 0.0);
    compact.basis.reserve(compact.rows);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!keep[i]) continue;
      for (std::size_t j = 0; j < n; ++j) compact.at(r, j) = tab.at(i, j);
      compact.at(r, n) = tab.at(i, tab.cols - 1);
      compact.basis.push_back(tab.basis[i]);
      ++r;
    }
    tab = std::move(compact);
  }

  // Phase-2 objective row from the original costs and the current basis.
  const std::size_t obj = tab.rows;
  const std::size_t rhs = tab.cols - 1;
  for (std::size_t j = 0; j < tab.cols; ++j) tab.at(obj, j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) tab.at(obj, j) = p.objective[j];
  for (std::size_t i = 0; i < tab.rows; ++i) {
    const double cb = p.objective[tab.basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < tab.cols; ++j) tab.at(obj, j) -= cb * tab.at(i, j);
  }

  if (iterate(tab, n) == IterateOutcome::kUnbounded) {
    return LpResult{LpStatus::kUnbounded, 0.0, {}};
  }

  LpResult result;
  result.status = LpStatus::kOptimal;
  result.point.assign(n, 0.0);
  for (std::size_t i = 0; i < tab.rows; ++i) {
    if (tab.basis[i] < n) result.point[tab.basis[i]] = tab.at(i, rhs);
  }
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) value += p.objective[j] * result.point[j];
  result.value = value;
  return result;
}

LpResidual residual(const LinearProgram& p, const std::vector<double>& x) {
  LpResidual r;
  if (x.size() != p.variables) {
    throw DimensionError("point length does not match the program");
  }
  for (std::size_t i = 0; i < p.rows(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < p.variables; ++j) {
      ax += p.constraints[i * p.variables + j] * x[j];
    }
    r.max_equality_violation =
        std::max(r.max_equality_violation, std::abs(ax - p.rhs[i]));
  }
  r.min_coordinate = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  return r;
}

}  // namespace bellgap::linprog
