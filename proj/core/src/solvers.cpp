#include "bellgap/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "bellgap/errors.hpp"
#include "bellgap/linprog.hpp"
#include "internal/parallel.hpp"

namespace bellgap::solvers {
namespace {

using internal::Best;
using internal::best_over;

std::string id_of(const BellFunctional& m) {
  auto it = m.meta().find("name");
  return it == m.meta().end() ? std::string() : it->second;
}

void check_budget(double scans, const std::string& bound, double budget) {
  if (scans > budget) {
    std::ostringstream msg;
    msg << "enumeration bound " << bound << " needs about " << scans
        << " elementary scans, over the budget of " << budget;
    throw ResourceError(msg.str(), bound);
  }
}

void require_tripartite(const BellFunctional& m, const char* op) {
  if (m.scenario().parties() != 3) {
    throw UnsupportedError(std::string(op) + " handles tripartite functionals only");
  }
}

// Radix of the joint response tables of parties 0..k-2: party i contributes
// N_i digits of base K_i, party 0 slowest. Flat enumeration order is the
// lexicographic order of the response tables.
std::vector<int> prefix_radix(const Scenario& sc) {
  std::vector<int> radix;
  for (int i = 0; i + 1 < sc.parties(); ++i) {
    radix.insert(radix.end(), sc.input_count(i), sc.output_count(i));
  }
  return radix;
}

double product_of(std::span<const int> radix) {
  double p = 1.0;
  for (int r : radix) p *= r;
  return p;
}

ValueReport make_report(const BellFunctional& m, ValueClass cls, double value,
                        std::string method, Certificate certificate) {
  ValueReport report;
  report.functional_id = id_of(m);
  report.class_label = to_string(cls);
  report.value = value;
  report.method = std::move(method);
  report.certificate = std::move(certificate);
  return report;
}

// --- shared pieces of the LP-backed solvers -----------------------------------

// Equality system of the full NS polytope over `sc`: per-input normalization
// plus, for each party, independence of the other parties' marginal from
// that party's input (reference input 0). Those families imply every strict
// subset's marginal condition.
linprog::LinearProgram ns_polytope_program(const Scenario& sc) {
  const Index it = sc.input_tuples();
  const Index ot = sc.output_tuples();
  const std::size_t vars = it * ot;

  std::size_t rows = it;
  for (int j = 0; j < sc.parties(); ++j) {
    double others_in = 1.0, others_out = 1.0;
    for (int i = 0; i < sc.parties(); ++i) {
      if (i == j) continue;
      others_in *= sc.input_count(i);
      others_out *= sc.output_count(i);
    }
    rows += static_cast<std::size_t>(others_in * others_out) *
            (sc.input_count(j) - 1);
  }

  linprog::LinearProgram p;
  p.variables = vars;
  p.objective.assign(vars, 0.0);
  p.constraints.assign(rows * vars, 0.0);
  p.rhs.assign(rows, 0.0);

  std::size_t row = 0;
  for (Index x = 0; x < it; ++x, ++row) {
    for (Index a = 0; a < ot; ++a) p.constraints[row * vars + x * ot + a] = 1.0;
    p.rhs[row] = 1.0;
  }

  const int k = sc.parties();
  std::vector<int> x_full(k), a_full(k);
  for (int j = 0; j < k; ++j) {
    std::vector<int> others;
    for (int i = 0; i < k; ++i) {
      if (i != j) others.push_back(i);
    }
    std::vector<int> in_radix, out_radix;
    for (int i : others) in_radix.push_back(sc.input_count(i));
    for (int i : others) out_radix.push_back(sc.output_count(i));

    std::vector<int> xo = zero_tuple(others.size());
    do {
      for (std::size_t t = 0; t < others.size(); ++t) x_full[others[t]] = xo[t];
      std::vector<int> ao = zero_tuple(others.size());
      do {
        for (std::size_t t = 0; t < others.size(); ++t) a_full[others[t]] = ao[t];
        for (int xj = 1; xj < sc.input_count(j); ++xj, ++row) {
          for (int aj = 0; aj < sc.output_count(j); ++aj) {
            a_full[j] = aj;
            x_full[j] = xj;
            p.constraints[row * vars + flat_index(x_full, sc.inputs()) * ot +
                          flat_index(a_full, sc.outputs())] += 1.0;
            x_full[j] = 0;
            p.constraints[row * vars + flat_index(x_full, sc.inputs()) * ot +
                          flat_index(a_full, sc.outputs())] -= 1.0;
          }
        }
      } while (next_tuple(ao, out_radix));
    } while (next_tuple(xo, in_radix));
  }
  return p;
}

// Solves the program after installing `objective`, re-validates the point,
// and hands back (value, clamped point). The NS polytope is nonempty and
// bounded, so anything but an optimal status is an internal failure.
std::pair<double, std::vector<double>> solve_ns_program(
    linprog::LinearProgram& p, const std::vector<double>& objective) {
  p.objective = objective;
  const linprog::LpResult lp = linprog::solve_lp(p);
  if (lp.status != linprog::LpStatus::kOptimal) {
    throw ValidationError("NS polytope LP reported " + to_string(lp.status) +
                          "; the polytope is never empty or unbounded");
  }
  const linprog::LpResidual res = linprog::residual(p, lp.point);
  if (res.max_equality_violation > 1e-8 || res.min_coordinate < -1e-9) {
    throw ValidationError("LP certificate failed re-validation");
  }
  std::vector<double> point = lp.point;
  for (double& v : point) v = std::max(v, 0.0);
  return {lp.value, std::move(point)};
}

}  // namespace

std::string to_string(ValueClass c) {
  switch (c) {
    case ValueClass::kLocal: return "local";
    case ValueClass::kBilocalGeneral: return "bilocal-general";
    case ValueClass::kBilocalNs: return "bilocal-ns";
    case ValueClass::kNs: return "ns";
    case ValueClass::kQuantumLower: return "quantum-lower";
    case ValueClass::kLocalCor: return "local-cor";
    case ValueClass::kBilocalCor: return "bilocal-cor";
    case ValueClass::kNsCor: return "ns-cor";
  }
  throw DomainError("unknown value class");
}

ValueClass value_class_from_string(const std::string& label) {
  if (label == "local") return ValueClass::kLocal;
  if (label == "bilocal-general") return ValueClass::kBilocalGeneral;
  if (label == "bilocal-ns") return ValueClass::kBilocalNs;
  if (label == "ns") return ValueClass::kNs;
  if (label == "quantum-lower") return ValueClass::kQuantumLower;
  if (label == "local-cor") return ValueClass::kLocalCor;
  if (label == "bilocal-cor") return ValueClass::kBilocalCor;
  if (label == "ns-cor") return ValueClass::kNsCor;
  throw DomainError("unknown value class '" + label + "'");
}

double re_evaluate(const ValueReport& report, const BellFunctional& m) {
  if (!report.certificate.behaviour) {
    throw DomainError("report carries no witness behaviour to re-evaluate");
  }
  return std::abs(evaluate(m, *report.certificate.behaviour));
}

ValueReport local_value(const BellFunctional& m, const SolveOptions& options) {
  if (m.kind() == FunctionalKind::kCorrelation) {
    throw UnsupportedError(
        "local_value handles games and general functionals; correlation "
        "functionals go through local_correlation_value");
  }
  const Scenario& sc = m.scenario();
  const int k = sc.parties();
  const int last = k - 1;
  const int nl = sc.input_count(last);
  const int kl = sc.output_count(last);
  const Index it = sc.input_tuples();
  const bool game = m.kind() == FunctionalKind::kGame;

  const std::vector<int> radix = prefix_radix(sc);
  const double prefixes = product_of(radix);
  check_budget(prefixes * double(it) * kl, "K^{N*(k-1)}", options.budget);
  const Index prefix_count = static_cast<Index>(prefixes);

  // Input tuples of the first k-1 parties; the last party's input is the
  // fastest digit of the full flat index, so in_flat = rest * nl + z.
  std::vector<int> rest_in_radix(sc.inputs().begin(), sc.inputs().end() - 1);
  std::vector<int> rest_out_radix(sc.outputs().begin(), sc.outputs().end() - 1);
  std::span<const double> coeffs = m.coeffs();

  struct Scratch {
    std::vector<int> digits;
    std::vector<int> answers;
    std::vector<double> partial;
  };
  // Sums over the leading parties' inputs for each (last input, last output).
  auto fill_partial = [&](Index prefix, Scratch& s) {
    s.digits.resize(radix.size());
    unflatten(prefix, radix, s.digits);
    s.answers.resize(rest_in_radix.size());
    s.partial.assign(std::size_t(nl) * kl, 0.0);
    Index rest_flat = 0;
    std::vector<int> rest = zero_tuple(rest_in_radix.size());
    do {
      Index digit_base = 0;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        s.answers[i] = s.digits[digit_base + rest[i]];
        digit_base += rest_in_radix[i];
      }
      const Index a_rest = rest.empty() ? 0 : flat_index(s.answers, rest_out_radix);
      for (int z = 0; z < nl; ++z) {
        const Index base = ((rest_flat * nl + z) * sc.output_tuples()) + a_rest * kl;
        double* p = s.partial.data() + std::size_t(z) * kl;
        for (int c = 0; c < kl; ++c) p[c] += coeffs[base + c];
      }
      ++rest_flat;
    } while (next_tuple(rest, rest_in_radix));
  };

  auto candidate_value = [&](const Scratch& s, double& sum_max, double& sum_min) {
    sum_max = 0.0;
    sum_min = 0.0;
    for (int z = 0; z < nl; ++z) {
      const double* p = s.partial.data() + std::size_t(z) * kl;
      double hi = p[0], lo = p[0];
      for (int c = 1; c < kl; ++c) {
        hi = std::max(hi, p[c]);
        lo = std::min(lo, p[c]);
      }
      sum_max += hi;
      sum_min += lo;
    }
  };

  const Best best = best_over(prefix_count, options.threads, [&] {
    return [&, s = Scratch{}](Index prefix) mutable {
      fill_partial(prefix, s);
      double sum_max, sum_min;
      candidate_value(s, sum_max, sum_min);
      return game ? sum_max : std::max(sum_max, -sum_min);
    };
  });

  // Rebuild the winning strategy: leading parties from the prefix digits,
  // last party by per-input argmax (argmin when the negated branch won;
  // ties to the max branch, then to the lowest output).
  Scratch s;
  fill_partial(best.index, s);
  double sum_max, sum_min;
  candidate_value(s, sum_max, sum_min);
  const bool maximize = game || sum_max >= -sum_min;

  std::vector<std::vector<int>> assignment(k);
  Index digit_base = 0;
  for (int i = 0; i + 1 < k; ++i) {
    assignment[i].resize(sc.input_count(i));
    for (int x = 0; x < sc.input_count(i); ++x) {
      assignment[i][x] = s.digits[digit_base + x];
    }
    digit_base += sc.input_count(i);
  }
  assignment[last].resize(nl);
  for (int z = 0; z < nl; ++z) {
    const double* p = s.partial.data() + std::size_t(z) * kl;
    int pick = 0;
    for (int c = 1; c < kl; ++c) {
      const bool better = maximize ? p[c] > p[pick] : p[c] < p[pick];
      if (better) pick = c;
    }
    assignment[last][z] = pick;
  }

  DeterministicStrategy strategy(sc, std::move(assignment));
  Certificate cert;
  cert.behaviour = behaviour_from_deterministic(strategy);
  cert.strategy = std::move(strategy);
  return make_report(m, ValueClass::kLocal, best.value, "enumeration",
                     std::move(cert));
}

ValueReport bilocal_value_general(const BellFunctional& m,
                                  const SolveOptions& options) {
  require_tripartite(m, "bilocal_value_general");
  if (m.kind() == FunctionalKind::kCorrelation) {
    throw UnsupportedError(
        "bilocal_value_general handles games; correlation functionals go "
        "through bilocal_correlation_value");
  }
  for (double v : m.coeffs()) {
    if (v < 0.0) {
      throw DomainError(
          "bilocal_value_general needs non-negative coefficients: the "
          "merged-pair reduction to per-input best responses is justified "
          "for games only");
    }
  }

  const Scenario& sc = m.scenario();
  const Index ot = sc.output_tuples();
  double total_scans = 0.0;
  for (const Partition& part : Partition::all_tripartite()) {
    total_scans += std::pow(double(sc.output_count(part.lone)),
                            double(sc.input_count(part.lone))) *
                   double(sc.input_tuples()) * double(ot) /
                   sc.output_count(part.lone);
  }
  check_budget(total_scans, "3 * K_lone^{N_lone} * N^3 * K^2", options.budget);

  double best_value = -1.0;
  Partition best_part = Partition::around_lone(2);
  Index best_lone = 0;

  std::vector<int> x_full(3), a_full(3);
  for (const Partition& part : Partition::all_tripartite()) {
    const int L = part.lone;
    const int pi = part.merged[0], pj = part.merged[1];
    const int nL = sc.input_count(L), kL = sc.output_count(L);
    const Index lone_count =
        static_cast<Index>(std::pow(double(kL), double(nL)));
    const std::vector<int> lone_radix(nL, kL);

    const Best best = best_over(lone_count, options.threads, [&, L, pi, pj] {
      return [&, L, pi, pj, r = std::vector<int>(nL),
              x = std::vector<int>(3), a = std::vector<int>(3)](Index flat) mutable {
        unflatten(flat, lone_radix, r);
        double total = 0.0;
        for (int xi = 0; xi < sc.input_count(pi); ++xi) {
          x[pi] = xi;
          for (int xj = 0; xj < sc.input_count(pj); ++xj) {
            x[pj] = xj;
            double best_pair = 0.0;
            for (int ai = 0; ai < sc.output_count(pi); ++ai) {
              a[pi] = ai;
              for (int aj = 0; aj < sc.output_count(pj); ++aj) {
                a[pj] = aj;
                double sum = 0.0;
                for (int xl = 0; xl < sc.input_count(L); ++xl) {
                  x[L] = xl;
                  a[L] = r[xl];
                  sum += m.coeffs()[flat_index(x, sc.inputs()) * ot +
                                    flat_index(a, sc.outputs())];
                }
                best_pair = std::max(best_pair, sum);
              }
            }
            total += best_pair;
          }
        }
        return total;
      };
    });
    if (best.value > best_value) {
      best_value = best.value;
      best_part = part;
      best_lone = best.index;
    }
  }

  // Rebuild: lone responses plus the merged pair's per-input argmax, packed
  // into a deterministic (but cross-pair correlated) behaviour table.
  const int L = best_part.lone;
  const int pi = best_part.merged[0], pj = best_part.merged[1];
  std::vector<int> r(sc.input_count(L));
  unflatten(best_lone, std::vector<int>(sc.input_count(L), sc.output_count(L)), r);

  std::vector<double> table(sc.input_tuples() * ot, 0.0);
  for (int xi = 0; xi < sc.input_count(pi); ++xi) {
    for (int xj = 0; xj < sc.input_count(pj); ++xj) {
      // argmax over the pair's joint answers, summed over the lone input
      int best_ai = 0, best_aj = 0;
      double best_sum = -std::numeric_limits<double>::infinity();
      for (int ai = 0; ai < sc.output_count(pi); ++ai) {
        for (int aj = 0; aj < sc.output_count(pj); ++aj) {
          double sum = 0.0;
          for (int xl = 0; xl < sc.input_count(L); ++xl) {
            x_full[pi] = xi; x_full[pj] = xj; x_full[L] = xl;
            a_full[pi] = ai; a_full[pj] = aj; a_full[L] = r[xl];
            sum += m.coeffs()[flat_index(x_full, sc.inputs()) * ot +
                              flat_index(a_full, sc.outputs())];
          }
          if (sum > best_sum) {
            best_sum = sum;
            best_ai = ai;
            best_aj = aj;
          }
        }
      }
      for (int xl = 0; xl < sc.input_count(L); ++xl) {
        x_full[pi] = xi; x_full[pj] = xj; x_full[L] = xl;
        a_full[pi] = best_ai; a_full[pj] = best_aj; a_full[L] = r[xl];
        table[flat_index(x_full, sc.inputs()) * ot +
              flat_index(a_full, sc.outputs())] = 1.0;
      }
    }
  }

  Certificate cert;
  cert.behaviour = Behaviour(sc, std::move(table));
  cert.partition = best_part;
  return make_report(m, ValueClass::kBilocalGeneral, best_value, "enumeration",
                     std::move(cert));
}

ValueReport ns_value(const BellFunctional& m, const SolveOptions& options) {
  if (m.kind() == FunctionalKind::kCorrelation) {
    throw UnsupportedError(
        "ns_value handles games and general functionals; correlation "
        "functionals go through ns_correlation_value");
  }
  const Scenario& sc = m.scenario();
  if (sc.parties() != 2 && sc.parties() != 3) {
    throw UnsupportedError("ns_value supports 2 or 3 parties");
  }

  linprog::LinearProgram p = ns_polytope_program(sc);
  check_budget(double(p.variables) * double(p.rows()), "LP variables * rows",
               options.budget);

  std::vector<double> objective(m.coeffs().begin(), m.coeffs().end());
  auto [value, point] = solve_ns_program(p, objective);
  if (m.kind() != FunctionalKind::kGame) {
    for (double& c : objective) c = -c;
    auto [neg_value, neg_point] = solve_ns_program(p, objective);
    if (neg_value > value) {
      value = neg_value;
      point = std::move(neg_point);
    }
  }

  Certificate cert;
  cert.behaviour = Behaviour(sc, std::move(point));
  const double witnessed = std::abs(evaluate(m, *cert.behaviour));
  if (std::abs(witnessed - value) > 1e-9) {
    throw ValidationError("LP optimum and its witness disagree beyond 1e-9");
  }
  return make_report(m, ValueClass::kNs, witnessed, "lp", std::move(cert));
}

ValueReport bilocal_value_ns(const BellFunctional& m, const SolveOptions& options) {
  require_tripartite(m, "bilocal_value_ns");
  if (m.kind() == FunctionalKind::kCorrelation) {
    throw UnsupportedError(
        "bilocal_value_ns handles games and general functionals; use "
        "bilocal_correlation_value or embed the functional first");
  }
  const Scenario& sc = m.scenario();
  const Index ot = sc.output_tuples();
  const bool game = m.kind() == FunctionalKind::kGame;

  double best_value = -1.0;
  std::optional<Partition> best_part;
  std::vector<double> best_point;
  std::vector<int> best_r;

  double total_scans = 0.0;
  for (const Partition& part : Partition::all_tripartite()) {
    const Scenario pair({sc.input_count(part.merged[0]), sc.input_count(part.merged[1])},
                        {sc.output_count(part.merged[0]), sc.output_count(part.merged[1])});
    const double lp_size = double(pair.input_tuples() * pair.output_tuples());
    total_scans += std::pow(double(sc.output_count(part.lone)),
                            double(sc.input_count(part.lone))) *
                   lp_size * lp_size;  // proxy for simplex work per strategy
  }
  check_budget(total_scans, "3 * K_lone^{N_lone} * LP(vars^2)", options.budget);

  std::vector<int> x_full(3), a_full(3);
  for (const Partition& part : Partition::all_tripartite()) {
    const int L = part.lone;
    const int pi = part.merged[0], pj = part.merged[1];
    const Scenario pair({sc.input_count(pi), sc.input_count(pj)},
                        {sc.output_count(pi), sc.output_count(pj)});
    linprog::LinearProgram program = ns_polytope_program(pair);
    const Index pair_ot = pair.output_tuples();

    const int nL = sc.input_count(L), kL = sc.output_count(L);
    const Index lone_count = static_cast<Index>(std::pow(double(kL), double(nL)));
    const std::vector<int> lone_radix(nL, kL);
    std::vector<int> r(nL);
    std::vector<double> folded(pair.input_tuples() * pair_ot);

    for (Index flat = 0; flat < lone_count; ++flat) {
      unflatten(flat, lone_radix, r);
      std::fill(folded.begin(), folded.end(), 0.0);
      for (int xi = 0; xi < sc.input_count(pi); ++xi)
        for (int xj = 0; xj < sc.input_count(pj); ++xj)
          for (int ai = 0; ai < sc.output_count(pi); ++ai)
            for (int aj = 0; aj < sc.output_count(pj); ++aj) {
              double sum = 0.0;
              for (int xl = 0; xl < nL; ++xl) {
                x_full[pi] = xi; x_full[pj] = xj; x_full[L] = xl;
                a_full[pi] = ai; a_full[pj] = aj; a_full[L] = r[xl];
                sum += m.coeffs()[flat_index(x_full, sc.inputs()) * ot +
                                  flat_index(a_full, sc.outputs())];
              }
              folded[(Index(xi) * pair.input_count(1) + xj) * pair_ot +
                     Index(ai) * pair.output_count(1) + aj] = sum;
            }

      auto [value, point] = solve_ns_program(program, folded);
      if (!game) {
        std::vector<double> negated(folded);
        for (double& c : negated) c = -c;
        auto [neg_value, neg_point] = solve_ns_program(program, negated);
        if (neg_value > value) {
          value = neg_value;
          point = std::move(neg_point);
        }
      }
      if (value > best_value) {
        best_value = value;
        best_part = part;
        best_point = std::move(point);
        best_r = r;
      }
    }
  }

  // Full-scenario witness: NS pair behaviour times the lone deterministic
  // response.
  const int L = best_part->lone;
  const int pi = best_part->merged[0], pj = best_part->merged[1];
  const Index pair_ot = Index(sc.output_count(pi)) * sc.output_count(pj);
  std::vector<double> table(sc.input_tuples() * ot, 0.0);
  for (Index x = 0; x < sc.input_tuples(); ++x) {
    unflatten(x, sc.inputs(), x_full);
    for (Index a = 0; a < ot; ++a) {
      unflatten(a, sc.outputs(), a_full);
      if (a_full[L] != best_r[x_full[L]]) continue;
      const Index pair_idx =
          (Index(x_full[pi]) * sc.input_count(pj) + x_full[pj]) * pair_ot +
          Index(a_full[pi]) * sc.output_count(pj) + a_full[pj];
      table[x * ot + a] = best_point[pair_idx];
    }
  }

  Certificate cert;
  cert.behaviour = Behaviour(sc, std::move(table));
  cert.partition = *best_part;
  const double witnessed = std::abs(evaluate(m, *cert.behaviour));
  if (std::abs(witnessed - best_value) > 1e-9) {
    throw ValidationError("LP optimum and its witness disagree beyond 1e-9");
  }
  return make_report(m, ValueClass::kBilocalNs, witnessed, "lp", std::move(cert));
}

ValueReport local_correlation_value(const BellFunctional& m,
                                    const SolveOptions& options) {
  if (m.kind() != FunctionalKind::kCorrelation) {
    throw UnsupportedError("local_correlation_value needs a correlation functional");
  }
  const Scenario& sc = m.scenario();
  const int k = sc.parties();
  const int last = k - 1;
  const int nl = sc.input_count(last);

  const std::vector<int> radix = prefix_radix(sc);
  const double prefixes = product_of(radix);
  check_budget(prefixes * double(sc.input_tuples()), "2^{N*(k-1)}",
               options.budget);
  const Index prefix_count = static_cast<Index>(prefixes);

  std::vector<int> rest_radix(sc.inputs().begin(), sc.inputs().end() - 1);

  struct Scratch {
    std::vector<int> digits;
    std::vector<double> partial;
  };
  auto fill_partial = [&](Index prefix, Scratch& s) {
    s.digits.resize(radix.size());
    unflatten(prefix, radix, s.digits);
    s.partial.assign(nl, 0.0);
    std::vector<int> rest = zero_tuple(rest_radix.size());
    Index rest_flat = 0;
    do {
      int sign = 1;
      Index digit_base = 0;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        sign *= output_sign(s.digits[digit_base + rest[i]]);
        digit_base += rest_radix[i];
      }
      for (int z = 0; z < nl; ++z) {
        s.partial[z] += sign * m.correlation_coeff(rest_flat * nl + z);
      }
      ++rest_flat;
    } while (next_tuple(rest, rest_radix));
  };

  const Best best = best_over(prefix_count, options.threads, [&] {
    return [&, s = Scratch{}](Index prefix) mutable {
      fill_partial(prefix, s);
      double total = 0.0;
      for (double v : s.partial) total += std::abs(v);
      return total;
    };
  });

  Scratch s;
  fill_partial(best.index, s);
  std::vector<std::vector<int>> assignment(k);
  Index digit_base = 0;
  for (int i = 0; i + 1 < k; ++i) {
    assignment[i].assign(s.digits.begin() + digit_base,
                         s.digits.begin() + digit_base + sc.input_count(i));
    digit_base += sc.input_count(i);
  }
  assignment[last].resize(nl);
  for (int z = 0; z < nl; ++z) {
    assignment[last][z] = s.partial[z] >= 0.0 ? 0 : 1;  // sign of the partial sum
  }

  DeterministicStrategy strategy(sc, std::move(assignment));
  Certificate cert;
  cert.behaviour = behaviour_from_deterministic(strategy);
  cert.correlation = correlation_from_behaviour(*cert.behaviour);
  cert.strategy = std::move(strategy);
  return make_report(m, ValueClass::kLocalCor, best.value, "enumeration",
                     std::move(cert));
}

ValueReport ns_correlation_value(const BellFunctional& m) {
  if (m.kind() != FunctionalKind::kCorrelation) {
    throw UnsupportedError("ns_correlation_value needs a correlation functional");
  }
  const Scenario& sc = m.scenario();
  double total = 0.0;
  std::vector<double> gamma(sc.input_tuples());
  for (Index x = 0; x < sc.input_tuples(); ++x) {
    const double v = m.correlation_coeff(x);
    total += std::abs(v);
    gamma[x] = v >= 0.0 ? 1.0 : -1.0;
  }
  Certificate cert;
  cert.correlation = Correlation(sc, std::move(gamma));
  cert.behaviour = behaviour_from_correlation(*cert.correlation);
  return make_report(m, ValueClass::kNsCor, total, "closed-form", std::move(cert));
}

ValueReport bilocal_correlation_value(const BellFunctional& m,
                                      const SolveOptions& options) {
  require_tripartite(m, "bilocal_correlation_value");
  if (m.kind() != FunctionalKind::kCorrelation) {
    throw UnsupportedError("bilocal_correlation_value needs a correlation functional");
  }
  const Scenario& sc = m.scenario();

  double total_scans = 0.0;
  for (const Partition& part : Partition::all_tripartite()) {
    total_scans +=
        std::pow(2.0, sc.input_count(part.lone)) * double(sc.input_tuples());
  }
  check_budget(total_scans, "3 * 2^{N_lone} * N^3", options.budget);

  double best_value = -1.0;
  Partition best_part = Partition::around_lone(2);
  Index best_signs = 0;

  std::vector<int> x_full(3);
  for (const Partition& part : Partition::all_tripartite()) {
    const int L = part.lone;
    const int pi = part.merged[0], pj = part.merged[1];
    const int nL = sc.input_count(L);
    const Index sign_count = Index(1) << nL;

    const Best best = best_over(sign_count, options.threads, [&, L, pi, pj, nL] {
      return [&, L, pi, pj, nL, x = std::vector<int>(3)](Index mask) mutable {
        double total = 0.0;
        for (int xi = 0; xi < sc.input_count(pi); ++xi) {
          x[pi] = xi;
          for (int xj = 0; xj < sc.input_count(pj); ++xj) {
            x[pj] = xj;
            double sum = 0.0;
            for (int xl = 0; xl < nL; ++xl) {
              x[L] = xl;
              const double s = (mask >> xl) & 1 ? -1.0 : 1.0;
              sum += s * m.correlation_coeff(flat_index(x, sc.inputs()));
            }
            total += std::abs(sum);
          }
        }
        return total;
      };
    });
    if (best.value > best_value) {
      best_value = best.value;
      best_part = part;
      best_signs = best.index;
    }
  }

  // Witness correlation: lone signs s, merged cube vertex aligned with the
  // folded sums; gamma = alpha(pair) * s(lone) is exactly bilocal.
  const int L = best_part.lone;
  const int pi = best_part.merged[0], pj = best_part.merged[1];
  std::vector<double> gamma(sc.input_tuples(), 0.0);
  for (int xi = 0; xi < sc.input_count(pi); ++xi) {
    for (int xj = 0; xj < sc.input_count(pj); ++xj) {
      x_full[pi] = xi;
      x_full[pj] = xj;
      double sum = 0.0;
      for (int xl = 0; xl < sc.input_count(L); ++xl) {
        x_full[L] = xl;
        const double s = (best_signs >> xl) & 1 ? -1.0 : 1.0;
        sum += s * m.correlation_coeff(flat_index(x_full, sc.inputs()));
      }
      const double alpha = sum >= 0.0 ? 1.0 : -1.0;
      for (int xl = 0; xl < sc.input_count(L); ++xl) {
        x_full[L] = xl;
        const double s = (best_signs >> xl) & 1 ? -1.0 : 1.0;
        gamma[flat_index(x_full, sc.inputs())] = alpha * s;
      }
    }
  }

  Certificate cert;
  cert.partition = best_part;
  cert.correlation = Correlation(sc, std::move(gamma));
  cert.behaviour = behaviour_from_correlation(*cert.correlation);
  return make_report(m, ValueClass::kBilocalCor, best_value, "closed-form",
                     std::move(cert));
}

ValueReport local_value_lower(const BellFunctional& m, int restarts,
                              const SolveOptions& options) {
  if (m.kind() == FunctionalKind::kCorrelation) {
    throw UnsupportedError("local_value_lower handles games and general functionals");
  }
  if (restarts < 1) throw DomainError("local_value_lower needs restarts >= 1");
  const Scenario& sc = m.scenario();
  const int k = sc.parties();
  const Index it = sc.input_tuples();
  const Index ot = sc.output_tuples();
  const bool game = m.kind() == FunctionalKind::kGame;

  // Per-step cost: every (party, input, output) move scans the input tuples
  // containing that input. A generous step cap keeps the budget honest.
  double move_scans = 0.0;
  for (int i = 0; i < k; ++i) {
    move_scans += double(sc.input_count(i)) * sc.output_count(i) *
                  (double(it) / sc.input_count(i));
  }
  const int max_steps = 1000;
  check_budget(double(restarts) * max_steps * move_scans,
               "restarts * steps * N^k * K", options.budget);

  std::vector<int> x_full(k), a_full(k);
  auto value_of = [&](const std::vector<std::vector<int>>& resp) {
    double sum = 0.0;
    std::vector<int> x = zero_tuple(k);
    Index x_flat = 0;
    do {
      for (int i = 0; i < k; ++i) a_full[i] = resp[i][x[i]];
      sum += m.coeffs()[x_flat * ot + flat_index(a_full, sc.outputs())];
      ++x_flat;
    } while (next_tuple(x, sc.inputs()));
    return sum;
  };

  // Signed gain of switching party i's response at input xi to `to`; only
  // the input tuples pinning that input can change.
  auto move_delta = [&](const std::vector<std::vector<int>>& resp, int party,
                        int xi, int to) {
    std::vector<int> others_radix;
    std::vector<int> others;
    for (int i = 0; i < k; ++i) {
      if (i == party) continue;
      others.push_back(i);
      others_radix.push_back(sc.input_count(i));
    }
    double delta = 0.0;
    x_full[party] = xi;
    std::vector<int> xo = zero_tuple(others.size());
    do {
      for (std::size_t i = 0; i < others.size(); ++i) x_full[others[i]] = xo[i];
      for (int i = 0; i < k; ++i) a_full[i] = resp[i][x_full[i]];
      const Index x_flat = flat_index(x_full, sc.inputs());
      const double before = m.coeffs()[x_flat * ot + flat_index(a_full, sc.outputs())];
      a_full[party] = to;
      const double after = m.coeffs()[x_flat * ot + flat_index(a_full, sc.outputs())];
      delta += after - before;
    } while (next_tuple(xo, others_radix));
    return delta;
  };

  double best_value = -1.0;
  std::vector<std::vector<int>> best_resp;
  for (int restart = 0; restart < restarts; ++restart) {
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ (0x100000001b3ull * restart));
    std::vector<std::vector<int>> resp(k);
    for (int i = 0; i < k; ++i) {
      resp[i].resize(sc.input_count(i));
      for (int& v : resp[i]) {
        v = static_cast<int>(rng() % Index(sc.output_count(i)));
      }
    }
    double value = value_of(resp);
    for (int step = 0; step < max_steps; ++step) {
      int move_party = -1, move_input = 0, move_to = 0;
      double move_gain = 1e-12;
      for (int i = 0; i < k; ++i) {
        for (int xi = 0; xi < sc.input_count(i); ++xi) {
          for (int to = 0; to < sc.output_count(i); ++to) {
            if (to == resp[i][xi]) continue;
            const double delta = move_delta(resp, i, xi, to);
            const double gain = game ? delta : std::abs(value + delta) - std::abs(value);
            if (gain > move_gain) {
              move_gain = gain;
              move_party = i;
              move_input = xi;
              move_to = to;
            }
          }
        }
      }
      if (move_party < 0) break;
      value += move_delta(resp, move_party, move_input, move_to);
      resp[move_party][move_input] = move_to;
    }
    const double score = game ? value : std::abs(value);
    if (score > best_value) {
      best_value = score;
      best_resp = resp;
    }
  }

  DeterministicStrategy strategy(sc, std::move(best_resp));
  Certificate cert;
  cert.behaviour = behaviour_from_deterministic(strategy);
  cert.strategy = std::move(strategy);
  ValueReport report = make_report(m, ValueClass::kLocal, best_value,
                                   "hill-climb", std::move(cert));
  report.is_bound = true;
  report.bound_kind = "lower";
  return report;
}

ValueReport ns_value_upper(const BellFunctional& m) {
  if (m.kind() == FunctionalKind::kCorrelation) {
    return ns_correlation_value(m);  // exact there, no bound needed
  }
  const Scenario& sc = m.scenario();
  const Index ot = sc.output_tuples();
  double total = 0.0;
  for (Index x = 0; x < sc.input_tuples(); ++x) {
    double best = 0.0;
    for (Index a = 0; a < ot; ++a) {
      best = std::max(best, std::abs(m.coeff(x, a)));
    }
    total += best;
  }
  ValueReport report =
      make_report(m, ValueClass::kNs, total, "sum-max", Certificate{});
  report.is_bound = true;
  report.bound_kind = "upper";
  return report;
}

LVReport lv_ratio(const ValueReport& numerator, const ValueReport& denominator) {
  LVReport report;
  report.functional_id = numerator.functional_id;
  report.numerator = numerator;
  report.denominator = denominator;
  if (denominator.value > 0.0) {
    report.ratio = numerator.value / denominator.value;
  } else if (numerator.value > 0.0) {
    report.ratio = std::numeric_limits<double>::infinity();
  } else {
    report.ratio = 0.0;  // degenerate 0/0; flagged by callers that care
  }
  return report;
}

}  // namespace bellgap::solvers
