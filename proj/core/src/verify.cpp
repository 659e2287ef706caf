#include "bellgap/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <utility>

#include "bellgap/correlation.hpp"
#include "bellgap/errors.hpp"
#include "bellgap/games.hpp"
#include "bellgap/quantum.hpp"
#include "bellgap/valuation.hpp"

namespace bellgap::verify {
namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

BellFunctional random_correlation_functional(std::mt19937_64& rng, int parties,
                                             int n_inputs) {
  const Scenario sc = Scenario::uniform(parties, n_inputs, 2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> coeffs(sc.input_tuples());
  for (double& c : coeffs) c = unit(rng);
  return BellFunctional(sc, FunctionalKind::kCorrelation, std::move(coeffs));
}

// Random game with per-input maxima summing to exactly 1, so it always
// passes check_normalization.
BellFunctional random_game(std::mt19937_64& rng, int parties, int n_inputs,
                           int n_outputs) {
  const Scenario sc = Scenario::uniform(parties, n_inputs, n_outputs);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index ot = sc.output_tuples();
  std::vector<double> coeffs(sc.input_tuples() * ot);
  for (double& c : coeffs) c = unit(rng);
  double max_sum = 0.0;
  for (Index x = 0; x < sc.input_tuples(); ++x) {
    double m = 0.0;
    for (Index a = 0; a < ot; ++a) m = std::max(m, coeffs[x * ot + a]);
    max_sum += m;
  }
  for (double& c : coeffs) c /= max_sum;
  return BellFunctional(sc, FunctionalKind::kGame, std::move(coeffs));
}

// Random valid strategy: Gaussian state, POVMs E_i = S^{-1/2} A_i S^{-1/2}
// from random PSD parts A_i (the standard way to draw a POVM of any length).
quantum::QuantumStrategy random_strategy(std::mt19937_64& rng,
                                         const Scenario& sc,
                                         const std::vector<int>& dims) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&](int d) {
    quantum::Matrix g(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) g(r, c) = {gauss(rng), gauss(rng)};
    return g;
  };

  quantum::QuantumStrategy qs;
  qs.scenario = sc;
  qs.dims = dims;
  Index total = 1;
  for (int d : dims) total *= Index(d);
  qs.state = quantum::Vector(total);
  for (Index i = 0; i < total; ++i) qs.state[i] = {gauss(rng), gauss(rng)};
  qs.state.normalize();

  qs.povms.resize(sc.parties());
  for (int i = 0; i < sc.parties(); ++i) {
    const int d = dims[i];
    qs.povms[i].resize(sc.input_count(i));
    for (int x = 0; x < sc.input_count(i); ++x) {
      std::vector<quantum::Matrix> parts;
      quantum::Matrix sum = quantum::Matrix::Zero(d, d);
      for (int a = 0; a < sc.output_count(i); ++a) {
        const quantum::Matrix g = random_matrix(d);
        parts.push_back(g * g.adjoint());
        sum += parts.back();
      }
      Eigen::SelfAdjointEigenSolver<quantum::Matrix> eig(sum);
      const quantum::Matrix root =
          eig.eigenvectors() *
          eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
          eig.eigenvectors().adjoint();
      auto& family = qs.povms[i][x];
      for (const quantum::Matrix& a : parts) family.push_back(root * a * root);
    }
  }
  return qs;
}

}  // namespace

CheckResult make_check(std::string name, double lhs, std::string cmp,
                       double rhs, double tol, double seconds) {
  CheckResult c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.cmp = std::move(cmp);
  c.tol = tol;
  c.seconds = seconds;
  if (c.cmp == "<=") {
    c.pass = lhs <= rhs + tol;
  } else if (c.cmp == ">=") {
    c.pass = lhs >= rhs - tol;
  } else if (c.cmp == "~") {
    c.pass = std::abs(lhs - rhs) <= tol;
  } else {
    throw DomainError("unknown comparator: " + c.cmp);
  }
  return c;
}

std::vector<CheckResult> suite_lemma1(const SuiteOptions& options) {
  Timer timer;
  std::mt19937_64 rng(options.rng_seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> n_dist(1, 4);

  double worst_ns = 0.0;
  double worst_roundtrip = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int parties = trial % 2 == 0 ? 2 : 3;
    const Scenario sc = Scenario::uniform(parties, n_dist(rng), 2);
    std::vector<double> table(sc.input_tuples());
    for (double& e : table) e = unit(rng);
    const Correlation gamma(sc, table);

    const Behaviour p = behaviour_from_correlation(gamma);
    worst_ns = std::max(worst_ns, is_non_signalling(p).worst_violation);

    const Correlation back = correlation_from_behaviour(p);
    for (Index x = 0; x < sc.input_tuples(); ++x) {
      worst_roundtrip =
          std::max(worst_roundtrip, std::abs(back.value(x) - gamma.value(x)));
    }
  }
  const double seconds = timer.lap();
  return {
      make_check("lemma1: worst non-signalling violation over 100 tensors",
                 worst_ns, "<=", 1e-9, 0.0, seconds),
      make_check("lemma1: worst correlation roundtrip error over 100 tensors",
                 worst_roundtrip, "<=", 1e-12, 0.0, 0.0),
  };
}

std::vector<CheckResult> suite_prop_bilocal_cor(const SuiteOptions& options) {
  std::vector<CheckResult> checks;
  Timer timer;

  // Hadamard witness at N = 4: the closed forms give 16 for both the NS and
  // the bilocal correlation values.
  const BellFunctional had = games::hadamard_correlation_functional(4);
  const double ns = solvers::ns_correlation_value(had).value;
  checks.push_back(
      make_check("hadamard N=4: ns correlation value = 16", ns, "~", 16.0, 0.0,
                 timer.lap()));
  const double bilocal =
      solvers::bilocal_correlation_value(had, options.solve).value;
  checks.push_back(make_check("hadamard N=4: bilocal correlation value = 16",
                              bilocal, "~", 16.0, 1e-9, timer.lap()));
  const double local =
      solvers::local_correlation_value(had, options.solve).value;
  checks.push_back(make_check(
      "hadamard N=4: bilocal <= sqrt(2N) * local", bilocal, "<=",
      std::sqrt(8.0) * local, 1e-9, timer.lap()));

  // The enumeration formula must agree with the LP on the embedded general
  // functional, and the class chain must be ordered.
  std::mt19937_64 rng(options.rng_seed);
  double worst_gap = 0.0, worst_chain = 0.0;
  std::uniform_int_distribution<int> n_dist(1, 3);
  for (int trial = 0; trial < 5; ++trial) {
    const BellFunctional m = random_correlation_functional(rng, 3, n_dist(rng));
    const double cor = solvers::bilocal_correlation_value(m, options.solve).value;
    const double lp =
        solvers::bilocal_value_ns(embed_correlation_functional(m), options.solve)
            .value;
    worst_gap = std::max(worst_gap, std::abs(cor - lp));
    const double lo = solvers::local_correlation_value(m, options.solve).value;
    const double hi = solvers::ns_correlation_value(m).value;
    worst_chain = std::max(worst_chain, lo - cor);
    worst_chain = std::max(worst_chain, cor - hi);
  }
  checks.push_back(make_check(
      "bilocal-cor equals ns-bilocal of the embedding (5 random tensors)",
      worst_gap, "<=", 1e-7, 0.0, timer.lap()));
  checks.push_back(make_check(
      "local-cor <= bilocal-cor <= ns-cor (5 random tensors)", worst_chain,
      "<=", 0.0, 1e-9, timer.lap()));
  return checks;
}

std::vector<CheckResult> suite_prop_lv(const SuiteOptions& options) {
  std::vector<CheckResult> checks;
  Timer timer;

  // CHSH game: the NS/local ratio is exactly 4/3.
  const BellFunctional chsh = games::chsh_game();
  const auto chsh_local = solvers::local_value(chsh, options.solve);
  const auto chsh_ns = solvers::ns_value(chsh, options.solve);
  checks.push_back(make_check("chsh: ns/local ratio = 4/3",
                              solvers::lv_ratio(chsh_ns, chsh_local).ratio, "~",
                              4.0 / 3.0, 1e-9, timer.lap()));
  checks.push_back(make_check("same class ratio = 1",
                              solvers::lv_ratio(chsh_local, chsh_local).ratio,
                              "~", 1.0, 0.0, timer.lap()));

  // Hadamard witness: bilocal/local violation sqrt(N) at N = 4.
  const BellFunctional had = games::hadamard_correlation_functional(4);
  const auto had_bilocal = solvers::bilocal_correlation_value(had, options.solve);
  const auto had_local = solvers::local_correlation_value(had, options.solve);
  checks.push_back(make_check(
      "hadamard N=4: bilocal-cor/local-cor ratio = 2",
      solvers::lv_ratio(had_bilocal, had_local).ratio, "~", 2.0, 1e-7,
      timer.lap()));

  // Grothendieck cap on the bipartite quantum/local correlation ratio.
  quantum::SeesawOptions seesaw;
  seesaw.seeds = options.seesaw_seeds;
  const BellFunctional chsh_cor = games::chsh_correlation_functional();
  const double q = quantum::correlation_seesaw(chsh_cor, seesaw).value;
  const double local_cor =
      solvers::local_correlation_value(chsh_cor, options.solve).value;
  checks.push_back(make_check("chsh-cor: see-saw <= K_G-upper * local-cor", q,
                              "<=", quantum::kGrothendieckUpper * local_cor,
                              1e-9, timer.lap()));
  return checks;
}

std::vector<CheckResult> suite_thm2(const SuiteOptions& options) {
  std::vector<CheckResult> checks;
  Timer timer;

  const BellFunctional chsh = games::chsh_game();
  const BellFunctional hat = games::hat_construction(chsh);

  const quantum::QuantumStrategy strategy =
      quantum::hat_strategy(quantum::chsh_optimal_strategy());
  const double hat_q = evaluate(hat, quantum::behaviour_of(strategy));
  const double cube = 0.853553 * 0.853553 * 0.853553;
  checks.push_back(make_check("hat(chsh): constructed strategy value = 0.853553^3",
                              hat_q, "~", cube, 1e-6, timer.lap()));

  const double hat_bilocal =
      solvers::bilocal_value_general(hat, options.solve).value;
  checks.push_back(make_check("hat(chsh): bilocal value <= 0.625", hat_bilocal,
                              "<=", 0.625, 1e-9, timer.lap()));

  const double chsh_q =
      compute_value(chsh, solvers::ValueClass::kQuantumLower, options.solve)
          .value;
  const double tensor_local =
      solvers::local_value(games::tensor_product(chsh, chsh), options.solve)
          .value;
  checks.push_back(make_check(
      "hat(chsh): quantum/bilocal ratio >= quantum(chsh)^3 / local(chsh x chsh)",
      hat_q / hat_bilocal, ">=",
      chsh_q * chsh_q * chsh_q / tensor_local, 1e-6, timer.lap()));
  return checks;
}

std::vector<CheckResult> suite_lemmas_dk(const SuiteOptions& options) {
  std::vector<CheckResult> checks;
  Timer timer;

  const BellFunctional hat = games::hat_construction(games::chsh_game());
  const quantum::QuantumStrategy strategy =
      quantum::hat_strategy(quantum::chsh_optimal_strategy());
  const double value = evaluate(hat, quantum::behaviour_of(strategy));
  const double bilocal = solvers::bilocal_value_general(hat, options.solve).value;
  const int d_min = *std::min_element(strategy.dims.begin(), strategy.dims.end());
  int k_min = hat.scenario().output_count(0);
  for (int i = 1; i < hat.scenario().parties(); ++i) {
    k_min = std::min(k_min, hat.scenario().output_count(i));
  }
  checks.push_back(make_check("hat(chsh): value <= min-dim * bilocal", value,
                              "<=", d_min * bilocal, 1e-9, timer.lap()));
  checks.push_back(make_check("hat(chsh): value <= min-outputs * bilocal",
                              value, "<=", k_min * bilocal, 1e-9, timer.lap()));

  std::mt19937_64 rng(options.rng_seed);
  std::uniform_int_distribution<int> n_dist(1, 2), k_dist(2, 3), d_dist(1, 3);
  int dim_pass = 0, out_pass = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const BellFunctional g = random_game(rng, 3, n_dist(rng), k_dist(rng));
    const std::vector<int> dims{d_dist(rng), d_dist(rng), d_dist(rng)};
    const quantum::QuantumStrategy qs = random_strategy(rng, g.scenario(), dims);
    dim_pass += quantum::check_dimension_bound(qs, g, options.solve) ? 1 : 0;
    out_pass += quantum::check_output_bound(qs, g, options.solve) ? 1 : 0;
  }
  checks.push_back(make_check("random games: dimension bound holds on all 20",
                              dim_pass, "~", trials, 0.0, timer.lap()));
  checks.push_back(make_check("random games: output bound holds on all 20",
                              out_pass, "~", trials, 0.0, 0.0));
  return checks;
}

std::vector<CheckResult> run_suite(const std::string& name,
                                   const SuiteOptions& options) {
  if (name == "lemma1") return suite_lemma1(options);
  if (name == "prop-bilocal-cor") return suite_prop_bilocal_cor(options);
  if (name == "prop-lv") return suite_prop_lv(options);
  if (name == "thm2") return suite_thm2(options);
  if (name == "lemmas-dk") return suite_lemmas_dk(options);
  if (name == "all") {
    std::vector<CheckResult> all;
    for (const char* suite :
         {"lemma1", "prop-bilocal-cor", "prop-lv", "thm2", "lemmas-dk"}) {
      std::vector<CheckResult> part = run_suite(suite, options);
      all.insert(all.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return all;
  }
  throw DomainError(
      "unknown suite '" + name +
      "'; expected lemma1, prop-bilocal-cor, prop-lv, thm2, lemmas-dk, or all");
}

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

}  // namespace bellgap::verify
