// Acceptance gate: nine release criteria, one printed line each, exit 0 iff
// every criterion passes. Each criterion recomputes its target through an
// oracle implemented in this file (direct enumeration, closed forms, or an
// independent membership check) before trusting the library's number, so a
// library bug and its test cannot share an implementation.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bellgap/behaviour.hpp"
#include "bellgap/correlation.hpp"
#include "bellgap/functional.hpp"
#include "bellgap/games.hpp"
#include "bellgap/multi_index.hpp"
#include "bellgap/quantum.hpp"
#include "bellgap/solvers.hpp"
#include "bellgap/valuation.hpp"

using namespace bellgap;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
  double limit = 0.0;
};

// Appends "label=value" pairs to the detail string and tracks failures.
class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_ += (failures_.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& label, double value) {
    std::ostringstream s;
    s << (notes_.empty() ? "" : ", ") << label << "=" << value;
    notes_ += s.str();
  }
  bool pass() const { return pass_; }
  std::string detail() const {
    if (pass_) return notes_;
    return "FAILED: " + failures_ + (notes_.empty() ? "" : " (" + notes_ + ")");
  }

 private:
  bool pass_ = true;
  std::string notes_;
  std::string failures_;
};

// ---------------------------------------------------------------------------
// Independent oracles.

// Worst marginal-independence violation over every strict non-empty party
// subset, written directly against the probability table.
double ns_violation_oracle(const Behaviour& p) {
  const Scenario& s = p.scenario();
  const int k = s.parties();
  const Index xt = s.input_tuples();
  const Index ot = s.output_tuples();
  std::vector<int> x(k), a(k);
  double worst = 0.0;
  for (int mask = 1; mask < (1 << k) - 1; ++mask) {
    // Alphabets of the subset (kept parties) and its complement.
    std::vector<int> sub_in, sub_out, rest_in;
    for (int i = 0; i < k; ++i) {
      if (mask & (1 << i)) {
        sub_in.push_back(s.input_count(i));
        sub_out.push_back(s.output_count(i));
      } else {
        rest_in.push_back(s.input_count(i));
      }
    }
    const Index nsub_in = tuple_count(sub_in);
    const Index nsub_out = tuple_count(sub_out);
    const Index nrest_in = tuple_count(rest_in);
    // marg[(x_S, a_S)][x_rest] = sum over complement outputs of P(a|x).
    std::vector<double> marg(nsub_in * nsub_out * nrest_in, 0.0);
    for (Index xf = 0; xf < xt; ++xf) {
      unflatten(xf, s.inputs(), x);
      std::vector<int> xs, xr;
      for (int i = 0; i < k; ++i) ((mask >> i) & 1 ? xs : xr).push_back(x[i]);
      const Index xsf = flat_index(xs, sub_in);
      const Index xrf = flat_index(xr, rest_in);
      for (Index af = 0; af < ot; ++af) {
        unflatten(af, s.outputs(), a);
        std::vector<int> as;
        for (int i = 0; i < k; ++i) {
          if ((mask >> i) & 1) as.push_back(a[i]);
        }
        const Index asf = flat_index(as, sub_out);
        marg[(xsf * nsub_out + asf) * nrest_in + xrf] += p.prob(xf, af);
      }
    }
    for (Index cell = 0; cell < nsub_in * nsub_out; ++cell) {
      for (Index r = 1; r < nrest_in; ++r) {
        worst = std::max(worst, std::abs(marg[cell * nrest_in + r] -
                                         marg[cell * nrest_in]));
      }
    }
  }
  return worst;
}

// gamma_x = sum_a prod_i sign(a_i) P(a|x), straight off the table.
double roundtrip_violation_oracle(const Behaviour& p, const Correlation& c) {
  const Scenario& s = p.scenario();
  std::vector<int> a(s.parties());
  double worst = 0.0;
  for (Index xf = 0; xf < s.input_tuples(); ++xf) {
    double gamma = 0.0;
    for (Index af = 0; af < s.output_tuples(); ++af) {
      unflatten(af, s.outputs(), a);
      int sign = 1;
      for (int ai : a) sign *= output_sign(ai);
      gamma += sign * p.prob(xf, af);
    }
    worst = std::max(worst, std::abs(gamma - c.value(xf)));
  }
  return worst;
}

// Exact bipartite local value by full enumeration of both players'
// deterministic assignments (outputs^inputs each).
double bipartite_brute_force(const BellFunctional& g) {
  const Scenario& s = g.scenario();
  const int nx = s.input_count(0), ny = s.input_count(1);
  const int ka = s.output_count(0), kb = s.output_count(1);
  std::vector<int> f(nx, 0), h(ny, 0);
  const std::vector<int> fr(nx, ka), hr(ny, kb);
  double best = 0.0;
  do {
    std::fill(h.begin(), h.end(), 0);
    do {
      double v = 0.0;
      for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) {
          v += g.coeff(static_cast<Index>(x) * ny + y,
                       static_cast<Index>(f[x]) * kb + h[y]);
        }
      }
      best = std::max(best, v);
    } while (next_tuple(h, hr));
  } while (next_tuple(f, fr));
  return best;
}

// Bipartite local value with the second player folded into a per-input best
// response; enumerates only the first player's assignments.
double bipartite_best_response(const BellFunctional& g) {
  const Scenario& s = g.scenario();
  const int nx = s.input_count(0), ny = s.input_count(1);
  const int ka = s.output_count(0), kb = s.output_count(1);
  std::vector<int> f(nx, 0);
  const std::vector<int> fr(nx, ka);
  double best = 0.0;
  do {
    double v = 0.0;
    for (int y = 0; y < ny; ++y) {
      double row = 0.0;
      for (int b = 0; b < kb; ++b) {
        double cand = 0.0;
        for (int x = 0; x < nx; ++x) {
          cand += g.coeff(static_cast<Index>(x) * ny + y,
                          static_cast<Index>(f[x]) * kb + b);
        }
        row = std::max(row, cand);
      }
      v += row;
    }
    best = std::max(best, v);
  } while (next_tuple(f, fr));
  return best;
}

// Exact local value of a correlation functional by enumerating every
// per-party sign assignment.
double correlation_brute_force(const BellFunctional& m) {
  const Scenario& s = m.scenario();
  const int k = s.parties();
  std::vector<int> radix;
  for (int i = 0; i < k; ++i) radix.push_back(1 << s.input_count(i));
  std::vector<int> pattern(k, 0);
  std::vector<int> x(k);
  double best = 0.0;
  do {
    double v = 0.0;
    for (Index xf = 0; xf < s.input_tuples(); ++xf) {
      unflatten(xf, s.inputs(), x);
      int sign = 1;
      for (int i = 0; i < k; ++i) sign *= ((pattern[i] >> x[i]) & 1) ? -1 : 1;
      v += sign * m.correlation_coeff(xf);
    }
    best = std::max(best, std::abs(v));
  } while (next_tuple(pattern, radix));
  return best;
}

// Random game with coefficients scaled so that sum_x max_a = 1.
BellFunctional random_game(std::mt19937_64& rng, const Scenario& s) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> coeffs(s.input_tuples() * s.output_tuples());
  for (double& c : coeffs) c = coin(rng);
  double norm = 0.0;
  for (Index x = 0; x < s.input_tuples(); ++x) {
    double row = 0.0;
    for (Index a = 0; a < s.output_tuples(); ++a) {
      row = std::max(row, coeffs[x * s.output_tuples() + a]);
    }
    norm += row;
  }
  for (double& c : coeffs) c /= norm;
  return BellFunctional(s, FunctionalKind::kGame, std::move(coeffs));
}

// Random valid quantum strategy: Gaussian state, POVMs from a symmetrized
// Gram construction E_i = S^{-1/2} A_i S^{-1/2} with A_i = G_i G_i^dagger.
quantum::QuantumStrategy random_strategy(std::mt19937_64& rng,
                                         const Scenario& s,
                                         const std::vector<int>& dims) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto random_matrix = [&](int d) {
    quantum::Matrix g(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) g(r, c) = {gauss(rng), gauss(rng)};
    }
    return g;
  };

  quantum::QuantumStrategy qs;
  qs.scenario = s;
  qs.dims = dims;
  Index total = 1;
  for (int d : dims) total *= static_cast<Index>(d);
  qs.state.resize(static_cast<Eigen::Index>(total));
  for (Eigen::Index i = 0; i < qs.state.size(); ++i) {
    qs.state[i] = {gauss(rng), gauss(rng)};
  }
  qs.state.normalize();

  qs.povms.resize(static_cast<std::size_t>(s.parties()));
  for (int party = 0; party < s.parties(); ++party) {
    const int d = dims[static_cast<std::size_t>(party)];
    auto& per_input = qs.povms[static_cast<std::size_t>(party)];
    per_input.resize(static_cast<std::size_t>(s.input_count(party)));
    for (auto& family : per_input) {
      std::vector<quantum::Matrix> raw;
      quantum::Matrix sum = quantum::Matrix::Zero(d, d);
      for (int o = 0; o < s.output_count(party); ++o) {
        quantum::Matrix g = random_matrix(d);
        quantum::Matrix a = g * g.adjoint() +
                            1e-6 * quantum::Matrix::Identity(d, d);
        sum += a;
        raw.push_back(std::move(a));
      }
      Eigen::SelfAdjointEigenSolver<quantum::Matrix> es(sum);
      const quantum::Matrix inv_sqrt =
          es.eigenvectors() *
          es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
          es.eigenvectors().adjoint();
      family.clear();
      for (auto& a : raw) family.push_back(inv_sqrt * a * inv_sqrt);
    }
  }
  return qs;
}

// ---------------------------------------------------------------------------
// Criteria.

Outcome criterion1() {
  Criterion c;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> coin(-1.0, 1.0);
  std::uniform_int_distribution<int> pick_inputs(1, 4);
  double worst_ns = 0.0, worst_rt = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int parties = trial % 2 == 0 ? 2 : 3;
    const Scenario s = Scenario::uniform(parties, pick_inputs(rng), 2);
    std::vector<double> gamma(s.input_tuples());
    for (double& g : gamma) g = coin(rng);
    const Correlation cor(s, gamma);
    const Behaviour p = behaviour_from_correlation(cor);
    worst_ns = std::max(worst_ns, ns_violation_oracle(p));
    worst_rt = std::max(worst_rt, roundtrip_violation_oracle(p, cor));
    c.require(is_non_signalling(p).non_signalling,
              "library NS check rejected a box witness");
  }
  c.require(worst_ns <= 1e-9, "oracle found a signalling box witness");
  c.require(worst_rt <= 1e-12, "correlation round-trip above 1e-12");
  c.note("worst_ns", worst_ns);
  c.note("worst_roundtrip", worst_rt);
  return {c.pass(), c.detail(), 0.0, 5.0};
}

Outcome criterion2() {
  Criterion c;
  const BellFunctional g = games::chsh_game();

  const double local = solvers::local_value(g).value;
  c.require(local == 0.75, "local value is not exactly 0.75");
  c.require(bipartite_brute_force(g) == 0.75,
            "16-strategy oracle disagrees with 0.75");

  const solvers::ValueReport ns = solvers::ns_value(g);
  c.require(std::abs(ns.value - 1.0) <= 1e-9, "ns value differs from 1");
  c.require(ns.certificate.behaviour.has_value() &&
                ns_violation_oracle(*ns.certificate.behaviour) <= 1e-9,
            "ns witness is signalling");

  // Quantum lower bound two ways: the constructed strategy and a
  // best-of-20 see-saw on the correlation form mapped back to the game
  // through omega_game = 1/2 + <M, gamma>/2.
  const double constructed =
      evaluate(g, quantum::behaviour_of(quantum::chsh_optimal_strategy()));
  quantum::SeesawOptions opt;
  opt.seeds = 20;
  const double seesawed =
      0.5 +
      0.5 * quantum::correlation_seesaw(games::chsh_correlation_functional(), opt)
                .value;
  c.require(constructed >= 0.85355 - 1e-4, "constructed strategy below target");
  c.require(seesawed >= 0.85355 - 1e-4, "see-saw bound below target");
  c.note("local", local);
  c.note("ns", ns.value);
  c.note("constructed", constructed);
  c.note("seesaw", seesawed);
  return {c.pass(), c.detail(), 0.0, 10.0};
}

Outcome criterion3() {
  Criterion c;
  const BellFunctional t =
      games::tensor_product(games::chsh_game(), games::chsh_game());
  const double lib = solvers::local_value(t).value;
  const double oracle = bipartite_brute_force(t);  // all 65,536 pairs
  c.require(std::abs(lib - 0.625) <= 1e-12, "library value differs from 0.625");
  c.require(std::abs(oracle - lib) <= 1e-12,
            "brute force disagrees with the best-response enumerator");
  c.note("local", lib);
  c.note("brute_force", oracle);
  return {c.pass(), c.detail(), 0.0, 30.0};
}

Outcome criterion4() {
  Criterion c;
  const BellFunctional g = games::chsh_game();
  const BellFunctional hat = games::hat_construction(g);

  const quantum::QuantumStrategy base = quantum::chsh_optimal_strategy();
  const double strategy_value =
      evaluate(hat, quantum::behaviour_of(quantum::hat_strategy(base)));
  const double target = 0.853553 * 0.853553 * 0.853553;
  c.require(std::abs(strategy_value - target) <= 1e-6,
            "lifted strategy value misses 0.853553^3");

  const double bilocal = solvers::bilocal_value_general(hat).value;
  c.require(bilocal <= 0.625 + 1e-9, "bilocal value exceeds 0.625");

  const double chsh_q = evaluate(g, quantum::behaviour_of(base));
  const double tensor_local =
      solvers::local_value(games::tensor_product(g, g)).value;
  const double lhs = strategy_value / bilocal;
  const double rhs = (chsh_q * chsh_q * chsh_q) / tensor_local;
  c.require(lhs >= rhs - 1e-6, "ratio inequality violated");
  c.note("strategy_value", strategy_value);
  c.note("bilocal", bilocal);
  c.note("ratio_lhs", lhs);
  c.note("ratio_rhs", rhs);
  return {c.pass(), c.detail(), 0.0, 120.0};
}

Outcome criterion5() {
  Criterion c;
  const BellFunctional m = games::hadamard_correlation_functional(4);
  const double ns = solvers::ns_correlation_value(m).value;
  const double bilocal = solvers::bilocal_correlation_value(m).value;
  const double local = solvers::local_correlation_value(m).value;
  const double oracle = correlation_brute_force(m);
  c.require(ns == 16.0, "ns correlation value is not exactly 16");
  c.require(std::abs(bilocal - 16.0) <= 1e-9, "bilocal differs from 16");
  c.require(std::abs(local - oracle) <= 1e-12,
            "local value disagrees with the sign-pattern brute force");
  c.require(bilocal <= std::sqrt(8.0) * local + 1e-9,
            "bilocal exceeds sqrt(8) * local");
  c.note("ns", ns);
  c.note("bilocal", bilocal);
  c.note("local", local);
  return {c.pass(), c.detail(), 0.0, 30.0};
}

Outcome criterion6() {
  Criterion c;
  std::mt19937_64 rng(6006);
  std::uniform_real_distribution<double> coin(-1.0, 1.0);
  std::uniform_int_distribution<int> pick_inputs(1, 3);
  std::uniform_int_distribution<int> pick_dim(2, 4);
  double worst_margin = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const int parties = trial < 50 ? 2 : 3;
    const Scenario s = Scenario::uniform(parties, pick_inputs(rng), 2);
    std::vector<double> coeffs(s.input_tuples());
    for (double& v : coeffs) v = coin(rng);
    const BellFunctional m(s, FunctionalKind::kCorrelation, coeffs);

    quantum::SeesawOptions opt;
    opt.seeds = 4;
    opt.dims.assign(static_cast<std::size_t>(parties), pick_dim(rng));
    opt.rng_seed = 777 + static_cast<std::uint64_t>(trial);
    const double quantum_lower = quantum::correlation_seesaw(m, opt).value;

    const double classical =
        parties == 2 ? solvers::local_correlation_value(m).value
                     : solvers::bilocal_correlation_value(m).value;
    const double cap = 1.7823 * classical;
    worst_margin = std::min(worst_margin, cap - quantum_lower);
    c.require(quantum_lower <= cap + 1e-9,
              "see-saw exceeded the Grothendieck cap on trial " +
                  std::to_string(trial));
  }
  c.note("worst_margin", worst_margin);
  return {c.pass(), c.detail(), 0.0, 300.0};
}

Outcome criterion7() {
  Criterion c;
  for (const double eta : {-1.0, 0.2}) {  // default (= 0 at l = 2) and noisy
    const games::KVParams params{2, eta};
    const BellFunctional g = games::khot_vishnoi(params);
    c.require(games::check_normalization(g), "game normalization failed");

    const double lib_local = solvers::local_value(g).value;
    const double oracle = bipartite_best_response(g);  // 256 x best response
    c.require(std::abs(lib_local - oracle) <= 1e-12,
              "brute force disagrees with the library local value");

    const double ns = solvers::ns_value(g).value;
    c.require(lib_local <= ns + 1e-9, "local exceeds ns");

    const quantum::QuantumStrategy qs = quantum::kv_strategy(params);
    bool valid = true;
    try {
      quantum::validate(qs);
    } catch (const std::exception&) {
      valid = false;
    }
    c.require(valid, "coset strategy failed POVM validation");
    const double qv = evaluate(g, quantum::behaviour_of(qs));
    c.require(qv <= ns + 1e-7, "strategy value exceeds ns");

    const std::string tag = eta < 0 ? "default" : "noisy";
    c.note(tag + "_local", lib_local);
    c.note(tag + "_ns", ns);
    c.note(tag + "_strategy", qv);
  }
  return {c.pass(), c.detail(), 0.0, 300.0};
}

Outcome criterion8() {
  Criterion c;
  const BellFunctional hat = games::hat_construction(games::chsh_game());
  const quantum::QuantumStrategy hs =
      quantum::hat_strategy(quantum::chsh_optimal_strategy());
  c.require(quantum::check_dimension_bound(hs, hat),
            "dimension bound failed on the lifted chsh strategy");
  c.require(quantum::check_output_bound(hs, hat),
            "output bound failed on the lifted chsh strategy");

  std::mt19937_64 rng(8008);
  std::uniform_int_distribution<int> pick_inputs(1, 2);
  std::uniform_int_distribution<int> pick_outputs(2, 3);
  std::uniform_int_distribution<int> pick_dim(1, 3);
  int passed = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario s = Scenario::uniform(3, pick_inputs(rng), pick_outputs(rng));
    const BellFunctional g = random_game(rng, s);
    const std::vector<int> dims{pick_dim(rng), pick_dim(rng), pick_dim(rng)};
    const quantum::QuantumStrategy qs = random_strategy(rng, s, dims);
    if (quantum::check_dimension_bound(qs, g) &&
        quantum::check_output_bound(qs, g)) {
      ++passed;
    }
  }
  c.require(passed == 20, "bounds failed on " + std::to_string(20 - passed) +
                              " of 20 random instances");
  c.note("random_passed", passed);
  return {c.pass(), c.detail(), 0.0, 120.0};
}

Outcome criterion9() {
  Criterion c;
  std::mt19937_64 rng(9009);
  double worst_gap = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const BellFunctional g = random_game(rng, Scenario::uniform(3, 2, 2));
    const double local = solvers::local_value(g).value;
    const double bilocal_ns = solvers::bilocal_value_ns(g).value;
    const double bilocal_general = solvers::bilocal_value_general(g).value;
    const double ns = solvers::ns_value(g).value;
    c.require(local <= bilocal_ns + 1e-7, "local > bilocal-ns");
    c.require(bilocal_ns <= bilocal_general + 1e-7, "bilocal-ns > bilocal-general");
    c.require(local <= ns + 1e-7, "local > ns");
    worst_gap = std::max({worst_gap, local - bilocal_ns,
                          bilocal_ns - bilocal_general, local - ns});
  }
  c.note("worst_violation", worst_gap);
  return {c.pass(), c.detail(), 0.0, 300.0};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"box witnesses stay non-signalling and round-trip", criterion1},
      {"chsh local/ns/quantum values", criterion2},
      {"product game brute force (65,536 pairs)", criterion3},
      {"lifted chsh: strategy value, bilocal cap, ratio", criterion4},
      {"hadamard correlation values at n = 4", criterion5},
      {"grothendieck cap over 100 random functionals", criterion6},
      {"coset game at l = 2: oracles and sandwich", criterion7},
      {"dimension/output bounds on 21 strategies", criterion8},
      {"class chain on 30 random tripartite games", criterion9},
  };

  int passed = 0;
  int index = 0;
  for (const Entry& e : entries) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                start)
                      .count();
    const bool in_time = out.limit == 0.0 || out.seconds < out.limit;
    const bool ok = out.pass && in_time;
    if (ok) ++passed;
    std::printf("[%s] criterion %d: %s — %s [%.2f s%s]\n", ok ? "PASS" : "FAIL",
                index, e.name, out.detail.c_str(), out.seconds,
                in_time ? "" : ", over the runtime limit");
  }
  std::printf("acceptance: %d/9 criteria passed\n", passed);
  return passed == 9 ? 0 : 1;
}
