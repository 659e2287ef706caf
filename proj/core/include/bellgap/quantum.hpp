#pragma once

#include <cstdint>
#include <vector>

#include "bellgap/behaviour.hpp"
#include "bellgap/functional.hpp"
#include "bellgap/games.hpp"
#include "bellgap/quantum_types.hpp"
#include "bellgap/solvers.hpp"
#include "bellgap/strategy.hpp"

namespace bellgap::quantum {

// Known numeric bracket for the real Grothendieck constant; property checks
// use the upper endpoint.
inline constexpr double kGrothendieckLower = 1.676;
inline constexpr double kGrothendieckUpper = 1.7823;

// Throws ValidationError naming the first failed check: state norm within
// 1e-10 of 1, POVM elements PSD within eigenvalue -1e-9, completeness
// within 1e-9 entrywise.
void validate(const QuantumStrategy& qs);

// Throws ValidationError: state norm, self-adjointness within 1e-10,
// spectral norm <= 1 + 1e-9.
void validate(const CorrelationObservables& obs);

// P(a|x) = <psi| E^1_{a_1,x_1} x ... x E^k_{a_k,x_k} |psi>. Validates first.
Behaviour behaviour_of(const QuantumStrategy& qs);

// gamma_x = <psi| A^1_{x_1} x ... x A^k_{x_k} |psi> as a Correlation.
Correlation correlation_of(const CorrelationObservables& obs);

// Two-outcome projective strategy from observables: E_0 = (I + A)/2,
// E_1 = (I - A)/2 per (party, input). Exact when each A has +-1 spectrum;
// otherwise the POVM is still valid for |A| <= I.
QuantumStrategy observables_to_strategy(const CorrelationObservables& obs);

// Dimension-1 strategy reproducing a deterministic behaviour.
QuantumStrategy deterministic_quantum(const DeterministicStrategy& s);

// --- Constructed strategies ----------------------------------------------------

// Maximally entangled 2-qubit state with the rotated-basis projective
// measurements attaining the CHSH optimum (2 + sqrt 2)/4.
QuantumStrategy chsh_optimal_strategy();

// The CHSH observables A_0 = Z, A_1 = X, B_y = (Z +- X)/sqrt 2 on |phi+>,
// attaining sqrt(2)/2 on the +-1/4 correlation functional.
CorrelationObservables chsh_optimal_observables();

// Maximally entangled state of local dimension n = 2^l; for question [u]
// each player measures the orthonormal family of coset vectors
// ((2 u'(i) - 1)/sqrt n)_i, u' running over the coset in the same order as
// the game's answer indexing. The families are exactly complete (distinct
// coset elements differ by a nonzero codeword, which is balanced).
QuantumStrategy kv_strategy(const games::KVParams& params = {});

// Tripartite strategy for the hat construction: state |phi>|phi>|phi> over
// three copies of qs, measurements E = Pi x Pi, F = Lambda x Pi,
// G = Lambda x Lambda on re-grouped tensor factors, so that the hat game
// evaluates to (value of g on qs)^3.
QuantumStrategy hat_strategy(const QuantumStrategy& qs);

// --- See-saw lower bounds ---------------------------------------------------------

struct SeesawOptions {
  std::vector<int> dims;      // local dimension per party (each <= 16)
  int seeds = 20;             // random restarts; best kept
  int max_rounds = 500;
  double tolerance = 1e-9;    // stop when a round improves less than this
  std::uint64_t rng_seed = 20240901;
  int threads = 0;            // 0 = hardware concurrency; result independent
};

// Alternating maximization of |<M, gamma>| over norm-1 self-adjoint
// observables and the state. Observable update: matrix sign of the
// self-adjoint effective operator (zero eigenvalues to +1); state update:
// top eigenvector of the Bell operator. Monotone per round; best over
// seeds. The reported value is a valid quantum lower bound with the
// CorrelationObservables certificate attached.
solvers::ValueReport correlation_seesaw(const BellFunctional& m,
                                        const SeesawOptions& options);

// --- Strategy-value bound checks ----------------------------------------------------

// evaluate(g, behaviour_of(qs)) <= min_i d_i * bilocal_value_general(g) + 1e-9.
bool check_dimension_bound(const QuantumStrategy& qs, const BellFunctional& g,
                           const solvers::SolveOptions& options = {});

// Same with the output alphabet size in place of the dimension.
bool check_output_bound(const QuantumStrategy& qs, const BellFunctional& g,
                        const solvers::SolveOptions& options = {});

}  // namespace bellgap::quantum
