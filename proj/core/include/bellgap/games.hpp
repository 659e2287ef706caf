#pragma once

#include <cstdint>
#include <vector>

#include "bellgap/functional.hpp"
#include "bellgap/scenario.hpp"

namespace bellgap::games {

// --- Two-player building blocks ----------------------------------------------

// CHSH as a normalized game: coefficient 1/4 on (x, y, a, b) iff a xor b = x*y.
BellFunctional chsh_game();

// CHSH as a correlation functional: M_{xy} = (-1)^{xy} / 4.
BellFunctional chsh_correlation_functional();

// The game on `parties` players with one input and one output each and a
// single coefficient of 1. Every strategy wins it.
BellFunctional trivial_game(int parties);

// --- Hadamard matrices --------------------------------------------------------

// Sylvester +-1 Hadamard matrix. Order must be a power of two (1, 2, 4, ...).
// Satisfies H * H^T = order * I in exact integer arithmetic.
struct HadamardMatrix {
  int order = 0;
  std::vector<std::vector<int>> entries;

  static HadamardMatrix sylvester(int order);
  // Exact integer check of H * H^T = order * I.
  bool is_orthogonal() const;
};

// --- Hadamard-code game -------------------------------------------------------

struct KVParams {
  int l = 3;          // n = 2^l codeword length
  double eta = -1.0;  // noise rate; < 0 selects the default max(0, 1/2 - 1/l)
};

// The n = 2^l codewords of the Hadamard code as n-bit masks packed so that
// ascending numeric order is lexicographic order of the bit strings
// (position 0 in the highest bit). Codeword for seed s maps position i to
// <s, i> mod 2 with i enumerating {0,1}^l.
std::vector<std::uint32_t> hadamard_code(int l);

// Bipartite game on the cosets of the Hadamard code H in {0,1}^n, n = 2^l:
// N = 2^n / n inputs per player (cosets, keyed by lexicographically smallest
// member, ordered by key) and K = n outputs (answer a means the a-th coset
// element in lexicographic order). The referee draws a coset uniformly,
// flips each of n bits with probability eta to displace the second player's
// copy, and pays 1 when the chosen elements differ by exactly the noise
// string. Coefficient for ([u], [v], a, b) with u' the a-th element of [u]
// and v' the b-th of [v]:
//   (1 / #cosets) * eta^{|u' xor v'|} * (1 - eta)^{n - |u' xor v'|}.
BellFunctional khot_vishnoi(const KVParams& params = {});

// --- Correlation functional with a spectator block ----------------------------

// Tripartite correlation functional on N inputs per party. With 2^m the
// largest power of two with N/2 < 2^m <= N, the coefficients are
// M_{xyz} = h_{xy} for x, y < 2^m and z = 0, and 0 otherwise, where h is the
// Sylvester Hadamard matrix of order 2^m.
BellFunctional hadamard_correlation_functional(int n_inputs);

// --- Products and liftings ----------------------------------------------------

// Tensor product of two bipartite games: players (A1 A2), (B1 B2) with
// paired inputs/outputs packed flat = first * radix + second, coefficients
// multiply. Preserves the normalization condition when both factors
// satisfy it.
BellFunctional tensor_product(const BellFunctional& g, const BellFunctional& h);

// Tripartite lifting of a bipartite game G on N inputs / K outputs: each
// player gets an input pair and answers an output pair (packed
// flat = first * radix + second, so N^2 inputs and K^2 outputs per player),
// and
//   Ghat_{(x1x2)(y1y2)(z1z2)}^{(a1a2)(b1b2)(c1c2)}
//     = G_{x1 y1}^{a1 b1} * G_{x2 z1}^{a2 c1} * G_{y2 z2}^{b2 c2}.
// Inherits the normalization condition from G.
BellFunctional hat_construction(const BellFunctional& g);

// Tripartite chaining of a bipartite game G through a middle player:
// party alphabets (N, N^2, N) inputs and (K, K^2, K) outputs, and
//   Gtilde_{x (y1y2) z}^{a (b1b2) c} = G_{x y1}^{a b1} * G_{y2 z}^{b2 c}.
BellFunctional tilde_construction(const BellFunctional& g);

// --- Normalization -------------------------------------------------------------

// True iff sum_x max_a G <= 1 + 1e-12. Requires kind = game.
bool check_normalization(const BellFunctional& g);

}  // namespace bellgap::games
