#include "bellgap/games.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "bellgap/errors.hpp"

namespace bellgap::games {
namespace {

constexpr double kDenseCoeffLimit = 1e8;  // refuse tensors beyond this many entries

std::string meta_name(const BellFunctional& g) {
  auto it = g.meta().find("name");
  return it == g.meta().end() ? "game" : it->second;
}

void require_bipartite_game(const BellFunctional& g, const char* op) {
  if (g.scenario().parties() != 2) {
    throw UnsupportedError(std::string(op) + " needs a bipartite functional");
  }
  if (g.kind() != FunctionalKind::kGame) {
    throw UnsupportedError(std::string(op) + " needs kind=game");
  }
}

void require_dense_size(double entries, const std::string& bound) {
  if (entries > kDenseCoeffLimit) {
    throw ResourceError("dense coefficient tensor " + bound + " = " +
                            std::to_string(entries) +
                            " entries exceeds the representation limit " +
                            std::to_string(kDenseCoeffLimit),
                        bound);
  }
}

}  // namespace

BellFunctional chsh_game() {
  const Scenario sc = Scenario::uniform(2, 2, 2);
  std::vector<double> coeffs(16, 0.0);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          if ((a ^ b) == (x & y)) {
            coeffs[(Index(x) * 2 + y) * 4 + Index(a) * 2 + b] = 0.25;
          }
        }
      }
    }
  }
  return BellFunctional(sc, FunctionalKind::kGame, std::move(coeffs),
                        {{"name", "chsh"}});
}

BellFunctional chsh_correlation_functional() {
  const Scenario sc = Scenario::uniform(2, 2, 2);
  std::vector<double> coeffs(4);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      coeffs[Index(x) * 2 + y] = ((x & y) ? -0.25 : 0.25);
    }
  }
  return BellFunctional(sc, FunctionalKind::kCorrelation, std::move(coeffs),
                        {{"name", "chsh-cor"}});
}

BellFunctional trivial_game(int parties) {
  const Scenario sc = Scenario::uniform(parties, 1, 1);
  return BellFunctional(sc, FunctionalKind::kGame, {1.0}, {{"name", "trivial"}});
}

HadamardMatrix HadamardMatrix::sylvester(int order) {
  if (order < 1 || (order & (order - 1)) != 0) {
    throw DomainError("Sylvester Hadamard matrices exist for powers of two only");
  }
  HadamardMatrix h;
  h.order = order;
  h.entries.assign(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      h.entries[x][y] = std::popcount(unsigned(x) & unsigned(y)) % 2 ? -1 : 1;
    }
  }
  return h;
}

bool HadamardMatrix::is_orthogonal() const {
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      long long dot = 0;
      for (int j = 0; j < order; ++j) {
        dot += static_cast<long long>(entries[x][j]) * entries[y][j];
      }
      if (dot != (x == y ? order : 0)) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> hadamard_code(int l) {
  if (l < 1 || l > 5) throw DomainError("Hadamard code supports 1 <= l <= 5");
  const int n = 1 << l;
  std::vector<std::uint32_t> code;
  code.reserve(n);
  for (int s = 0; s < n; ++s) {
    std::uint32_t word = 0;
    for (int i = 0; i < n; ++i) {
      if (std::popcount(unsigned(s) & unsigned(i)) % 2) {
        word |= 1u << (n - 1 - i);  // position 0 in the top bit: numeric = lex
      }
    }
    code.push_back(word);
  }
  return code;
}

BellFunctional khot_vishnoi(const KVParams& params) {
  if (params.l < 1) throw DomainError("khot_vishnoi needs l >= 1");
  const int l = params.l;
  const int n = 1 << l;
  double eta = params.eta;
  if (eta < 0.0) eta = std::max(0.0, 0.5 - 1.0 / l);
  if (eta < 0.0 || eta > 0.5) throw DomainError("eta must lie in [0, 1/2]");
  require_dense_size(std::pow(2.0, 2 * n), "2^{2n}");

  const std::vector<std::uint32_t> code = hadamard_code(l);
  const std::uint32_t universe = static_cast<std::uint32_t>((1ull << n) - 1);

  // Cosets of the code in {0,1}^n, keyed by least member: ascending scan
  // hands each coset its lexicographically smallest element first.
  const int coset_count = (1 << n) / n;
  std::vector<std::vector<std::uint32_t>> cosets;
  cosets.reserve(coset_count);
  std::vector<char> seen(std::size_t(universe) + 1, 0);
  for (std::uint32_t e = 0; e <= universe; ++e) {
    if (seen[e]) continue;
    std::vector<std::uint32_t> members;
    members.reserve(n);
    for (std::uint32_t c : code) {
      members.push_back(e ^ c);
      seen[e ^ c] = 1;
    }
    std::sort(members.begin(), members.end());
    cosets.push_back(std::move(members));
  }

  // weight_mass[w] = eta^w (1-eta)^{n-w}, with 0^0 = 1.
  std::vector<double> weight_mass(n + 1);
  for (int w = 0; w <= n; ++w) {
    double v = 1.0;
    for (int i = 0; i < w; ++i) v *= eta;
    for (int i = 0; i < n - w; ++i) v *= 1.0 - eta;
    weight_mass[w] = v;
  }

  const Scenario sc = Scenario::uniform(2, coset_count, n);
  const double question_weight = 1.0 / coset_count;
  std::vector<double> coeffs(sc.input_tuples() * sc.output_tuples(), 0.0);
  for (int u = 0; u < coset_count; ++u) {
    for (int v = 0; v < coset_count; ++v) {
      const Index base = (Index(u) * coset_count + v) * Index(n) * Index(n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const int w = std::popcount(cosets[u][a] ^ cosets[v][b]);
          coeffs[base + Index(a) * n + b] = question_weight * weight_mass[w];
        }
      }
    }
  }
  return BellFunctional(sc, FunctionalKind::kGame, std::move(coeffs),
                        {{"name", "kv"},
                         {"l", std::to_string(l)},
                         {"eta", std::to_string(eta)}});
}

BellFunctional hadamard_correlation_functional(int n_inputs) {
  if (n_inputs < 2) throw DomainError("hadamard_correlation_functional needs N >= 2");
  int block = 1;
  while (block * 2 <= n_inputs) block *= 2;  // largest power of two <= N
  const HadamardMatrix h = HadamardMatrix::sylvester(block);

  const Scenario sc = Scenario::uniform(3, n_inputs, 2);
  const Index n = static_cast<Index>(n_inputs);
  std::vector<double> coeffs(sc.input_tuples(), 0.0);
  for (int x = 0; x < block; ++x) {
    for (int y = 0; y < block; ++y) {
      coeffs[(Index(x) * n + y) * n + 0] = h.entries[x][y];
    }
  }
  return BellFunctional(sc, FunctionalKind::kCorrelation, std::move(coeffs),
                        {{"name", "hadamard-cor"},
                         {"inputs", std::to_string(n_inputs)},
                         {"block", std::to_string(block)}});
}

BellFunctional tensor_product(const BellFunctional& g, const BellFunctional& h) {
  require_bipartite_game(g, "tensor_product");
  require_bipartite_game(h, "tensor_product");
  const Scenario& sg = g.scenario();
  const Scenario& sh = h.scenario();
  const Scenario sc({sg.input_count(0) * sh.input_count(0),
                     sg.input_count(1) * sh.input_count(1)},
                    {sg.output_count(0) * sh.output_count(0),
                     sg.output_count(1) * sh.output_count(1)});
  require_dense_size(
      double(sc.input_tuples()) * double(sc.output_tuples()),
      "(N_g N_h)^2 (K_g K_h)^2");

  std::vector<double> coeffs(sc.input_tuples() * sc.output_tuples());
  for (int x1 = 0; x1 < sg.input_count(0); ++x1)
    for (int x2 = 0; x2 < sh.input_count(0); ++x2)
      for (int y1 = 0; y1 < sg.input_count(1); ++y1)
        for (int y2 = 0; y2 < sh.input_count(1); ++y2) {
          const Index x = Index(x1) * sh.input_count(0) + x2;
          const Index y = Index(y1) * sh.input_count(1) + y2;
          const Index base = (x * sc.input_count(1) + y) * sc.output_tuples();
          for (int a1 = 0; a1 < sg.output_count(0); ++a1)
            for (int a2 = 0; a2 < sh.output_count(0); ++a2)
              for (int b1 = 0; b1 < sg.output_count(1); ++b1)
                for (int b2 = 0; b2 < sh.output_count(1); ++b2) {
                  const Index a = Index(a1) * sh.output_count(0) + a2;
                  const Index b = Index(b1) * sh.output_count(1) + b2;
                  const Index gi = (Index(x1) * sg.input_count(1) + y1) *
                                       sg.output_tuples() +
                                   Index(a1) * sg.output_count(1) + b1;
                  const Index hi = (Index(x2) * sh.input_count(1) + y2) *
                                       sh.output_tuples() +
                                   Index(a2) * sh.output_count(1) + b2;
                  coeffs[base + a * sc.output_count(1) + b] =
                      g.coeffs()[gi] * h.coeffs()[hi];
                }
        }
  return BellFunctional(sc, FunctionalKind::kGame, std::move(coeffs),
                        {{"name", "tensor(" + meta_name(g) + "," + meta_name(h) + ")"}});
}

BellFunctional hat_construction(const BellFunctional& g) {
  require_bipartite_game(g, "hat_construction");
  const Scenario& s = g.scenario();
  const int n1 = s.input_count(0), n2 = s.input_count(1);
  const int k1 = s.output_count(0), k2 = s.output_count(1);
  // Slot types per player: A = (x1, x2) both first-player, B = (y1, y2)
  // second then first, C = (z1, z2) both second-player.
  const Scenario sc({n1 * n1, n2 * n1, n2 * n2}, {k1 * k1, k2 * k1, k2 * k2});
  require_dense_size(double(sc.input_tuples()) * double(sc.output_tuples()),
                     "N^6 K^6");

  auto gc = [&](int x, int y, int a, int b) {
    return g.coeffs()[(Index(x) * n2 + y) * s.output_tuples() + Index(a) * k2 + b];
  };

  std::vector<double> coeffs(sc.input_tuples() * sc.output_tuples());
  std::vector<int> in(3), out(3);
  for (int x1 = 0; x1 < n1; ++x1)
    for (int x2 = 0; x2 < n1; ++x2)
      for (int y1 = 0; y1 < n2; ++y1)
        for (int y2 = 0; y2 < n1; ++y2)
          for (int z1 = 0; z1 < n2; ++z1)
            for (int z2 = 0; z2 < n2; ++z2) {
              in[0] = x1 * n1 + x2;
              in[1] = y1 * n1 + y2;
              in[2] = z1 * n2 + z2;
              const Index base =
                  flat_index(in, sc.inputs()) * sc.output_tuples();
              for (int a1 = 0; a1 < k1; ++a1)
                for (int a2 = 0; a2 < k1; ++a2)
                  for (int b1 = 0; b1 < k2; ++b1)
                    for (int b2 = 0; b2 < k1; ++b2)
                      for (int c1 = 0; c1 < k2; ++c1)
                        for (int c2 = 0; c2 < k2; ++c2) {
                          out[0] = a1 * k1 + a2;
                          out[1] = b1 * k1 + b2;
                          out[2] = c1 * k2 + c2;
                          coeffs[base + flat_index(out, sc.outputs())] =
                              gc(x1, y1, a1, b1) * gc(x2, z1, a2, c1) *
                              gc(y2, z2, b2, c2);
                        }
            }
  return BellFunctional(sc, FunctionalKind::kGame, std::move(coeffs),
                        {{"name", "hat(" + meta_name(g) + ")"},
                         {"base", meta_name(g)}});
}

BellFunctional tilde_construction(const BellFunctional& g) {
  require_bipartite_game(g, "tilde_construction");
  const Scenario& s = g.scenario();
  const int n1 = s.input_count(0), n2 = s.input_count(1);
  const int k1 = s.output_count(0), k2 = s.output_count(1);
  // A = x (first-player slot), B = (y1, y2) second then first, C = z (second).
  const Scenario sc({n1, n2 * n1, n2}, {k1, k2 * k1, k2});
  require_dense_size(double(sc.input_tuples()) * double(sc.output_tuples()),
                     "N^4 K^4");

  auto gc = [&](int x, int y, int a, int b) {
    return g.coeffs()[(Index(x) * n2 + y) * s.output_tuples() + Index(a) * k2 + b];
  };

  std::vector<double> coeffs(sc.input_tuples() * sc.output_tuples());
  std::vector<int> in(3), out(3);
  for (int x = 0; x < n1; ++x)
    for (int y1 = 0; y1 < n2; ++y1)
      for (int y2 = 0; y2 < n1; ++y2)
        for (int z = 0; z < n2; ++z) {
          in[0] = x;
          in[1] = y1 * n1 + y2;
          in[2] = z;
          const Index base = flat_index(in, sc.inputs()) * sc.output_tuples();
          for (int a = 0; a < k1; ++a)
            for (int b1 = 0; b1 < k2; ++b1)
              for (int b2 = 0; b2 < k1; ++b2)
                for (int c = 0; c < k2; ++c) {
                  out[0] = a;
                  out[1] = b1 * k1 + b2;
                  out[2] = c;
                  coeffs[base + flat_index(out, sc.outputs())] =
                      gc(x, y1, a, b1) * gc(y2, z, b2, c);
                }
        }
  return BellFunctional(sc, FunctionalKind::kGame, std::move(coeffs),
                        {{"name", "tilde(" + meta_name(g) + ")"},
                         {"base", meta_name(g)}});
}

bool check_normalization(const BellFunctional& g) {
  if (g.kind() != FunctionalKind::kGame) {
    throw UnsupportedError("normalization check applies to games");
  }
  double sum = 0.0;
  const Index outputs = g.scenario().output_tuples();
  for (Index x = 0; x < g.scenario().input_tuples(); ++x) {
    double best = 0.0;
    for (Index a = 0; a < outputs; ++a) best = std::max(best, g.coeff(x, a));
    sum += best;
  }
  return sum <= 1.0 + 1e-12;
}

}  // namespace bellgap::games
