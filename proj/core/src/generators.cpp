#include "arbor/generators.hpp"

#include <random>

namespace arbor {

namespace {

// Same stream on every platform, unlike std::bernoulli_distribution.
class Coin {
 public:
  explicit Coin(std::uint64_t seed) : rng_(seed) {}
  bool flip(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 rng_;
};

void require(bool ok, const char* what) {
  if (!ok) throw ContractError(what);
}

}  // namespace

Digraph gnp_digraph(int n, double p, std::uint64_t seed) {
  require(n >= 1, "gnp: n must be positive");
  require(p >= 0.0 && p <= 1.0, "gnp: p must lie in [0,1]");
  Coin coin(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && coin.flip(p)) arcs.push_back({u, v});
  return Digraph(n, std::move(arcs));
}

Digraph random_dag(int n, double p, std::uint64_t seed) {
  require(n >= 1, "dag: n must be positive");
  require(p >= 0.0 && p <= 1.0, "dag: p must lie in [0,1]");
  Coin coin(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin.flip(p)) arcs.push_back({u, v});
  return Digraph(n, std::move(arcs));
}

Digraph paper3_digraph(int n, bool close) {
  require(n >= 1, "paper3: n must be positive");
  std::vector<Arc> arcs;
  for (Vertex i = 0; i <= n; ++i) arcs.push_back({i, i + 1});
  for (Vertex i = 2; i <= n; ++i)
    for (Vertex j = 1; j < i; ++j) arcs.push_back({i, j});
  if (close) arcs.push_back({n + 1, 0});
  return Digraph(n + 2, std::move(arcs));
}

Digraph degenerate_chain(int n, double p, std::uint64_t seed) {
  require(n >= 2, "degenerate-chain: n must be at least 2");
  require(p >= 0.0 && p <= 1.0, "degenerate-chain: p must lie in [0,1]");
  Coin coin(seed);
  std::vector<Arc> arcs;
  for (Vertex i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1});
  for (Vertex i = 1; i < n; ++i)
    for (Vertex j = 0; j < i; ++j)
      if (coin.flip(p)) arcs.push_back({i, j});
  return Digraph(n, std::move(arcs));
}

Digraph bidirected_cycle(int n) {
  require(n >= 2, "bidirected-cycle: n must be at least 2");
  std::vector<Arc> arcs;
  for (Vertex i = 0; i < n; ++i) {
    Vertex j = (i + 1) % n;
    arcs.push_back({i, j});
    arcs.push_back({j, i});
  }
  return Digraph(n, std::move(arcs), true);
}

}  // namespace arbor
