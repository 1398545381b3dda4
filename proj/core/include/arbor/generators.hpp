#pragma once

#include <cstdint>

#include "arbor/digraph.hpp"

namespace arbor {

// Every ordered pair u != v becomes an arc with probability p.
Digraph gnp_digraph(int n, double p, std::uint64_t seed);
// Arcs only from lower to higher id, each with probability p.
Digraph random_dag(int n, double p, std::uint64_t seed);
// v_0 .. v_{n+1}: chain arcs v_i v_{i+1} and every back arc v_i v_j with
// 1 <= j < i <= n; `close` adds v_{n+1} v_0.
Digraph paper3_digraph(int n, bool close = false);
// Path v_0 .. v_{n-1} plus each back arc v_i v_j (j < i) with probability p.
Digraph degenerate_chain(int n, double p, std::uint64_t seed);
// Arcs i -> i+1 and i+1 -> i around a cycle of length n.
Digraph bidirected_cycle(int n);

}  // namespace arbor
