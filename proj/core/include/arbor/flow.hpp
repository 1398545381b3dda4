#pragma once

#include "arbor/digraph.hpp"

namespace arbor {

// Two paths out of a common origin. When they end in distinct vertices they
// share only the origin; when they end in the same vertex they share exactly
// the origin and that endpoint.
struct DisjointPathPair {
  Path first;
  Path second;
};

// Maximum number (capped at `cap`) of internally vertex-disjoint r->v paths,
// computed by augmenting-path max-flow on the vertex-split network.
int internally_disjoint_path_count(const Digraph& d, Vertex r, Vertex v, int cap = 2);

// Vertices v != r with two internally vertex-disjoint r->v paths.
VertexSet bi_reachable_set(const Digraph& d, Vertex r);

// Bi-reachable set of r together with r and its out-neighbours.
// Requires at least two vertices and every vertex reachable from r.
VertexSet diblock(const Digraph& d, Vertex r);

// An r->x path and an r->y path meeting only in r, for distinct x, y in the
// diblock of r. If r is one of x, y the corresponding path is just <r>.
DisjointPathPair two_disjoint_paths(const Digraph& d, Vertex r, Vertex x, Vertex y);

// Two internally vertex-disjoint r->v paths for v bi-reachable from r, or
// the single arc path <r, v> twice when v is only an out-neighbour.
DisjointPathPair disjoint_paths_to(const Digraph& d, Vertex r, Vertex v);

// Checks the DisjointPathPair invariant against d; independent of the flow code.
bool is_disjoint_path_pair(const Digraph& d, const DisjointPathPair& pair);

}  // namespace arbor
