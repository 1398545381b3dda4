#pragma once

#include <optional>
#include <vector>

#include "arbor/branching.hpp"
#include "arbor/cut_decomposition.hpp"
#include "arbor/instance.hpp"

namespace arbor {

// All builders take the decomposition of inst.graph rooted at inst.s.

// s-rooted out-tree keeping at least (l - d)/2 of the l leaves of `t`, d the
// height of dec; at least (l - 1)/2 when the root of t lies in B_s. A tree
// already rooted at s comes back unchanged.
Tree reroot_out_tree(const Instance& inst, const CutDecomposition& dec, const Tree& t);

// s-rooted out-tree with at least `ell` leaves, grown along the monotone
// tree path `path` (root first) through its first `ell` non-degenerate nodes.
// Throws ContractError if the path has fewer of them.
Tree build_nondegen_out_tree(const Instance& inst, const CutDecomposition& dec, const std::vector<Vertex>& path,
                             int ell);

// s-rooted out-tree: a path to the bottom of `p` that meets at most half of
// the heads of A_plus arcs in R_t, with every other such head hung on as a
// leaf. Needs R_t filled in and Rule 1 exhausted on p.
Tree build_up_heads_out_tree(const Instance& inst, const CutDecomposition& dec, const WorkPath& p,
                             const PathArcClassification& c);

// t-rooted in-tree merged from one in-branching path per tail with an
// upward arc outside R_t, taken in path order. Needs t not on p.
Tree build_A_plus_in_tree(const Instance& inst, const CutDecomposition& dec, const WorkPath& p,
                          const PathArcClassification& c);

// t-rooted in-tree holding one A_zero arc v x_v per v in Y, x_v the head
// closest to v. Empty when the construction gets stuck. Needs t not on p.
std::optional<Tree> build_A_zero_in_tree(const Instance& inst, const CutDecomposition& dec, const WorkPath& p,
                                         const PathArcClassification& c);

}  // namespace arbor
