#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "arbor/digraph.hpp"

namespace arbor {

using Weight = boost::rational<std::int64_t>;

enum class Orientation { out, in };

std::string to_string(Orientation o);

// Rooted out-tree or in-tree given by its arcs. Not necessarily spanning.
// A single-vertex tree is just its root, which is then also its only leaf.
struct Tree {
  Vertex root = 0;
  Orientation orientation = Orientation::out;
  ArcSet arcs;

  std::set<Vertex> vertices() const;
  // Out-trees: vertices of out-degree zero. In-trees: in-degree zero.
  std::vector<Vertex> leaves() const;
  bool contains(Vertex v) const;
};

// Spanning tree of a host digraph, tagged with the host's fingerprint.
struct Branching : Tree {
  std::uint64_t host = 0;
};

Branching make_branching(const Digraph& d, Tree tree);

int count_leaves(const Tree& t);

// True iff `t` is a rooted tree of the given orientation using only arcs of d.
bool is_tree_of(const Digraph& d, const Tree& t);
// True iff `b` is a spanning tree of d and carries d's fingerprint.
bool is_branching_of(const Digraph& d, const Branching& b);

// Maximum-weight spanning out-branching rooted at `root` (Chu-Liu/Edmonds).
// `weights` is indexed by arc id. Empty iff no such branching exists.
std::optional<Branching> max_weight_out_branching(const Digraph& d, const std::vector<Weight>& weights,
                                                  Vertex root);
// Same for in-branchings; computed on the reverse digraph.
std::optional<Branching> max_weight_in_branching(const Digraph& d, const std::vector<Weight>& weights,
                                                 Vertex root);

Weight total_weight(const Digraph& d, const std::vector<Weight>& weights, const Tree& t);

std::optional<Branching> any_out_branching(const Digraph& d, Vertex root);
std::optional<Branching> any_in_branching(const Digraph& d, Vertex root);

// A rooted branching of the given orientation that contains `a`, if any.
// Forces `a` by giving it weight 2 and every other arc weight 1.
// Throws ContractError if `a` is not an arc or no rooted branching exists.
std::optional<Branching> branching_through_arc(const Digraph& d, Vertex root, const Arc& a,
                                               Orientation orientation);
bool arc_in_some_branching(const Digraph& d, Vertex root, const Arc& a, Orientation orientation);

// Linear-time completion of an out-tree to a spanning out-branching with at
// least as many leaves. Throws ContractError if impossible.
Branching extend_out_tree(const Digraph& d, const Tree& t);
Branching extend_in_tree(const Digraph& d, const Tree& t);

// Out-branching rooted at `root` with at least k leaves, or empty if none.
// Throws ContractError if `root` does not reach every vertex.
std::optional<Branching> max_leaf_out_branching(const Digraph& d, Vertex root, int k);

// |A(plus) \ A(minus)|. Throws ContractError on orientation or host mismatch.
int distinctness(const Branching& plus, const Branching& minus);

// In-branching rooted at t sharing as few arcs with `plus` as possible.
Branching min_overlap_in_branching(const Digraph& d, const Branching& plus, Vertex t);

// Calls `visit` with every out-branching rooted at `root` until it returns false.
void for_each_out_branching(const Digraph& d, Vertex root,
                            const std::function<bool(const Branching&)>& visit);

}  // namespace arbor
