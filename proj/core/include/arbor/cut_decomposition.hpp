#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arbor/digraph.hpp"

namespace arbor {

// For every vertex outside `block` (the diblock of r), the unique vertex of
// block \ {r} where every r-path to it leaves the block for the last time.
// Keys are the bottlenecks; r is never one. Throws ContractError if some
// vertex is unreachable from r.
std::map<Vertex, VertexSet> bottleneck_partition(const Digraph& d, Vertex r, const VertexSet& block);

// Rooted cut decomposition: a tree over bottleneck vertices, each node x
// carrying its diblock B_x (computed inside the subgraph hanging below x).
//
// Node identity is the host vertex id. subtree_vertices(x) is B*_x, the
// union of the diblocks in the subtree of x. Immutable once built.
class CutDecomposition {
 public:
  // Assembles a decomposition from raw parts without checking it; used to
  // feed validate() with hand-made or mutated decompositions.
  static CutDecomposition from_parts(Digraph host, Vertex root, std::map<Vertex, Vertex> parent,
                                     std::map<Vertex, VertexSet> diblocks);

  const Digraph& host() const { return host_; }
  Vertex root() const { return root_; }

  // Nodes in preorder, children visited by increasing id.
  const std::vector<Vertex>& nodes() const { return preorder_; }
  bool is_node(Vertex v) const { return diblocks_.contains(v); }
  std::optional<Vertex> parent(Vertex x) const;
  const std::vector<Vertex>& children(Vertex x) const;
  const VertexSet& diblock(Vertex x) const;
  const VertexSet& subtree_vertices(Vertex x) const;
  int depth(Vertex x) const;
  // Number of nodes on a longest root-to-leaf path.
  int height() const { return height_; }

  bool is_internal(Vertex x) const { return !children(x).empty(); }
  // Internal node with a two-vertex diblock.
  bool is_degenerate(Vertex x) const { return is_internal(x) && diblock(x).size() == 2; }

  // True iff a lies on the tree path from the root to x (a == x allowed).
  bool is_ancestor(Vertex a, Vertex x) const;
  // Tree path root..x.
  std::vector<Vertex> tree_path(Vertex x) const;
  std::vector<Vertex> subtree_nodes(Vertex x) const;
  // Deepest node whose diblock contains v.
  Vertex home_node(Vertex v) const;

  const std::map<Vertex, Vertex>& parent_map() const { return parent_; }
  const std::map<Vertex, VertexSet>& diblock_map() const { return diblocks_; }

  friend bool operator==(const CutDecomposition& a, const CutDecomposition& b) {
    return a.host_ == b.host_ && a.root_ == b.root_ && a.parent_ == b.parent_ && a.diblocks_ == b.diblocks_;
  }

 private:
  friend CutDecomposition build_cut_decomposition(const Digraph& d, Vertex r);
  void finalize();

  Digraph host_;
  Vertex root_ = 0;
  std::map<Vertex, Vertex> parent_;
  std::map<Vertex, VertexSet> diblocks_;
  std::map<Vertex, std::vector<Vertex>> children_;
  std::map<Vertex, VertexSet> subtree_;
  std::map<Vertex, int> depth_;
  std::vector<Vertex> preorder_;
  int height_ = 0;
};

// Requires |V| >= 2 and every vertex reachable from r.
CutDecomposition build_cut_decomposition(const Digraph& d, Vertex r);

enum class DecompositionClause {
  partition,     // {B_x \ {x}} nonempty and partition V \ {r}
  intersection,  // B_x meets B_y in {y} for parent x of y, otherwise not at all
  arc_placement, // every arc inside a diblock or a back arc to an ancestor
  entry,         // arcs entering B*_y have head y and tail in the parent diblock
  siblings,      // no arcs between sibling subtrees
  cover,         // diblocks cover V
};

std::string to_string(DecompositionClause c);

struct DecompositionViolation {
  DecompositionClause clause;
  std::string detail;
};

std::vector<DecompositionViolation> validate(const CutDecomposition& dec);

// Arcs uv with v a node and u in B*_v; no out-tree rooted at the root uses them.
ArcSet forbidden_back_arcs(const CutDecomposition& dec);

// Fins of a monotone tree path x_1..x_l, as node sets.
std::vector<std::vector<Vertex>> fins(const CutDecomposition& dec, const std::vector<Vertex>& tree_path);
// Union of the diblocks of the given nodes.
VertexSet diblock_union(const CutDecomposition& dec, const std::vector<Vertex>& nodes);

// For an r->v path p: the tree path from the root to home_node(v) shows up in
// p in order, and each stretch between consecutive tree-path bottlenecks stays
// inside the diblocks of the corresponding fin.
bool check_bottleneck_order(const CutDecomposition& dec, const Path& p, Vertex v);

// Root->u path meeting at most half of `avoid`. `avoid` must not contain u
// or any node on the tree path down to u's node.
Path avoid_half_path(const CutDecomposition& dec, Vertex u, const VertexSet& avoid);
// The same routing from an ancestor node `from` of home_node(u). `avoid` may
// hold anything except u and the tree-path nodes from..home_node(u); the
// half bound still holds since those nodes are the only shared vertices.
Path route_avoiding(const CutDecomposition& dec, Vertex from, Vertex u, const VertexSet& avoid);

struct DegeneratePath {
  std::vector<Vertex> nodes;  // x_1..x_l, top first
  Path host_path;             // x_1..x_l followed by the only child of x_l
};

// Maximal degenerate paths, ordered by depth of their top node, then id.
std::vector<DegeneratePath> degenerate_paths(const CutDecomposition& dec);

struct MonotonePath {
  std::vector<Vertex> nodes;
  std::vector<bool> degenerate;
  int nondegenerate_count = 0;
};

// Longest root-to-leaf path (first in preorder on ties).
MonotonePath longest_monotone_path(const CutDecomposition& dec);
// Root-to-leaf path with the most non-degenerate diblocks.
MonotonePath most_nondegenerate_path(const CutDecomposition& dec);

// {"root":r,"parent":{x:p},"diblocks":{x:[...]}}
std::string to_json(const CutDecomposition& dec);
// Diblocks as clusters (each vertex drawn in its home diblock), back arcs dashed.
std::string to_dot(const CutDecomposition& dec);

}  // namespace arbor
