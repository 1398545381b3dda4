#pragma once

#include <optional>
#include <vector>

#include "arbor/branching.hpp"
#include "arbor/cut_decomposition.hpp"
#include "arbor/digraph.hpp"

namespace arbor {

// (D, s, t, k). When `reduced` is set every arc other than the auxiliary one
// lies in some rooted out- or in-branching, and R_s / R_t are filled in.
struct Instance {
  Digraph graph;
  Vertex s = 0;
  Vertex t = 0;
  int k = 0;
  bool reduced = false;
  ArcSet R_s;
  ArcSet R_t;
  // The arc ts when it was added by the solver rather than given.
  std::optional<Arc> aux_arc;

  bool ts_added() const { return aux_arc.has_value(); }
  bool is_aux(const Arc& a) const { return aux_arc && *aux_arc == a; }
};

// Removes every arc that lies in no rooted branching of either kind, until
// nothing changes. Empty if s has no out-branching or t no in-branching.
std::optional<Instance> reduce_instance(const Digraph& d, Vertex s, Vertex t, int k = 0);
// Re-reduces a modified instance, keeping its auxiliary arc.
std::optional<Instance> reduce_instance(const Instance& inst);

// Adds ts as an auxiliary arc when s != t and the arc is missing.
Instance with_aux_arc(const Instance& inst);

struct ForbiddenArcs {
  ArcSet R_s;  // in no out-branching rooted at s
  ArcSet R_t;  // in no in-branching rooted at t
};

// Exact sets, auxiliary arc excluded. Throws ContractError on an unreduced
// instance and InternalError if the sets meet or R_s misses a back arc of dec
// (pass the s-rooted decomposition to get that check).
ForbiddenArcs compute_Rs_Rt(const Instance& inst, const CutDecomposition* dec = nullptr);
// Same, storing the sets into the instance.
Instance with_forbidden_arcs(Instance inst, const CutDecomposition* dec = nullptr);

// A stretch x_1..x_l of consecutive nodes on a degenerate path, followed by
// the node `below` that comes right after x_l on that path.
struct WorkPath {
  std::vector<Vertex> nodes;
  Vertex below = 0;

  int position(Vertex v) const;  // index in nodes, or -1
  bool contains(Vertex v) const { return position(v) >= 0; }
};

// Maximal degenerate paths cut at t (t itself belongs to neither side).
std::vector<WorkPath> work_paths(const CutDecomposition& dec, Vertex t);
WorkPath whole(const DegeneratePath& p);

struct PathArcClassification {
  ArcSet A_plus;   // tail on the path, head above x_1
  ArcSet A_zero;   // x_j x_i with j > i
  ArcSet A_minus;  // tail below x_l, head on the path
  std::vector<Vertex> X;        // tails of A_plus, top first
  std::vector<Vertex> Y;        // tails of A_zero, top first
  std::vector<Vertex> X_heads;  // heads of A_plus, increasing
};

// Throws ContractError when some arc at the path fits none of the classes.
PathArcClassification classify_path_arcs(const Instance& inst, const CutDecomposition& dec, const WorkPath& p);

// For every head with several upward arcs in R_t keep only the topmost one.
Instance apply_rule1(const Instance& inst, const CutDecomposition& dec, const WorkPath& p);

// How a digraph was obtained from an older one by contracting path segments.
struct Contraction {
  Digraph before;
  Vertex s_before = 0;
  Vertex t_before = 0;
  std::vector<Vertex> to_new;                // old id -> new id
  std::vector<std::vector<Vertex>> segments;  // old ids, in path order
};

struct ContractedInstance {
  Instance instance;
  Contraction contraction;
};

// Contracts every maximal segment (two or more vertices, t excluded) of the
// path whose vertices are tails of no A_plus or A_zero arc. Empty when
// there is no such segment.
std::optional<ContractedInstance> apply_rule2(const Instance& inst, const CutDecomposition& dec,
                                              const WorkPath& p);

// Maps a tree of the contracted digraph back to the digraph before.
Tree lift_tree(const Contraction& c, const Tree& t);

}  // namespace arbor
