#include "arbor/builders.hpp"

#include <algorithm>
#include <map>

#include "arbor/flow.hpp"

namespace arbor {

namespace {

void add_path(ArcSet& arcs, const Path& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) arcs.insert({p[i], p[i + 1]});
}

void require_match(const Instance& inst, const CutDecomposition& dec, const char* who) {
  if (!(dec.host() == inst.graph) || dec.root() != inst.s)
    throw ContractError(std::string(who) + ": decomposition does not belong to the instance");
}

// Path from v to the root in an in-branching.
Path path_to_root(const Tree& in, Vertex v) {
  std::map<Vertex, Vertex> next;
  for (const Arc& a : in.arcs) next[a.tail] = a.head;
  Path p{v};
  while (p.back() != in.root) {
    auto it = next.find(p.back());
    if (it == next.end()) throw InternalError("path_to_root: vertex outside the in-tree");
    p.push_back(it->second);
  }
  return p;
}

}  // namespace

Tree reroot_out_tree(const Instance& inst, const CutDecomposition& dec, const Tree& t) {
  require_match(inst, dec, "reroot_out_tree");
  if (t.orientation != Orientation::out || !is_tree_of(inst.graph, t))
    throw ContractError("reroot_out_tree: not an out-tree of the instance");
  if (t.root == inst.s) return t;

  const Vertex r = t.root;
  const auto leaves = t.leaves();
  const auto spine = dec.tree_path(dec.home_node(r));
  VertexSet avoid(inst.graph.vertex_count());
  for (Vertex v : leaves)
    if (v != r && std::find(spine.begin(), spine.end(), v) == spine.end()) avoid.insert(v);

  const Path p = route_avoiding(dec, inst.s, r, avoid);
  Tree out{inst.s, Orientation::out, {}};
  add_path(out.arcs, p);
  std::set<Vertex> in_tree(p.begin(), p.end());

  std::map<Vertex, Vertex> parent;
  for (const Arc& a : t.arcs) parent[a.head] = a.tail;
  for (Vertex v : leaves) {
    if (in_tree.contains(v)) continue;
    // climb to the last vertex of the r-v path already in the tree
    for (Vertex x = v; !in_tree.contains(x); x = parent.at(x)) {
      out.arcs.insert({parent.at(x), x});
      in_tree.insert(x);
    }
  }

  const int ell = static_cast<int>(leaves.size());
  const int got = count_leaves(out);
  const int loss = dec.diblock(inst.s).contains(r) ? 1 : dec.height();
  if (2 * got < ell - loss)
    throw InternalError("reroot_out_tree: " + std::to_string(got) + " leaves from " + std::to_string(ell));
  return out;
}

Tree build_nondegen_out_tree(const Instance& inst, const CutDecomposition& dec, const std::vector<Vertex>& path,
                             int ell) {
  require_match(inst, dec, "build_nondegen_out_tree");
  if (path.empty() || path.front() != dec.root()) throw ContractError("build_nondegen_out_tree: path must start at the root");
  for (std::size_t i = 1; i < path.size(); ++i)
    if (dec.parent(path[i]) != path[i - 1]) throw ContractError("build_nondegen_out_tree: path is not monotone");

  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < path.size(); ++i)
    if (!dec.is_degenerate(path[i])) picks.push_back(i);
  if (ell < 0 || static_cast<int>(picks.size()) < ell)
    throw ContractError("build_nondegen_out_tree: path has " + std::to_string(picks.size()) +
                        " non-degenerate diblocks, " + std::to_string(ell) + " claimed");
  picks.resize(static_cast<std::size_t>(ell));

  Tree out{inst.s, Orientation::out, {}};
  if (ell == 0) return out;
  const VertexSet none(inst.graph.vertex_count());
  add_path(out.arcs, route_avoiding(dec, inst.s, path[picks[0]], none));

  for (std::size_t i = 0; i + 1 < picks.size(); ++i) {
    const Vertex x = path[picks[i]];
    const Vertex next = path[picks[i] + 1];
    Vertex spare = -1;
    for (Vertex v : dec.diblock(x).members())
      if (v != x && v != next) {
        spare = v;
        break;
      }
    if (spare < 0) throw InternalError("build_nondegen_out_tree: non-degenerate diblock without a spare vertex");

    InducedSubgraph sub = induced_subgraph(inst.graph, dec.subtree_vertices(x));
    auto local = [&](Vertex v) { return sub.from_host[static_cast<std::size_t>(v)]; };
    DisjointPathPair pair = two_disjoint_paths(sub.graph, local(x), local(next), local(spare));
    for (Path* q : {&pair.first, &pair.second}) {
      for (Vertex& v : *q) v = sub.to_host[static_cast<std::size_t>(v)];
      add_path(out.arcs, *q);
    }
    const Vertex target = path[picks[i + 1]];
    if (target != next) add_path(out.arcs, route_avoiding(dec, next, target, none));
  }

  if (!is_tree_of(inst.graph, out)) throw InternalError("build_nondegen_out_tree: result is not an out-tree");
  if (count_leaves(out) < ell)
    throw InternalError("build_nondegen_out_tree: " + std::to_string(count_leaves(out)) + " leaves, " +
                        std::to_string(ell) + " promised");
  return out;
}

Tree build_up_heads_out_tree(const Instance& inst, const CutDecomposition& dec, const WorkPath& p,
                             const PathArcClassification& c) {
  require_match(inst, dec, "build_up_heads_out_tree");
  std::map<Vertex, Vertex> tail_of;  // head -> topmost tail
  for (const Arc& a : c.A_plus) {
    if (!inst.R_t.contains(a)) continue;
    auto [it, fresh] = tail_of.try_emplace(a.head, a.tail);
    if (!fresh && p.position(a.tail) < p.position(it->second)) it->second = a.tail;
  }
  VertexSet heads(inst.graph.vertex_count());
  for (const auto& [h, tail] : tail_of) heads.insert(h);

  const Path spine = avoid_half_path(dec, p.nodes.back(), heads);
  Tree out{inst.s, Orientation::out, {}};
  add_path(out.arcs, spine);
  const std::set<Vertex> on_spine(spine.begin(), spine.end());
  for (const auto& [h, tail] : tail_of)
    if (!on_spine.contains(h)) out.arcs.insert({tail, h});
  if (!is_tree_of(inst.graph, out)) throw InternalError("build_up_heads_out_tree: result is not an out-tree");
  return out;
}

Tree build_A_plus_in_tree(const Instance& inst, const CutDecomposition& dec, const WorkPath& p,
                          const PathArcClassification& c) {
  require_match(inst, dec, "build_A_plus_in_tree");
  if (p.contains(inst.t)) throw ContractError("build_A_plus_in_tree: t lies on the path");

  Tree out{inst.t, Orientation::in, {}};
  std::set<Vertex> in_tree{inst.t};
  for (Vertex x : c.X) {
    std::optional<Arc> up;
    for (const Arc& a : c.A_plus)
      if (a.tail == x && !inst.R_t.contains(a)) {
        up = a;
        break;
      }
    if (!up) continue;
    auto witness = branching_through_arc(inst.graph, inst.t, *up, Orientation::in);
    if (!witness) throw InternalError("build_A_plus_in_tree: arc outside R_t in no in-branching");
    const Path q = path_to_root(*witness, x);
    for (std::size_t i = 0; i + 1 < q.size() && !in_tree.contains(q[i]); ++i) {
      out.arcs.insert({q[i], q[i + 1]});
      in_tree.insert(q[i]);
    }
  }
  if (!is_tree_of(inst.graph, out)) throw InternalError("build_A_plus_in_tree: result is not an in-tree");
  return out;
}

std::optional<Tree> build_A_zero_in_tree(const Instance& inst, const CutDecomposition& dec, const WorkPath& p,
                                         const PathArcClassification& c) {
  require_match(inst, dec, "build_A_zero_in_tree");
  if (p.contains(inst.t)) throw ContractError("build_A_zero_in_tree: t lies on the path");
  const Digraph& g = inst.graph;
  const Vertex t = inst.t;
  if (c.Y.empty()) return Tree{t, Orientation::in, {}};

  // closest on-path head for every v in Y
  std::map<Vertex, Vertex> target;
  for (const Arc& a : c.A_zero) {
    auto [it, fresh] = target.try_emplace(a.tail, a.head);
    if (!fresh && p.position(a.head) > p.position(it->second)) it->second = a.head;
  }

  std::map<Vertex, Vertex> next;  // the forest, one out-arc per vertex
  std::set<Vertex> members{t};
  auto add = [&](Vertex a, Vertex b) {
    next[a] = b;
    members.insert(a);
    members.insert(b);
  };

  // seed: an in-branching path through the topmost arc u x_u
  const Vertex u = c.Y.front();
  auto witness = branching_through_arc(g, t, {u, target.at(u)}, Orientation::in);
  if (!witness) return std::nullopt;
  const Path pu = path_to_root(*witness, u);
  for (std::size_t i = 0; i + 1 < pu.size(); ++i) add(pu[i], pu[i + 1]);
  const std::set<Vertex> on_pu(pu.begin(), pu.end());
  for (Vertex v : c.Y)
    if (!next.contains(v) && on_pu.contains(target.at(v))) add(v, target.at(v));

  VertexSet blocked(g.vertex_count());
  for (Vertex x : p.nodes) blocked.insert(x);
  blocked |= dec.subtree_vertices(p.below);
  blocked.erase(t);
  for (Vertex h : c.X_heads) {
    if (members.contains(h)) continue;
    auto q = bfs_path(g, h, t, &blocked);
    if (!q) q = bfs_path(g, h, t);
    if (!q) return std::nullopt;
    for (std::size_t i = 0; i + 1 < q->size() && !members.contains((*q)[i]); ++i) add((*q)[i], (*q)[i + 1]);
  }
  for (Vertex v : c.Y)
    if (!next.contains(v)) add(v, target.at(v));

  auto root_of = [&](Vertex v) {
    for (int guard = 0; next.contains(v); ++guard) {
      if (guard > g.vertex_count()) throw InternalError("build_A_zero_in_tree: cycle in the forest");
      v = next.at(v);
    }
    return v;
  };
  auto roots = [&] {
    std::vector<Vertex> r;
    for (Vertex v : members)
      if (!next.contains(v)) r.push_back(v);
    return r;
  };

  for (auto rs = roots(); rs.size() > 1; rs = roots()) {
    // the lowest root sits deepest on the path
    Vertex low = -1;
    for (Vertex r : rs) {
      if (r == t) continue;
      if (!p.contains(r)) return std::nullopt;
      if (low < 0 || p.position(r) > p.position(low)) low = r;
    }
    const int from = p.position(low);
    int stop = -1;
    for (int i = from + 1; i < static_cast<int>(p.nodes.size()); ++i) {
      const Vertex z = p.nodes[static_cast<std::size_t>(i)];
      if (members.contains(z) || std::find(c.X.begin(), c.X.end(), z) != c.X.end()) {
        stop = i;
        break;
      }
    }
    if (stop < 0) return std::nullopt;
    const Vertex z = p.nodes[static_cast<std::size_t>(stop)];
    if (members.contains(z)) {
      if (root_of(z) == low) return std::nullopt;
      for (int i = from; i < stop; ++i) add(p.nodes[static_cast<std::size_t>(i)], p.nodes[static_cast<std::size_t>(i + 1)]);
    } else {
      std::optional<Vertex> head;
      for (const Arc& a : c.A_plus)
        if (a.tail == z && members.contains(a.head) && root_of(a.head) != low) {
          head = a.head;
          break;
        }
      if (!head) return std::nullopt;
      for (int i = from; i < stop; ++i) add(p.nodes[static_cast<std::size_t>(i)], p.nodes[static_cast<std::size_t>(i + 1)]);
      add(z, *head);
    }
  }

  Tree out{t, Orientation::in, {}};
  for (const auto& [a, b] : next) out.arcs.insert({a, b});
  if (!is_tree_of(g, out)) return std::nullopt;
  for (Vertex v : c.Y)
    if (!out.arcs.contains({v, target.at(v)})) return std::nullopt;
  return out;
}

}  // namespace arbor
