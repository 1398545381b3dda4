#include "arbor/instance.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace arbor {

std::optional<Instance> reduce_instance(const Instance& inst) {
  Digraph g = inst.graph;
  const Vertex s = inst.s, t = inst.t;
  if (!g.is_vertex(s) || !g.is_vertex(t)) throw ContractError("reduce_instance: root out of range");
  if (!has_rooted_out_branching(g, s) || !has_rooted_in_branching(g, t)) return std::nullopt;

  while (true) {
    ArcSet useless;
    for (const Arc& a : g.arcs()) {
      if (inst.is_aux(a)) continue;
      if (arc_in_some_branching(g, s, a, Orientation::out)) continue;
      if (arc_in_some_branching(g, t, a, Orientation::in)) continue;
      useless.insert(a);
    }
    if (useless.empty()) break;
    g = without_arcs(g, useless);
  }

  Instance out = inst;
  out.graph = std::move(g);
  out.reduced = true;
  out.R_s.clear();
  out.R_t.clear();
  return out;
}

std::optional<Instance> reduce_instance(const Digraph& d, Vertex s, Vertex t, int k) {
  if (k < 0) throw ContractError("reduce_instance: k must be non-negative");
  Instance inst;
  inst.graph = d;
  inst.s = s;
  inst.t = t;
  inst.k = k;
  return reduce_instance(inst);
}

Instance with_aux_arc(const Instance& inst) {
  if (inst.s == inst.t || inst.graph.has_arc(inst.t, inst.s) || inst.ts_added()) return inst;
  Instance out = inst;
  out.graph = with_arcs(inst.graph, {{inst.t, inst.s}});
  out.aux_arc = Arc{inst.t, inst.s};
  return out;
}

ForbiddenArcs compute_Rs_Rt(const Instance& inst, const CutDecomposition* dec) {
  if (!inst.reduced) throw ContractError("compute_Rs_Rt: instance is not reduced");
  ForbiddenArcs f;
  for (const Arc& a : inst.graph.arcs()) {
    if (inst.is_aux(a)) continue;
    if (!arc_in_some_branching(inst.graph, inst.s, a, Orientation::out)) f.R_s.insert(a);
    if (!arc_in_some_branching(inst.graph, inst.t, a, Orientation::in)) f.R_t.insert(a);
  }
  for (const Arc& a : f.R_s)
    if (f.R_t.contains(a))
      throw InternalError("compute_Rs_Rt: arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                          ") lies in no rooted branching of a reduced instance");
  if (dec) {
    for (const Arc& a : forbidden_back_arcs(*dec))
      if (!inst.is_aux(a) && !f.R_s.contains(a))
        throw InternalError("compute_Rs_Rt: back arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                            ") found in a rooted out-branching");
  }
  return f;
}

Instance with_forbidden_arcs(Instance inst, const CutDecomposition* dec) {
  auto f = compute_Rs_Rt(inst, dec);
  inst.R_s = std::move(f.R_s);
  inst.R_t = std::move(f.R_t);
  return inst;
}

int WorkPath::position(Vertex v) const {
  auto it = std::find(nodes.begin(), nodes.end(), v);
  return it == nodes.end() ? -1 : static_cast<int>(it - nodes.begin());
}

WorkPath whole(const DegeneratePath& p) { return WorkPath{p.nodes, p.host_path.back()}; }

std::vector<WorkPath> work_paths(const CutDecomposition& dec, Vertex t) {
  std::vector<WorkPath> out;
  for (const DegeneratePath& p : degenerate_paths(dec)) {
    auto it = std::find(p.nodes.begin(), p.nodes.end(), t);
    if (it == p.nodes.end()) {
      out.push_back(whole(p));
      continue;
    }
    if (it != p.nodes.begin()) out.push_back(WorkPath{{p.nodes.begin(), it}, t});
    if (it + 1 != p.nodes.end()) out.push_back(WorkPath{{it + 1, p.nodes.end()}, p.host_path.back()});
  }
  return out;
}

namespace {

std::string arc_str(const Arc& a) {
  return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
}

std::vector<Vertex> tails_in_path_order(const WorkPath& p, const ArcSet& arcs) {
  std::vector<Vertex> out;
  for (Vertex x : p.nodes)
    for (const Arc& a : arcs)
      if (a.tail == x) {
        out.push_back(x);
        break;
      }
  return out;
}

}  // namespace

PathArcClassification classify_path_arcs(const Instance& inst, const CutDecomposition& dec, const WorkPath& p) {
  if (p.nodes.empty()) throw ContractError("classify_path_arcs: empty path");
  const VertexSet& below_top = dec.subtree_vertices(p.nodes.front());
  const VertexSet& below_end = dec.subtree_vertices(p.below);
  const int last = static_cast<int>(p.nodes.size()) - 1;

  PathArcClassification c;
  for (const Arc& a : inst.graph.arcs()) {
    if (inst.is_aux(a)) continue;
    const int tp = p.position(a.tail), hp = p.position(a.head);
    if (tp < 0 && hp < 0) continue;
    if (tp >= 0 && ((tp < last && a.head == p.nodes[static_cast<std::size_t>(tp + 1)]) ||
                    (tp == last && a.head == p.below)))
      continue;  // path arc
    if (hp == 0 && tp < 0 && !below_top.contains(a.tail)) continue;  // entering from above
    if (tp >= 0 && hp >= 0 && tp > hp)
      c.A_zero.insert(a);
    else if (tp >= 0 && !below_top.contains(a.head))
      c.A_plus.insert(a);
    else if (hp >= 0 && below_end.contains(a.tail))
      c.A_minus.insert(a);
    else
      throw ContractError("classify_path_arcs: arc " + arc_str(a) + " fits no class");
  }
  c.X = tails_in_path_order(p, c.A_plus);
  c.Y = tails_in_path_order(p, c.A_zero);
  std::set<Vertex> heads;
  for (const Arc& a : c.A_plus) heads.insert(a.head);
  c.X_heads.assign(heads.begin(), heads.end());
  return c;
}

Instance apply_rule1(const Instance& inst, const CutDecomposition& dec, const WorkPath& p) {
  if (!inst.reduced) throw ContractError("apply_rule1: instance is not reduced");
  const auto c = classify_path_arcs(inst, dec, p);
  std::map<Vertex, Arc> topmost;
  ArcSet removed;
  for (const Arc& a : c.A_plus) {
    if (!inst.R_t.contains(a)) continue;
    auto [it, fresh] = topmost.try_emplace(a.head, a);
    if (fresh) continue;
    if (p.position(a.tail) < p.position(it->second.tail)) {
      removed.insert(it->second);
      it->second = a;
    } else {
      removed.insert(a);
    }
  }
  if (removed.empty()) return inst;
  Instance out = inst;
  out.graph = without_arcs(inst.graph, removed);
  out.reduced = false;
  out.R_s.clear();
  out.R_t.clear();
  return out;
}

std::optional<ContractedInstance> apply_rule2(const Instance& inst, const CutDecomposition& dec,
                                              const WorkPath& p) {
  const auto c = classify_path_arcs(inst, dec, p);
  std::set<Vertex> tails(c.X.begin(), c.X.end());
  tails.insert(c.Y.begin(), c.Y.end());

  std::vector<std::vector<Vertex>> segments;
  std::vector<Vertex> run;
  auto close_run = [&] {
    if (run.size() >= 2) segments.push_back(run);
    run.clear();
  };
  for (Vertex x : p.nodes) {
    if (tails.contains(x) || x == inst.t) {
      close_run();
      continue;
    }
    run.push_back(x);
  }
  close_run();
  if (segments.empty()) return std::nullopt;

  const Digraph& g = inst.graph;
  const int n = g.vertex_count();
  std::vector<Vertex> rep(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) rep[static_cast<std::size_t>(v)] = v;
  for (const auto& seg : segments)
    for (Vertex v : seg) rep[static_cast<std::size_t>(v)] = seg.front();

  Contraction con;
  con.before = g;
  con.s_before = inst.s;
  con.t_before = inst.t;
  con.segments = segments;
  con.to_new.assign(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (Vertex v = 0; v < n; ++v)
    if (rep[static_cast<std::size_t>(v)] == v) con.to_new[static_cast<std::size_t>(v)] = next++;
  for (Vertex v = 0; v < n; ++v)
    con.to_new[static_cast<std::size_t>(v)] = con.to_new[static_cast<std::size_t>(rep[static_cast<std::size_t>(v)])];

  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) {
    Arc b{con.to_new[static_cast<std::size_t>(a.tail)], con.to_new[static_cast<std::size_t>(a.head)]};
    if (b.tail != b.head) arcs.push_back(b);
  }

  ContractedInstance out;
  out.instance.graph = Digraph(next, std::move(arcs), true);
  out.instance.s = con.to_new[static_cast<std::size_t>(inst.s)];
  out.instance.t = con.to_new[static_cast<std::size_t>(inst.t)];
  out.instance.k = inst.k;
  if (inst.aux_arc)
    out.instance.aux_arc = Arc{con.to_new[static_cast<std::size_t>(inst.aux_arc->tail)],
                               con.to_new[static_cast<std::size_t>(inst.aux_arc->head)]};
  out.contraction = std::move(con);
  return out;
}

Tree lift_tree(const Contraction& c, const Tree& t) {
  const Digraph& g = c.before;
  const int n = g.vertex_count();
  std::vector<int> seg_of(static_cast<std::size_t>(n), -1), rank(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < c.segments.size(); ++i)
    for (std::size_t j = 0; j < c.segments[i].size(); ++j) {
      seg_of[static_cast<std::size_t>(c.segments[i][j])] = static_cast<int>(i);
      rank[static_cast<std::size_t>(c.segments[i][j])] = static_cast<int>(j);
    }

  // Old arcs per new arc, best candidate first: head as early in its segment
  // as possible, tail as late as possible.
  std::map<Arc, Arc> chosen;
  auto better = [&](const Arc& a, const Arc& b) {
    auto key = [&](const Arc& x) {
      return std::make_tuple(rank[static_cast<std::size_t>(x.head)], -rank[static_cast<std::size_t>(x.tail)], x);
    };
    return key(a) < key(b);
  };
  for (const Arc& a : g.arcs()) {
    Arc b{c.to_new[static_cast<std::size_t>(a.tail)], c.to_new[static_cast<std::size_t>(a.head)]};
    if (b.tail == b.head) continue;
    auto [it, fresh] = chosen.try_emplace(b, a);
    if (!fresh && better(a, it->second)) it->second = a;
  }

  Tree out;
  out.orientation = t.orientation;
  for (const Arc& b : t.arcs) {
    auto it = chosen.find(b);
    if (it == chosen.end())
      throw ContractError("lift_tree: arc (" + std::to_string(b.tail) + "," + std::to_string(b.head) +
                          ") is not in the contracted digraph");
    out.arcs.insert(it->second);
  }
  const auto vertices = t.vertices();
  for (const auto& seg : c.segments) {
    if (!vertices.contains(c.to_new[static_cast<std::size_t>(seg.front())])) continue;
    for (std::size_t j = 0; j + 1 < seg.size(); ++j) out.arcs.insert({seg[j], seg[j + 1]});
  }

  out.root = -1;
  for (Vertex v = 0; v < n && out.root < 0; ++v) {
    if (c.to_new[static_cast<std::size_t>(v)] != t.root) continue;
    const int s = seg_of[static_cast<std::size_t>(v)];
    if (s < 0)
      out.root = v;
    else
      out.root = t.orientation == Orientation::out ? c.segments[static_cast<std::size_t>(s)].front()
                                                   : c.segments[static_cast<std::size_t>(s)].back();
  }
  return out;
}

}  // namespace arbor
