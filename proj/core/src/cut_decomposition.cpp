#include "arbor/cut_decomposition.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "arbor/flow.hpp"
#include <nlohmann/json.hpp>

namespace arbor {

std::map<Vertex, VertexSet> bottleneck_partition(const Digraph& d, Vertex r, const VertexSet& block) {
  if (!block.contains(r)) throw ContractError("bottleneck_partition: root not in block");
  const int n = d.vertex_count();
  std::vector<Vertex> owner(static_cast<std::size_t>(n), -1);
  std::map<Vertex, VertexSet> parts;
  for (Vertex x : block.members()) {
    if (x == r) continue;
    // Everything reachable from x without touching the block again.
    std::vector<Vertex> stack{x};
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    seen[static_cast<std::size_t>(x)] = true;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : d.out_neighbors(v)) {
        if (block.contains(w) || seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
        Vertex& o = owner[static_cast<std::size_t>(w)];
        if (o != -1 && o != x)
          throw InternalError("bottleneck_partition: vertex " + std::to_string(w) +
                              " hangs below two bottlenecks");
        o = x;
        auto [it, fresh] = parts.try_emplace(x, VertexSet(n));
        it->second.insert(w);
      }
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (!block.contains(v) && owner[static_cast<std::size_t>(v)] == -1)
      throw ContractError("bottleneck_partition: vertex " + std::to_string(v) + " unreachable from root");
  return parts;
}

std::optional<Vertex> CutDecomposition::parent(Vertex x) const {
  auto it = parent_.find(x);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Vertex>& CutDecomposition::children(Vertex x) const {
  auto it = children_.find(x);
  if (it == children_.end()) throw ContractError("CutDecomposition: " + std::to_string(x) + " is not a node");
  return it->second;
}

const VertexSet& CutDecomposition::diblock(Vertex x) const {
  auto it = diblocks_.find(x);
  if (it == diblocks_.end()) throw ContractError("CutDecomposition: " + std::to_string(x) + " is not a node");
  return it->second;
}

const VertexSet& CutDecomposition::subtree_vertices(Vertex x) const {
  auto it = subtree_.find(x);
  if (it == subtree_.end()) throw ContractError("CutDecomposition: " + std::to_string(x) + " is not a node");
  return it->second;
}

int CutDecomposition::depth(Vertex x) const {
  auto it = depth_.find(x);
  if (it == depth_.end()) throw ContractError("CutDecomposition: " + std::to_string(x) + " is not a node");
  return it->second;
}

bool CutDecomposition::is_ancestor(Vertex a, Vertex x) const {
  if (!is_node(a) || !is_node(x)) return false;
  for (std::optional<Vertex> y = x; y; y = parent(*y))
    if (*y == a) return true;
  return false;
}

std::vector<Vertex> CutDecomposition::tree_path(Vertex x) const {
  if (!is_node(x)) throw ContractError("tree_path: " + std::to_string(x) + " is not a node");
  std::vector<Vertex> path;
  for (std::optional<Vertex> y = x; y; y = parent(*y)) path.push_back(*y);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Vertex> CutDecomposition::subtree_nodes(Vertex x) const {
  std::vector<Vertex> out;
  std::vector<Vertex> stack{x};
  while (!stack.empty()) {
    Vertex y = stack.back();
    stack.pop_back();
    out.push_back(y);
    const auto& ch = children(y);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

Vertex CutDecomposition::home_node(Vertex v) const {
  if (is_node(v)) return v;
  for (Vertex x : preorder_)
    if (diblock(x).contains(v)) return x;
  throw ContractError("home_node: vertex " + std::to_string(v) + " lies in no diblock");
}

void CutDecomposition::finalize() {
  children_.clear();
  for (const auto& [x, block] : diblocks_) children_[x];
  for (const auto& [child, par] : parent_) children_[par].push_back(child);
  for (auto& [x, ch] : children_) std::sort(ch.begin(), ch.end());

  preorder_.clear();
  depth_.clear();
  height_ = 0;
  std::vector<std::pair<Vertex, int>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto [x, dep] = stack.back();
    stack.pop_back();
    preorder_.push_back(x);
    depth_[x] = dep;
    height_ = std::max(height_, dep + 1);
    const auto& ch = children_[x];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(*it, dep + 1);
  }

  subtree_.clear();
  for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
    VertexSet all = diblocks_.at(*it);
    for (Vertex c : children_[*it]) all |= subtree_.at(c);
    subtree_.insert_or_assign(*it, std::move(all));
  }
}

CutDecomposition CutDecomposition::from_parts(Digraph host, Vertex root, std::map<Vertex, Vertex> parent,
                                              std::map<Vertex, VertexSet> diblocks) {
  CutDecomposition dec;
  dec.host_ = std::move(host);
  dec.root_ = root;
  dec.parent_ = std::move(parent);
  dec.diblocks_ = std::move(diblocks);
  if (!dec.diblocks_.contains(root)) throw ContractError("from_parts: root has no diblock");
  for (const auto& [c, p] : dec.parent_)
    if (!dec.diblocks_.contains(c) || !dec.diblocks_.contains(p))
      throw ContractError("from_parts: parent map names a vertex without diblock");
  dec.finalize();
  if (dec.preorder_.size() != dec.diblocks_.size())
    throw ContractError("from_parts: parent map is not a tree rooted at the root");
  return dec;
}

CutDecomposition build_cut_decomposition(const Digraph& d, Vertex r) {
  if (!d.is_vertex(r)) throw ContractError("build_cut_decomposition: root out of range");
  if (d.vertex_count() < 2) throw ContractError("build_cut_decomposition: needs at least two vertices");
  if (!has_rooted_out_branching(d, r))
    throw ContractError("build_cut_decomposition: not every vertex is reachable from the root");

  CutDecomposition dec;
  dec.host_ = d;
  dec.root_ = r;
  const int n = d.vertex_count();

  // Work list of (node, vertex set of the subgraph it roots).
  std::deque<std::pair<Vertex, VertexSet>> work;
  VertexSet everything(n);
  for (Vertex v = 0; v < n; ++v) everything.insert(v);
  work.emplace_back(r, std::move(everything));

  while (!work.empty()) {
    auto [x, members] = std::move(work.front());
    work.pop_front();
    InducedSubgraph sub = induced_subgraph(d, members);
    const Vertex local_root = sub.from_host[static_cast<std::size_t>(x)];
    VertexSet local_block = arbor::diblock(sub.graph, local_root);
    auto parts = bottleneck_partition(sub.graph, local_root, local_block);

    VertexSet block(n);
    for (Vertex v : local_block.members()) block.insert(sub.to_host[static_cast<std::size_t>(v)]);
    dec.diblocks_.emplace(x, std::move(block));

    for (const auto& [local_child, local_part] : parts) {
      Vertex child = sub.to_host[static_cast<std::size_t>(local_child)];
      VertexSet child_members(n);
      child_members.insert(child);
      for (Vertex v : local_part.members()) child_members.insert(sub.to_host[static_cast<std::size_t>(v)]);
      dec.parent_.emplace(child, x);
      work.emplace_back(child, std::move(child_members));
    }
  }
  dec.finalize();
  return dec;
}

std::string to_string(DecompositionClause c) {
  switch (c) {
    case DecompositionClause::partition: return "partition";
    case DecompositionClause::intersection: return "intersection";
    case DecompositionClause::arc_placement: return "arc-placement";
    case DecompositionClause::entry: return "entry";
    case DecompositionClause::siblings: return "siblings";
    case DecompositionClause::cover: return "cover";
  }
  return "unknown";
}

namespace {

std::string arc_str(const Arc& a) {
  return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
}

}  // namespace

std::vector<DecompositionViolation> validate(const CutDecomposition& dec) {
  std::vector<DecompositionViolation> out;
  const Digraph& d = dec.host();
  const int n = d.vertex_count();
  const auto& nodes = dec.nodes();
  auto report = [&out](DecompositionClause c, std::string detail) { out.push_back({c, std::move(detail)}); };

  // partition
  std::vector<int> owners(static_cast<std::size_t>(n), 0);
  for (Vertex x : nodes) {
    VertexSet rest = dec.diblock(x);
    rest.erase(x);
    if (rest.empty()) report(DecompositionClause::partition, "B_" + std::to_string(x) + " \\ {x} is empty");
    for (Vertex v : rest.members()) ++owners[static_cast<std::size_t>(v)];
  }
  for (Vertex v = 0; v < n; ++v) {
    int expected = v == dec.root() ? 0 : 1;
    if (owners[static_cast<std::size_t>(v)] != expected)
      report(DecompositionClause::partition,
             "vertex " + std::to_string(v) + " lies in " + std::to_string(owners[static_cast<std::size_t>(v)]) +
                 " of the sets B_x \\ {x}");
  }

  // intersection
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      Vertex x = nodes[i], y = nodes[j];
      std::vector<Vertex> common;
      for (Vertex v : dec.diblock(x).members())
        if (dec.diblock(y).contains(v)) common.push_back(v);
      std::vector<Vertex> expected;
      if (dec.parent(y) == x) expected = {y};
      if (dec.parent(x) == y) expected = {x};
      if (common != expected)
        report(DecompositionClause::intersection,
               "B_" + std::to_string(x) + " and B_" + std::to_string(y) + " share " + std::to_string(common.size()) +
                   " vertices, expected " + std::to_string(expected.size()));
    }

  // cover
  VertexSet covered(n);
  for (Vertex x : nodes) covered |= dec.diblock(x);
  for (Vertex v = 0; v < n; ++v)
    if (!covered.contains(v)) report(DecompositionClause::cover, "vertex " + std::to_string(v) + " uncovered");

  // arc placement
  for (const Arc& a : d.arcs()) {
    bool ok = false;
    for (Vertex x : nodes) {
      const VertexSet& bx = dec.diblock(x);
      if (bx.contains(a.tail) && bx.contains(a.head)) {
        ok = true;
        break;
      }
    }
    for (Vertex y : nodes) {
      if (ok) break;
      if (!dec.diblock(y).contains(a.tail)) continue;
      for (Vertex x : nodes)
        if (x != y && dec.is_ancestor(x, y) && dec.diblock(x).contains(a.head)) {
          ok = true;
          break;
        }
    }
    if (!ok) report(DecompositionClause::arc_placement, "arc " + arc_str(a) + " is neither inside nor backwards");
  }

  // entry and siblings
  for (Vertex x : nodes) {
    const auto& ch = dec.children(x);
    for (Vertex y : ch) {
      const VertexSet& below = dec.subtree_vertices(y);
      for (const Arc& a : d.arcs()) {
        if (below.contains(a.tail) || !below.contains(a.head)) continue;
        // y itself also sits in B_x, so arcs into it may come from a sibling subtree
        // (a back arc towards x); everything else must go through y
        if (a.head != y)
          report(DecompositionClause::entry,
                 "arc " + arc_str(a) + " enters B*_" + std::to_string(y) + " other than through " +
                     std::to_string(y));
      }
    }
    for (std::size_t i = 0; i < ch.size(); ++i)
      for (std::size_t j = 0; j < ch.size(); ++j) {
        if (i == j) continue;
        const VertexSet& a_side = dec.subtree_vertices(ch[i]);
        const VertexSet& b_side = dec.subtree_vertices(ch[j]);
        for (const Arc& a : d.arcs())
          if (a_side.contains(a.tail) && b_side.contains(a.head) && a.tail != ch[i] && a.head != ch[j])
            report(DecompositionClause::siblings, "arc " + arc_str(a) + " joins sibling subtrees of " +
                                                      std::to_string(ch[i]) + " and " + std::to_string(ch[j]));
      }
  }
  return out;
}

ArcSet forbidden_back_arcs(const CutDecomposition& dec) {
  ArcSet r;
  for (const Arc& a : dec.host().arcs())
    if (dec.is_node(a.head) && dec.subtree_vertices(a.head).contains(a.tail)) r.insert(a);
  return r;
}

std::vector<std::vector<Vertex>> fins(const CutDecomposition& dec, const std::vector<Vertex>& tree_path) {
  for (std::size_t i = 1; i < tree_path.size(); ++i)
    if (dec.parent(tree_path[i]) != tree_path[i - 1]) throw ContractError("fins: path is not monotone");
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < tree_path.size(); ++i) {
    auto all = dec.subtree_nodes(tree_path[i]);
    if (i + 1 < tree_path.size()) {
      auto below = dec.subtree_nodes(tree_path[i + 1]);
      std::sort(below.begin(), below.end());
      std::erase_if(all, [&](Vertex y) { return std::binary_search(below.begin(), below.end(), y); });
    }
    std::sort(all.begin(), all.end());
    out.push_back(std::move(all));
  }
  return out;
}

VertexSet diblock_union(const CutDecomposition& dec, const std::vector<Vertex>& nodes) {
  VertexSet u(dec.host().vertex_count());
  for (Vertex x : nodes) u |= dec.diblock(x);
  return u;
}

bool check_bottleneck_order(const CutDecomposition& dec, const Path& p, Vertex v) {
  if (p.empty() || p.front() != dec.root() || p.back() != v) return false;
  const auto expected = dec.tree_path(dec.home_node(v));
  // other bottlenecks may show up too (siblings inside a diblock), so only the
  // tree path has to appear, in order; the fin check catches the rest
  std::vector<std::size_t> positions;
  std::size_t next = 0;
  for (std::size_t i = 0; i < p.size() && next < expected.size(); ++i)
    if (p[i] == expected[next]) {
      positions.push_back(i);
      ++next;
    }
  if (next != expected.size()) return false;

  const auto fin_sets = fins(dec, expected);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const VertexSet region = diblock_union(dec, fin_sets[i]);
    std::size_t from = positions[i];
    std::size_t to = i + 1 < expected.size() ? positions[i + 1] : p.size();
    for (std::size_t j = from; j < to; ++j)
      if (!region.contains(p[j])) return false;
  }
  return true;
}

Path route_avoiding(const CutDecomposition& dec, Vertex from, Vertex u, const VertexSet& avoid) {
  const Digraph& d = dec.host();
  if (!d.is_vertex(u)) throw ContractError("route_avoiding: vertex out of range");
  if (!dec.is_ancestor(from, dec.home_node(u)))
    throw ContractError("route_avoiding: start is not an ancestor of the target's node");
  if (avoid.contains(u)) throw ContractError("route_avoiding: target lies in the avoided set");

  auto cost = [&avoid](const Path& p) {
    int c = 0;
    for (Vertex v : p)
      if (avoid.contains(v)) ++c;
    return c;
  };
  // One segment from bottleneck `top` to `to` inside the subgraph below `top`.
  auto segment = [&](Vertex top, Vertex to) {
    InducedSubgraph sub = induced_subgraph(d, dec.subtree_vertices(top));
    auto pair = disjoint_paths_to(sub.graph, sub.from_host[static_cast<std::size_t>(top)],
                                  sub.from_host[static_cast<std::size_t>(to)]);
    for (Path* p : {&pair.first, &pair.second})
      for (Vertex& v : *p) v = sub.to_host[static_cast<std::size_t>(v)];
    return cost(pair.second) < cost(pair.first) ? pair.second : pair.first;
  };

  auto nodes = dec.tree_path(dec.home_node(u));
  nodes.erase(nodes.begin(), std::find(nodes.begin(), nodes.end(), from));
  for (Vertex x : nodes)
    if (avoid.contains(x)) throw ContractError("route_avoiding: avoided set contains tree-path node " + std::to_string(x));
  Path path{from};
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) path = concat(path, segment(nodes[i], nodes[i + 1]));
  if (nodes.back() != u) path = concat(path, segment(nodes.back(), u));
  return path;
}

Path avoid_half_path(const CutDecomposition& dec, Vertex u, const VertexSet& avoid) {
  if (!dec.host().is_vertex(u)) throw ContractError("avoid_half_path: vertex out of range");
  if (avoid.contains(u)) throw ContractError("avoid_half_path: target lies in the avoided set");
  // only the bottlenecks above u are unavoidable; any other vertex, bottleneck
  // or not, sits on at most one of the two paths of each segment
  return route_avoiding(dec, dec.root(), u, avoid);
}

std::vector<DegeneratePath> degenerate_paths(const CutDecomposition& dec) {
  std::vector<DegeneratePath> out;
  for (Vertex x : dec.nodes()) {
    if (!dec.is_degenerate(x)) continue;
    auto par = dec.parent(x);
    if (par && dec.is_degenerate(*par)) continue;  // not the top of a maximal run
    DegeneratePath p;
    Vertex y = x;
    while (true) {
      p.nodes.push_back(y);
      Vertex child = dec.children(y).front();
      if (!dec.is_degenerate(child)) {
        p.host_path = p.nodes;
        p.host_path.push_back(child);
        break;
      }
      y = child;
    }
    out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(), [&](const DegeneratePath& a, const DegeneratePath& b) {
    int da = dec.depth(a.nodes.front()), db = dec.depth(b.nodes.front());
    if (da != db) return da < db;
    return a.nodes.front() < b.nodes.front();
  });
  return out;
}

namespace {

MonotonePath describe(const CutDecomposition& dec, std::vector<Vertex> nodes) {
  MonotonePath p;
  p.nodes = std::move(nodes);
  for (Vertex x : p.nodes) {
    bool deg = dec.is_degenerate(x);
    p.degenerate.push_back(deg);
    if (!deg) ++p.nondegenerate_count;
  }
  return p;
}

template <typename Better>
MonotonePath best_root_leaf_path(const CutDecomposition& dec, Better better) {
  std::optional<MonotonePath> best;
  for (Vertex x : dec.nodes()) {
    if (dec.is_internal(x)) continue;
    MonotonePath candidate = describe(dec, dec.tree_path(x));
    if (!best || better(candidate, *best)) best = std::move(candidate);
  }
  return *best;
}

}  // namespace

MonotonePath longest_monotone_path(const CutDecomposition& dec) {
  return best_root_leaf_path(dec, [](const MonotonePath& a, const MonotonePath& b) {
    return a.nodes.size() > b.nodes.size();
  });
}

MonotonePath most_nondegenerate_path(const CutDecomposition& dec) {
  return best_root_leaf_path(dec, [](const MonotonePath& a, const MonotonePath& b) {
    return a.nondegenerate_count > b.nondegenerate_count;
  });
}

std::string to_json(const CutDecomposition& dec) {
  nlohmann::ordered_json j;
  j["root"] = dec.root();
  j["parent"] = nlohmann::ordered_json::object();
  for (const auto& [child, par] : dec.parent_map()) j["parent"][std::to_string(child)] = par;
  j["diblocks"] = nlohmann::ordered_json::object();
  for (const auto& [x, block] : dec.diblock_map()) j["diblocks"][std::to_string(x)] = block.members();
  return j.dump();
}

std::string to_dot(const CutDecomposition& dec) {
  const Digraph& d = dec.host();
  const ArcSet back = forbidden_back_arcs(dec);
  std::ostringstream out;
  out << "digraph decomposition {\n";
  out << "  compound=true;\n";
  for (Vertex x : dec.nodes()) {
    out << "  subgraph cluster_" << x << " {\n";
    out << "    label=\"B_" << x << (dec.is_degenerate(x) ? " (degenerate)" : "") << "\";\n";
    for (Vertex v : dec.diblock(x).members())
      if (dec.home_node(v) == x) out << "    " << v << ";\n";
    out << "  }\n";
  }
  for (const Arc& a : d.arcs()) {
    out << "  " << a.tail << " -> " << a.head;
    if (back.contains(a)) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace arbor
