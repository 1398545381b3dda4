#include "arbor/flow.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace arbor {

namespace {

// Unit-capacity residual network. Vertex v of the digraph becomes the pair
// in(v) = 2v, out(v) = 2v + 1 joined by an arc carrying the vertex capacity.
class SplitNetwork {
 public:
  SplitNetwork(const Digraph& d, Vertex source, Vertex sink) : adj_(2 * static_cast<std::size_t>(d.vertex_count())) {
    for (Vertex v = 0; v < d.vertex_count(); ++v)
      add_edge(in(v), out(v), (v == source || v == sink) ? 2 : 1);
    for (const Arc& a : d.arcs()) {
      // Paths never need to re-enter the source.
      if (a.head == source) continue;
      add_edge(out(a.tail), in(a.head), 1);
    }
  }

  static int in(Vertex v) { return 2 * v; }
  static int out(Vertex v) { return 2 * v + 1; }

  int max_flow(int s, int t, int limit) {
    int flow = 0;
    while (flow < limit && augment(s, t)) ++flow;
    return flow;
  }

  // Peels one unit s->t path off the current flow; returns the digraph
  // vertices in order.
  Path take_path(int s, int t) {
    Path p{s / 2};
    int node = s;
    while (node != t) {
      bool moved = false;
      for (Edge& e : adj_[static_cast<std::size_t>(node)]) {
        if (e.original == 0 || e.cap >= e.original) continue;
        ++e.cap;  // consume one unit of flow on this edge
        node = e.to;
        if (node % 2 == 0) p.push_back(node / 2);
        moved = true;
        break;
      }
      if (!moved) throw InternalError("flow decomposition got stuck");
    }
    return p;
  }

 private:
  struct Edge {
    int to;
    int cap;
    int original;
    std::size_t rev;
  };

  void add_edge(int u, int v, int cap) {
    auto& fu = adj_[static_cast<std::size_t>(u)];
    auto& fv = adj_[static_cast<std::size_t>(v)];
    fu.push_back({v, cap, cap, fv.size()});
    fv.push_back({u, 0, 0, fu.size() - 1});
  }

  // BFS in increasing node order; lowest-id augmenting path wins ties.
  bool augment(int s, int t) {
    std::vector<std::pair<int, std::size_t>> parent(adj_.size(), {-1, 0});
    std::vector<bool> seen(adj_.size(), false);
    std::deque<int> queue{s};
    seen[static_cast<std::size_t>(s)] = true;
    while (!queue.empty() && !seen[static_cast<std::size_t>(t)]) {
      int u = queue.front();
      queue.pop_front();
      auto& edges = adj_[static_cast<std::size_t>(u)];
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.cap <= 0 || seen[static_cast<std::size_t>(e.to)]) continue;
        seen[static_cast<std::size_t>(e.to)] = true;
        parent[static_cast<std::size_t>(e.to)] = {u, i};
        queue.push_back(e.to);
      }
    }
    if (!seen[static_cast<std::size_t>(t)]) return false;
    for (int v = t; v != s;) {
      auto [u, i] = parent[static_cast<std::size_t>(v)];
      Edge& e = adj_[static_cast<std::size_t>(u)][i];
      e.cap -= 1;
      adj_[static_cast<std::size_t>(v)][e.rev].cap += 1;
      v = u;
    }
    return true;
  }

  std::vector<std::vector<Edge>> adj_;
};

void require_vertex(const Digraph& d, Vertex v, const char* who) {
  if (!d.is_vertex(v)) throw ContractError(std::string(who) + ": vertex out of range");
}

}  // namespace

int internally_disjoint_path_count(const Digraph& d, Vertex r, Vertex v, int cap) {
  require_vertex(d, r, "internally_disjoint_path_count");
  require_vertex(d, v, "internally_disjoint_path_count");
  if (r == v) throw ContractError("internally_disjoint_path_count: r == v");
  SplitNetwork net(d, r, v);
  return net.max_flow(SplitNetwork::out(r), SplitNetwork::in(v), cap);
}

VertexSet bi_reachable_set(const Digraph& d, Vertex r) {
  require_vertex(d, r, "bi_reachable_set");
  VertexSet result(d.vertex_count());
  const VertexSet reach = reachable_set(d, r);
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    if (v == r || !reach.contains(v)) continue;
    if (internally_disjoint_path_count(d, r, v, 2) >= 2) result.insert(v);
  }
  return result;
}

VertexSet diblock(const Digraph& d, Vertex r) {
  require_vertex(d, r, "diblock");
  if (d.vertex_count() < 2) throw ContractError("diblock: digraph needs at least two vertices");
  if (!has_rooted_out_branching(d, r))
    throw ContractError("diblock: not every vertex is reachable from the root");
  VertexSet block = bi_reachable_set(d, r);
  block.insert(r);
  for (Vertex w : d.out_neighbors(r)) block.insert(w);
  return block;
}

DisjointPathPair two_disjoint_paths(const Digraph& d, Vertex r, Vertex x, Vertex y) {
  const VertexSet block = diblock(d, r);
  if (x == y) throw ContractError("two_disjoint_paths: x and y must differ");
  if (!block.contains(x) || !block.contains(y))
    throw ContractError("two_disjoint_paths: endpoints must lie in the diblock");

  if (r == x || r == y) {
    Vertex other = (r == x) ? y : x;
    Path trivial{r};
    Path reach = *bfs_path(d, r, other);
    return r == x ? DisjointPathPair{trivial, reach} : DisjointPathPair{reach, trivial};
  }

  // Auxiliary sink z with arcs xz and yz.
  const Vertex z = d.vertex_count();
  std::vector<Arc> arcs = d.arcs();
  arcs.push_back({x, z});
  arcs.push_back({y, z});
  Digraph aux(d.vertex_count() + 1, std::move(arcs));
  SplitNetwork net(aux, r, z);
  const int flow = net.max_flow(SplitNetwork::out(r), SplitNetwork::in(z), 2);
  if (flow < 2) throw InternalError("two_disjoint_paths: diblock pair without two disjoint paths");

  DisjointPathPair pair;
  for (int i = 0; i < 2; ++i) {
    Path p = net.take_path(SplitNetwork::out(r), SplitNetwork::in(z));
    p.pop_back();  // drop z
    if (p.back() == x)
      pair.first = std::move(p);
    else
      pair.second = std::move(p);
  }
  if (pair.first.empty() || pair.second.empty())
    throw InternalError("two_disjoint_paths: both flow paths end in the same vertex");
  return pair;
}

DisjointPathPair disjoint_paths_to(const Digraph& d, Vertex r, Vertex v) {
  require_vertex(d, r, "disjoint_paths_to");
  require_vertex(d, v, "disjoint_paths_to");
  if (r == v) throw ContractError("disjoint_paths_to: r == v");
  SplitNetwork net(d, r, v);
  const int flow = net.max_flow(SplitNetwork::out(r), SplitNetwork::in(v), 2);
  if (flow == 2)
    return {net.take_path(SplitNetwork::out(r), SplitNetwork::in(v)),
            net.take_path(SplitNetwork::out(r), SplitNetwork::in(v))};
  if (d.has_arc(r, v)) return {Path{r, v}, Path{r, v}};
  throw ContractError("disjoint_paths_to: target is neither bi-reachable nor an out-neighbour");
}

bool is_disjoint_path_pair(const Digraph& d, const DisjointPathPair& pair) {
  const Path& p = pair.first;
  const Path& q = pair.second;
  if (!is_simple_path(d, p) || !is_simple_path(d, q)) return false;
  if (p.front() != q.front()) return false;
  std::set<Vertex> allowed{p.front()};
  if (p.back() == q.back()) allowed.insert(p.back());
  std::set<Vertex> in_p(p.begin(), p.end());
  for (Vertex v : q)
    if (in_p.contains(v) && !allowed.contains(v)) return false;
  return true;
}

}  // namespace arbor
