#include "arbor/digraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace arbor {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

VertexSet::VertexSet(int universe, const std::vector<Vertex>& members) : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

void VertexSet::insert(Vertex v) {
  if (v < 0 || v >= universe()) throw ContractError("VertexSet: vertex out of range");
  if (!bits_[static_cast<std::size_t>(v)]) {
    bits_[static_cast<std::size_t>(v)] = true;
    ++count_;
  }
}

void VertexSet::erase(Vertex v) {
  if (!contains(v)) return;
  bits_[static_cast<std::size_t>(v)] = false;
  --count_;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(count_));
  for (int v = 0; v < universe(); ++v)
    if (bits_[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  if (other.universe() != universe()) throw ContractError("VertexSet: universe mismatch");
  for (int v = 0; v < universe(); ++v)
    if (other.contains(v)) insert(v);
  return *this;
}

namespace {

std::uint64_t fnv1a(int n, const std::vector<Arc>& arcs) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(n));
  for (const Arc& a : arcs) {
    mix(static_cast<std::uint64_t>(a.tail));
    mix(static_cast<std::uint64_t>(a.head));
  }
  return h;
}

}  // namespace

Digraph::Digraph(int n, std::vector<Arc> arcs, bool dedup)
    : Digraph(n, std::move(arcs), {}, dedup) {}

Digraph::Digraph(int n, std::vector<Arc> arcs, std::vector<std::string> labels, bool dedup)
    : n_(n), arcs_(std::move(arcs)), labels_(std::move(labels)) {
  if (n < 0) throw ContractError("Digraph: negative vertex count");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw ContractError("Digraph: label count does not match vertex count");
  for (const Arc& a : arcs_) {
    if (!is_vertex(a.tail) || !is_vertex(a.head))
      throw ContractError("Digraph: arc endpoint out of range");
    if (a.tail == a.head) throw ContractError("Digraph: self-loop at " + std::to_string(a.tail));
  }
  std::sort(arcs_.begin(), arcs_.end());
  auto dup = std::adjacent_find(arcs_.begin(), arcs_.end());
  if (dup != arcs_.end()) {
    if (!dedup)
      throw ContractError("Digraph: duplicate arc (" + std::to_string(dup->tail) + "," +
                          std::to_string(dup->head) + ")");
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  }
  out_.assign(static_cast<std::size_t>(n), {});
  in_.assign(static_cast<std::size_t>(n), {});
  for (const Arc& a : arcs_) {
    out_[static_cast<std::size_t>(a.tail)].push_back(a.head);
    in_[static_cast<std::size_t>(a.head)].push_back(a.tail);
  }
  // Both adjacency lists come out sorted because arcs_ is sorted by tail.
  fingerprint_ = fnv1a(n_, arcs_);
}

std::size_t Digraph::check(Vertex v) const {
  if (!is_vertex(v)) throw ContractError("Digraph: vertex " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

bool Digraph::has_arc(Vertex tail, Vertex head) const {
  if (!is_vertex(tail) || !is_vertex(head)) return false;
  const auto& out = out_[static_cast<std::size_t>(tail)];
  return std::binary_search(out.begin(), out.end(), head);
}

std::optional<int> Digraph::arc_id(const Arc& a) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
  if (it == arcs_.end() || *it != a) return std::nullopt;
  return static_cast<int>(it - arcs_.begin());
}

std::string Digraph::label(Vertex v) const {
  check(v);
  if (labels_.empty()) return std::to_string(v);
  return labels_[static_cast<std::size_t>(v)];
}

std::vector<std::string> validate_adjacency(const Digraph& d) {
  std::vector<std::string> problems;
  std::size_t out_total = 0, in_total = 0;
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    const auto& out = d.out_neighbors(v);
    const auto& in = d.in_neighbors(v);
    out_total += out.size();
    in_total += in.size();
    if (!std::is_sorted(out.begin(), out.end()))
      problems.push_back("out-list of " + std::to_string(v) + " unsorted");
    for (Vertex w : out) {
      const auto& back = d.in_neighbors(w);
      if (!std::binary_search(back.begin(), back.end(), v))
        problems.push_back("arc (" + std::to_string(v) + "," + std::to_string(w) +
                           ") missing from in-list");
    }
    for (Vertex u : in)
      if (!d.has_arc(u, v))
        problems.push_back("in-list of " + std::to_string(v) + " names non-arc from " +
                           std::to_string(u));
  }
  if (out_total != d.arcs().size() || in_total != d.arcs().size())
    problems.push_back("adjacency sizes disagree with arc count");
  return problems;
}

Digraph reverse(const Digraph& d) {
  std::vector<Arc> arcs;
  arcs.reserve(d.arcs().size());
  for (const Arc& a : d.arcs()) arcs.push_back({a.head, a.tail});
  std::vector<std::string> labels;
  if (d.has_labels())
    for (Vertex v = 0; v < d.vertex_count(); ++v) labels.push_back(d.label(v));
  return Digraph(d.vertex_count(), std::move(arcs), std::move(labels));
}

Digraph with_arcs(const Digraph& d, const std::vector<Arc>& extra) {
  std::vector<Arc> arcs = d.arcs();
  arcs.insert(arcs.end(), extra.begin(), extra.end());
  return Digraph(d.vertex_count(), std::move(arcs), /*dedup=*/true);
}

Digraph without_arcs(const Digraph& d, const ArcSet& removed) {
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs())
    if (!removed.contains(a)) arcs.push_back(a);
  return Digraph(d.vertex_count(), std::move(arcs));
}

InducedSubgraph induced_subgraph(const Digraph& d, const VertexSet& keep) {
  InducedSubgraph sub;
  sub.from_host.assign(static_cast<std::size_t>(d.vertex_count()), -1);
  for (Vertex v : keep.members()) {
    sub.from_host[static_cast<std::size_t>(v)] = static_cast<Vertex>(sub.to_host.size());
    sub.to_host.push_back(v);
  }
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs())
    if (keep.contains(a.tail) && keep.contains(a.head))
      arcs.push_back({sub.from_host[static_cast<std::size_t>(a.tail)],
                      sub.from_host[static_cast<std::size_t>(a.head)]});
  sub.graph = Digraph(static_cast<int>(sub.to_host.size()), std::move(arcs));
  return sub;
}

namespace {

VertexSet search(const Digraph& d, Vertex v, bool forward) {
  VertexSet seen(d.vertex_count());
  if (!d.is_vertex(v)) throw ContractError("reachable_set: vertex out of range");
  std::vector<Vertex> stack{v};
  seen.insert(v);
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : forward ? d.out_neighbors(x) : d.in_neighbors(x))
      if (!seen.contains(y)) {
        seen.insert(y);
        stack.push_back(y);
      }
  }
  return seen;
}

}  // namespace

VertexSet reachable_set(const Digraph& d, Vertex v) { return search(d, v, true); }
VertexSet co_reachable_set(const Digraph& d, Vertex v) { return search(d, v, false); }

bool has_rooted_out_branching(const Digraph& d, Vertex s) {
  return reachable_set(d, s).size() == d.vertex_count();
}

bool has_rooted_in_branching(const Digraph& d, Vertex t) {
  return co_reachable_set(d, t).size() == d.vertex_count();
}

bool is_strongly_connected(const Digraph& d) {
  if (d.vertex_count() == 0) return true;
  return has_rooted_out_branching(d, 0) && has_rooted_in_branching(d, 0);
}

std::optional<Path> bfs_path(const Digraph& d, Vertex from, Vertex to, const VertexSet* blocked) {
  if (!d.is_vertex(from) || !d.is_vertex(to)) throw ContractError("bfs_path: vertex out of range");
  std::vector<Vertex> parent(static_cast<std::size_t>(d.vertex_count()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(d.vertex_count()), false);
  std::deque<Vertex> queue{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    if (x == to) break;
    for (Vertex y : d.out_neighbors(x)) {
      if (seen[static_cast<std::size_t>(y)]) continue;
      if (blocked && y != to && blocked->contains(y)) continue;
      seen[static_cast<std::size_t>(y)] = true;
      parent[static_cast<std::size_t>(y)] = x;
      queue.push_back(y);
    }
  }
  if (!seen[static_cast<std::size_t>(to)]) return std::nullopt;
  Path p;
  for (Vertex x = to; x != -1; x = parent[static_cast<std::size_t>(x)]) {
    p.push_back(x);
    if (x == from) break;
  }
  std::reverse(p.begin(), p.end());
  return p;
}

Condensation scc_condensation(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<Vertex> stack;
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int counter = 0, comps = 0;

  // Iterative Tarjan: frames hold (vertex, next neighbour position).
  for (Vertex root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<std::pair<Vertex, std::size_t>> frames{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& out = d.out_neighbors(v);
      if (pos < out.size()) {
        Vertex w = out[pos++];
        auto wi = static_cast<std::size_t>(w);
        if (index[wi] == -1) {
          index[wi] = low[wi] = counter++;
          stack.push_back(w);
          on_stack[wi] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[wi]) {
          low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], index[wi]);
        }
        continue;
      }
      Vertex done = v;
      frames.pop_back();
      auto di = static_cast<std::size_t>(done);
      if (!frames.empty()) {
        auto pi = static_cast<std::size_t>(frames.back().first);
        low[pi] = std::min(low[pi], low[di]);
      }
      if (low[di] == index[di]) {
        Vertex x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(x)] = false;
          comp[static_cast<std::size_t>(x)] = comps;
        } while (x != done);
        ++comps;
      }
    }
  }
  // Tarjan emits components in reverse topological order.
  for (int& c : comp) c = comps - 1 - c;
  std::vector<Arc> dag_arcs;
  for (const Arc& a : d.arcs()) {
    int cu = comp[static_cast<std::size_t>(a.tail)], cv = comp[static_cast<std::size_t>(a.head)];
    if (cu != cv) dag_arcs.push_back({cu, cv});
  }
  return Condensation{std::move(comp), comps, Digraph(comps, std::move(dag_arcs), true)};
}

bool is_acyclic(const Digraph& d) {
  return scc_condensation(d).component_count == d.vertex_count();
}

bool is_simple_path(const Digraph& d, const Path& p) {
  if (p.empty()) return false;
  std::set<Vertex> seen;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!d.is_vertex(p[i]) || !seen.insert(p[i]).second) return false;
    if (i > 0 && !d.has_arc(p[i - 1], p[i])) return false;
  }
  return true;
}

Path infix(const Path& p, Vertex from, Vertex to) {
  auto a = std::find(p.begin(), p.end(), from);
  auto b = std::find(p.begin(), p.end(), to);
  if (a == p.end() || b == p.end() || b < a) throw ContractError("infix: endpoints not in order");
  return Path(a, b + 1);
}

Path concat(const Path& p, const Path& q) {
  if (p.empty()) return q;
  if (q.empty()) return p;
  if (p.back() != q.front()) throw ContractError("concat: paths do not meet");
  Path out = p;
  out.insert(out.end(), q.begin() + 1, q.end());
  return out;
}

}  // namespace arbor
