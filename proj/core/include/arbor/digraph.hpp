#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

using Vertex = int;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Ordered set of arcs; iteration is by (tail, head).
using ArcSet = std::set<Arc>;

// A simple directed path given as its vertex sequence.
using Path = std::vector<Vertex>;

// Raised when a caller violates a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when an internal guarantee fails; always indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Dense bitset over the vertices of one host digraph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe) : bits_(static_cast<std::size_t>(universe), false) {}
  VertexSet(int universe, const std::vector<Vertex>& members);

  int universe() const { return static_cast<int>(bits_.size()); }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Vertex v) const {
    return v >= 0 && v < universe() && bits_[static_cast<std::size_t>(v)];
  }
  void insert(Vertex v);
  void erase(Vertex v);

  // Members in increasing order.
  std::vector<Vertex> members() const;

  VertexSet& operator|=(const VertexSet& other);
  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.bits_ == b.bits_;
  }

 private:
  std::vector<bool> bits_;
  int count_ = 0;
};

// Immutable simple digraph with dense ids 0..n-1.
//
// Arcs are kept sorted by (tail, head); the position of an arc in arcs() is
// its arc id. out_neighbors/in_neighbors are sorted by vertex id.
class Digraph {
 public:
  Digraph() = default;

  // Throws ContractError on self-loops, out-of-range ids or duplicates
  // (unless dedup is set, in which case duplicates collapse).
  Digraph(int n, std::vector<Arc> arcs, bool dedup = false);
  Digraph(int n, std::vector<Arc> arcs, std::vector<std::string> labels, bool dedup = false);

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_[check(v)]; }
  const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_[check(v)]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_neighbors(v).size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_neighbors(v).size()); }

  bool has_arc(Vertex tail, Vertex head) const;
  bool has_arc(const Arc& a) const { return has_arc(a.tail, a.head); }
  std::optional<int> arc_id(const Arc& a) const;

  bool is_vertex(Vertex v) const { return v >= 0 && v < n_; }

  // Label of v; the decimal id when no label was supplied.
  std::string label(Vertex v) const;
  bool has_labels() const { return !labels_.empty(); }

  // Hash of (n, arcs); equal digraphs have equal fingerprints.
  std::uint64_t fingerprint() const { return fingerprint_; }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  std::size_t check(Vertex v) const;

  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::vector<std::string> labels_;
  std::uint64_t fingerprint_ = 0;
};

// Returns a description of every inconsistency between the arc list and the
// two adjacency structures; empty for every well-formed digraph.
std::vector<std::string> validate_adjacency(const Digraph& d);

Digraph reverse(const Digraph& d);

// Digraph with the given arcs added (existing arcs are kept once).
Digraph with_arcs(const Digraph& d, const std::vector<Arc>& extra);
// Digraph with the given arcs removed; absent arcs are ignored.
Digraph without_arcs(const Digraph& d, const ArcSet& removed);

struct InducedSubgraph {
  Digraph graph;
  std::vector<Vertex> to_host;    // subgraph id -> host id
  std::vector<Vertex> from_host;  // host id -> subgraph id, or -1
};

// Subgraph induced by `keep`; vertices are renumbered in increasing host order.
InducedSubgraph induced_subgraph(const Digraph& d, const VertexSet& keep);

VertexSet reachable_set(const Digraph& d, Vertex v);
// Vertices that can reach v.
VertexSet co_reachable_set(const Digraph& d, Vertex v);

bool has_rooted_out_branching(const Digraph& d, Vertex s);
bool has_rooted_in_branching(const Digraph& d, Vertex t);
bool is_strongly_connected(const Digraph& d);

// Shortest v->w path by BFS that scans neighbours in increasing id order.
// Vertices with blocked[x] set are never entered (the endpoints excepted).
std::optional<Path> bfs_path(const Digraph& d, Vertex from, Vertex to,
                             const VertexSet* blocked = nullptr);

struct Condensation {
  std::vector<int> component;  // vertex -> component id (topological order)
  int component_count = 0;
  Digraph dag;                 // one vertex per component
};

// Strongly connected components via Tarjan; components are numbered so that
// every arc of the condensation goes from a lower to a higher id.
Condensation scc_condensation(const Digraph& d);

bool is_acyclic(const Digraph& d);

// True iff p is a non-empty simple path of d.
bool is_simple_path(const Digraph& d, const Path& p);
Path infix(const Path& p, Vertex from, Vertex to);
// Concatenation of p and q where p ends at the vertex q starts with.
Path concat(const Path& p, const Path& q);

}  // namespace arbor
