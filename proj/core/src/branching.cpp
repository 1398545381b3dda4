#include "arbor/branching.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace arbor {

std::string to_string(Orientation o) { return o == Orientation::out ? "out" : "in"; }

std::set<Vertex> Tree::vertices() const {
  std::set<Vertex> vs{root};
  for (const Arc& a : arcs) {
    vs.insert(a.tail);
    vs.insert(a.head);
  }
  return vs;
}

std::vector<Vertex> Tree::leaves() const {
  std::set<Vertex> busy;
  for (const Arc& a : arcs) busy.insert(orientation == Orientation::out ? a.tail : a.head);
  std::vector<Vertex> out;
  for (Vertex v : vertices())
    if (!busy.contains(v)) out.push_back(v);
  return out;
}

bool Tree::contains(Vertex v) const {
  if (v == root) return true;
  return std::any_of(arcs.begin(), arcs.end(), [v](const Arc& a) { return a.tail == v || a.head == v; });
}

Branching make_branching(const Digraph& d, Tree tree) {
  Branching b;
  static_cast<Tree&>(b) = std::move(tree);
  b.host = d.fingerprint();
  return b;
}

int count_leaves(const Tree& t) { return static_cast<int>(t.leaves().size()); }

bool is_tree_of(const Digraph& d, const Tree& t) {
  if (!d.is_vertex(t.root)) return false;
  const bool out = t.orientation == Orientation::out;
  std::map<Vertex, int> indeg;
  std::map<Vertex, std::vector<Vertex>> next;
  for (const Arc& a : t.arcs) {
    if (!d.has_arc(a)) return false;
    Vertex from = out ? a.tail : a.head;
    Vertex to = out ? a.head : a.tail;
    if (++indeg[to] > 1) return false;
    next[from].push_back(to);
  }
  if (indeg.contains(t.root)) return false;
  // Every vertex must be reached from the root along tree arcs.
  std::set<Vertex> seen{t.root};
  std::vector<Vertex> stack{t.root};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : next[v])
      if (seen.insert(w).second) stack.push_back(w);
  }
  return seen.size() == t.arcs.size() + 1;
}

bool is_branching_of(const Digraph& d, const Branching& b) {
  return b.host == d.fingerprint() && is_tree_of(d, b) &&
         static_cast<int>(b.arcs.size()) == d.vertex_count() - 1;
}

namespace {

struct WeightedArc {
  Vertex tail;
  Vertex head;
  Weight weight;
  int ref;  // index into the caller's arc list
};

// Chu-Liu/Edmonds on n vertices. Returns indices (into `arcs`) of a
// maximum-weight spanning arborescence rooted at `root`.
std::optional<std::vector<int>> edmonds(int n, Vertex root, const std::vector<WeightedArc>& arcs) {
  std::vector<int> best(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    const auto& a = arcs[static_cast<std::size_t>(i)];
    if (a.head == root || a.head == a.tail) continue;
    int& b = best[static_cast<std::size_t>(a.head)];
    if (b == -1 || a.weight > arcs[static_cast<std::size_t>(b)].weight) b = i;
  }
  for (Vertex v = 0; v < n; ++v)
    if (v != root && best[static_cast<std::size_t>(v)] == -1) return std::nullopt;

  // Find cycles of the best-in-arc functional graph.
  std::vector<int> cycle_of(static_cast<std::size_t>(n), -1);
  std::vector<int> walk_mark(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> cycles;
  for (Vertex start = 0; start < n; ++start) {
    Vertex v = start;
    while (v != root && walk_mark[static_cast<std::size_t>(v)] == -1) {
      walk_mark[static_cast<std::size_t>(v)] = start;
      v = arcs[static_cast<std::size_t>(best[static_cast<std::size_t>(v)])].tail;
    }
    if (v != root && walk_mark[static_cast<std::size_t>(v)] == start &&
        cycle_of[static_cast<std::size_t>(v)] == -1) {
      std::vector<Vertex> cycle;
      Vertex u = v;
      do {
        cycle_of[static_cast<std::size_t>(u)] = static_cast<int>(cycles.size());
        cycle.push_back(u);
        u = arcs[static_cast<std::size_t>(best[static_cast<std::size_t>(u)])].tail;
      } while (u != v);
      cycles.push_back(std::move(cycle));
    }
  }

  if (cycles.empty()) {
    std::vector<int> chosen;
    for (Vertex v = 0; v < n; ++v)
      if (v != root) chosen.push_back(best[static_cast<std::size_t>(v)]);
    return chosen;
  }

  // Contract every cycle into a single vertex.
  std::vector<Vertex> comp(static_cast<std::size_t>(n), -1);
  int next_id = 0;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    for (Vertex u : cycles[c]) comp[static_cast<std::size_t>(u)] = next_id;
    ++next_id;
  }
  for (Vertex v = 0; v < n; ++v)
    if (comp[static_cast<std::size_t>(v)] == -1) comp[static_cast<std::size_t>(v)] = next_id++;

  std::vector<WeightedArc> contracted;
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    const auto& a = arcs[static_cast<std::size_t>(i)];
    Vertex cu = comp[static_cast<std::size_t>(a.tail)], cv = comp[static_cast<std::size_t>(a.head)];
    if (cu == cv) continue;
    Weight w = a.weight;
    if (cycle_of[static_cast<std::size_t>(a.head)] != -1)
      w -= arcs[static_cast<std::size_t>(best[static_cast<std::size_t>(a.head)])].weight;
    contracted.push_back({cu, cv, w, i});
  }
  auto sub = edmonds(next_id, comp[static_cast<std::size_t>(root)], contracted);
  if (!sub) return std::nullopt;

  std::vector<int> chosen;
  std::vector<Vertex> entry(cycles.size(), -1);
  for (int j : *sub) {
    int i = contracted[static_cast<std::size_t>(j)].ref;
    chosen.push_back(i);
    int c = cycle_of[static_cast<std::size_t>(arcs[static_cast<std::size_t>(i)].head)];
    if (c != -1) entry[static_cast<std::size_t>(c)] = arcs[static_cast<std::size_t>(i)].head;
  }
  for (std::size_t c = 0; c < cycles.size(); ++c)
    for (Vertex u : cycles[c])
      if (u != entry[c]) chosen.push_back(best[static_cast<std::size_t>(u)]);
  return chosen;
}

void require_weights(const Digraph& d, const std::vector<Weight>& weights) {
  if (static_cast<int>(weights.size()) != d.arc_count())
    throw ContractError("branching: one weight per arc required");
}

}  // namespace

std::optional<Branching> max_weight_out_branching(const Digraph& d, const std::vector<Weight>& weights,
                                                  Vertex root) {
  require_weights(d, weights);
  if (!d.is_vertex(root)) throw ContractError("max_weight_out_branching: root out of range");
  if (!has_rooted_out_branching(d, root)) return std::nullopt;
  std::vector<WeightedArc> arcs;
  arcs.reserve(d.arcs().size());
  for (int i = 0; i < d.arc_count(); ++i) {
    const Arc& a = d.arcs()[static_cast<std::size_t>(i)];
    arcs.push_back({a.tail, a.head, weights[static_cast<std::size_t>(i)], i});
  }
  auto chosen = edmonds(d.vertex_count(), root, arcs);
  if (!chosen) return std::nullopt;
  Tree t{root, Orientation::out, {}};
  for (int i : *chosen) t.arcs.insert(d.arcs()[static_cast<std::size_t>(i)]);
  Branching b = make_branching(d, std::move(t));
  if (!is_branching_of(d, b)) throw InternalError("edmonds produced an invalid branching");
  return b;
}

std::optional<Branching> max_weight_in_branching(const Digraph& d, const std::vector<Weight>& weights,
                                                 Vertex root) {
  require_weights(d, weights);
  Digraph rev = reverse(d);
  std::vector<Weight> rev_weights(weights.size());
  for (int i = 0; i < d.arc_count(); ++i) {
    const Arc& a = d.arcs()[static_cast<std::size_t>(i)];
    rev_weights[static_cast<std::size_t>(*rev.arc_id({a.head, a.tail}))] = weights[static_cast<std::size_t>(i)];
  }
  auto out = max_weight_out_branching(rev, rev_weights, root);
  if (!out) return std::nullopt;
  Tree t{root, Orientation::in, {}};
  for (const Arc& a : out->arcs) t.arcs.insert({a.head, a.tail});
  return make_branching(d, std::move(t));
}

Weight total_weight(const Digraph& d, const std::vector<Weight>& weights, const Tree& t) {
  require_weights(d, weights);
  Weight sum = 0;
  for (const Arc& a : t.arcs) {
    auto id = d.arc_id(a);
    if (!id) throw ContractError("total_weight: tree arc not in digraph");
    sum += weights[static_cast<std::size_t>(*id)];
  }
  return sum;
}

std::optional<Branching> any_out_branching(const Digraph& d, Vertex root) {
  return max_weight_out_branching(d, std::vector<Weight>(static_cast<std::size_t>(d.arc_count()), Weight(1)),
                                  root);
}

std::optional<Branching> any_in_branching(const Digraph& d, Vertex root) {
  return max_weight_in_branching(d, std::vector<Weight>(static_cast<std::size_t>(d.arc_count()), Weight(1)),
                                 root);
}

std::optional<Branching> branching_through_arc(const Digraph& d, Vertex root, const Arc& a,
                                               Orientation orientation) {
  auto id = d.arc_id(a);
  if (!id) throw ContractError("arc_in_some_branching: not an arc of the digraph");
  std::vector<Weight> weights(static_cast<std::size_t>(d.arc_count()), Weight(1));
  weights[static_cast<std::size_t>(*id)] = Weight(2);
  auto best = orientation == Orientation::out ? max_weight_out_branching(d, weights, root)
                                              : max_weight_in_branching(d, weights, root);
  if (!best) throw ContractError("arc_in_some_branching: no rooted branching exists");
  if (total_weight(d, weights, *best) == Weight(d.vertex_count())) return best;
  return std::nullopt;
}

bool arc_in_some_branching(const Digraph& d, Vertex root, const Arc& a, Orientation orientation) {
  return branching_through_arc(d, root, a, orientation).has_value();
}

Branching extend_out_tree(const Digraph& d, const Tree& t) {
  if (t.orientation != Orientation::out || !is_tree_of(d, t))
    throw ContractError("extend_out_tree: not an out-tree of the digraph");
  if (!has_rooted_out_branching(d, t.root))
    throw ContractError("extend_out_tree: root does not reach every vertex");

  std::vector<bool> in_tree(static_cast<std::size_t>(d.vertex_count()), false);
  for (Vertex v : t.vertices()) in_tree[static_cast<std::size_t>(v)] = true;
  // Grow from internal vertices first: attaching below a leaf only trades
  // that leaf for a new one, attaching below an internal vertex gains one.
  std::deque<Vertex> queue;
  const auto leaves = t.leaves();
  for (Vertex v : t.vertices())
    if (!std::binary_search(leaves.begin(), leaves.end(), v)) queue.push_back(v);
  for (Vertex v : leaves) queue.push_back(v);

  Tree grown = t;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : d.out_neighbors(v)) {
      if (in_tree[static_cast<std::size_t>(w)]) continue;
      in_tree[static_cast<std::size_t>(w)] = true;
      grown.arcs.insert({v, w});
      queue.push_back(w);
    }
  }
  return make_branching(d, std::move(grown));
}

Branching extend_in_tree(const Digraph& d, const Tree& t) {
  if (t.orientation != Orientation::in) throw ContractError("extend_in_tree: not an in-tree");
  Digraph rev = reverse(d);
  Tree flipped{t.root, Orientation::out, {}};
  for (const Arc& a : t.arcs) flipped.arcs.insert({a.head, a.tail});
  Branching out = extend_out_tree(rev, flipped);
  Tree back{t.root, Orientation::in, {}};
  for (const Arc& a : out.arcs) back.arcs.insert({a.head, a.tail});
  return make_branching(d, std::move(back));
}

namespace {

// Bounded search over out-trees: the lowest-id open leaf either stays a
// leaf for good, or becomes internal and adopts every out-neighbour not yet
// in the tree.
class MaxLeafSearch {
 public:
  MaxLeafSearch(const Digraph& d, Vertex root, int k)
      : d_(d), k_(k), state_(static_cast<std::size_t>(d.vertex_count()), State::absent) {
    tree_.root = root;
    state_[static_cast<std::size_t>(root)] = State::open;
    leaves_ = 1;
  }

  std::optional<Branching> run() { return search(); }

 private:
  enum class State { absent, open, fixed, internal };

  std::optional<Branching> search() {
    if (leaves_ >= k_) return extend_out_tree(d_, tree_);
    Vertex pick = -1;
    for (Vertex v = 0; v < d_.vertex_count(); ++v)
      if (state_[static_cast<std::size_t>(v)] == State::open) {
        pick = v;
        break;
      }
    if (pick == -1) return std::nullopt;

    std::vector<Vertex> adopted;
    for (Vertex w : d_.out_neighbors(pick))
      if (state_[static_cast<std::size_t>(w)] == State::absent) adopted.push_back(w);

    if (!adopted.empty()) {
      state_[static_cast<std::size_t>(pick)] = State::internal;
      for (Vertex w : adopted) {
        state_[static_cast<std::size_t>(w)] = State::open;
        tree_.arcs.insert({pick, w});
      }
      leaves_ += static_cast<int>(adopted.size()) - 1;
      if (auto found = search()) return found;
      leaves_ -= static_cast<int>(adopted.size()) - 1;
      for (Vertex w : adopted) {
        state_[static_cast<std::size_t>(w)] = State::absent;
        tree_.arcs.erase({pick, w});
      }
    }
    state_[static_cast<std::size_t>(pick)] = State::fixed;
    auto found = search();
    state_[static_cast<std::size_t>(pick)] = State::open;
    return found;
  }

  const Digraph& d_;
  int k_;
  std::vector<State> state_;
  Tree tree_;
  int leaves_ = 0;
};

}  // namespace

std::optional<Branching> max_leaf_out_branching(const Digraph& d, Vertex root, int k) {
  if (!d.is_vertex(root)) throw ContractError("max_leaf_out_branching: root out of range");
  if (!has_rooted_out_branching(d, root))
    throw ContractError("max_leaf_out_branching: root does not reach every vertex");
  if (k > d.vertex_count()) return std::nullopt;
  return MaxLeafSearch(d, root, k).run();
}

int distinctness(const Branching& plus, const Branching& minus) {
  if (plus.orientation != Orientation::out || minus.orientation != Orientation::in)
    throw ContractError("distinctness: expects an out-branching and an in-branching");
  if (plus.host != minus.host) throw ContractError("distinctness: branchings of different digraphs");
  int count = 0;
  for (const Arc& a : plus.arcs)
    if (!minus.arcs.contains(a)) ++count;
  return count;
}

Branching min_overlap_in_branching(const Digraph& d, const Branching& plus, Vertex t) {
  std::vector<Weight> weights(static_cast<std::size_t>(d.arc_count()), Weight(1));
  for (const Arc& a : plus.arcs) {
    auto id = d.arc_id(a);
    if (!id) throw ContractError("min_overlap_in_branching: out-branching arc not in digraph");
    weights[static_cast<std::size_t>(*id)] = Weight(0);
  }
  auto best = max_weight_in_branching(d, weights, t);
  if (!best) throw ContractError("min_overlap_in_branching: no in-branching rooted at t");
  return *best;
}

void for_each_out_branching(const Digraph& d, Vertex root,
                            const std::function<bool(const Branching&)>& visit) {
  if (!d.is_vertex(root)) throw ContractError("for_each_out_branching: root out of range");
  if (!has_rooted_out_branching(d, root)) return;
  const int n = d.vertex_count();
  std::vector<Vertex> order;
  for (Vertex v : [&] {
         // BFS order from the root, so parents tend to be fixed before children.
         std::vector<Vertex> seq{root};
         std::vector<bool> seen(static_cast<std::size_t>(n), false);
         seen[static_cast<std::size_t>(root)] = true;
         for (std::size_t i = 0; i < seq.size(); ++i)
           for (Vertex w : d.out_neighbors(seq[i]))
             if (!seen[static_cast<std::size_t>(w)]) {
               seen[static_cast<std::size_t>(w)] = true;
               seq.push_back(w);
             }
         return seq;
       }())
    if (v != root) order.push_back(v);

  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == order.size()) {
      Tree t{root, Orientation::out, {}};
      for (Vertex v : order) t.arcs.insert({parent[static_cast<std::size_t>(v)], v});
      if (!visit(make_branching(d, std::move(t)))) stop = true;
      return;
    }
    Vertex v = order[i];
    for (Vertex p : d.in_neighbors(v)) {
      // Reject p if following assigned parents from p leads back to v.
      Vertex x = p;
      while (x != root && x != v && parent[static_cast<std::size_t>(x)] != -1)
        x = parent[static_cast<std::size_t>(x)];
      if (x == v) continue;
      parent[static_cast<std::size_t>(v)] = p;
      rec(i + 1);
      parent[static_cast<std::size_t>(v)] = -1;
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace arbor
