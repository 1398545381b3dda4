#include "arbor/solver.hpp"

#include <cstdlib>
#include <sstream>

#include "arbor/builders.hpp"
#include "arbor/cut_decomposition.hpp"
#include "arbor/instance.hpp"

namespace arbor {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "YES";
    case Answer::no: return "NO";
    case Answer::undecided: return "UNDECIDED";
  }
  return "?";
}

int default_oracle_cap() {
  if (const char* env = std::getenv("ARBOR_ORACLE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1000) return static_cast<int>(v);
  }
  return 12;
}

OracleResult oracle_solve(const Digraph& d, Vertex s, Vertex t, int k, int cap) {
  if (!d.is_vertex(s) || !d.is_vertex(t)) throw ContractError("oracle_solve: root out of range");
  if (d.vertex_count() > cap)
    throw OracleCapExceeded("instance too large for oracle: " + std::to_string(d.vertex_count()) +
                            " vertices, cap " + std::to_string(cap));
  OracleResult r;
  if (!has_rooted_out_branching(d, s) || !has_rooted_in_branching(d, t)) return r;
  for_each_out_branching(d, s, [&](const Branching& plus) {
    Branching minus = min_overlap_in_branching(d, plus, t);
    if (distinctness(plus, minus) < k) return true;
    r.yes = true;
    r.certificate = make_certificate(d, s, t, k, plus, minus);
    return false;
  });
  return r;
}

namespace {

std::string arc_list(const ArcSet& arcs) {
  std::ostringstream out;
  bool first = true;
  for (const Arc& a : arcs) {
    out << (first ? "" : " ") << a.tail << "->" << a.head;
    first = false;
  }
  return out.str();
}

std::string vertex_list(const std::vector<Vertex>& vs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? "," : "") << vs[i];
  return out.str();
}

ArcSet arc_difference(const Digraph& a, const Digraph& b) {
  ArcSet out;
  for (const Arc& x : a.arcs())
    if (!b.has_arc(x)) out.insert(x);
  return out;
}

class Pipeline {
 public:
  Pipeline(const Digraph& d, Vertex s, Vertex t, int k, const SolveOptions& options)
      : d_(d), s_(s), t_(t), k_(k), options_(options) {}

  SolveResult run() {
    auto reduced = reduce_instance(d_, s_, t_, k_);
    if (!reduced) {
      log("reduce: no out-branching rooted at " + std::to_string(s_) + " or no in-branching rooted at " +
          std::to_string(t_));
      return decided(Answer::no, "reject");
    }
    log("reduce: removed " + std::to_string(d_.arc_count() - reduced->graph.arc_count()) + " arcs in no rooted branching");
    if (k_ == 0) {
      auto plus = *any_out_branching(d_, s_);
      auto minus = min_overlap_in_branching(d_, plus, t_);
      return certify(plus, minus, "k-zero");
    }

    inst_ = with_aux_arc(*reduced);
    if (inst_.ts_added()) log("aux: added arc " + std::to_string(t_) + "->" + std::to_string(s_));

    while (inst_.graph.vertex_count() >= 2) {
      dec_.emplace(build_cut_decomposition(inst_.graph, inst_.s));
      if (options_.validate_decompositions && !validate(*dec_).empty())
        throw InternalError("solve: decomposition fails validation");
      inst_ = with_forbidden_arcs(std::move(inst_), &*dec_);
      const auto paths = work_paths(*dec_, inst_.t);

      if (auto r = rule1_and_certifiers(paths)) return *r;
      if (changed_) continue;
      if (rule2(paths)) continue;

      const MonotonePath mp = most_nondegenerate_path(*dec_);
      if (mp.nondegenerate_count >= k_ + 1) {
        log("path: " + std::to_string(mp.nondegenerate_count) + " non-degenerate diblocks on " +
            vertex_list(mp.nodes));
        Tree tree = build_nondegen_out_tree(inst_, *dec_, mp.nodes, k_ + 1);
        return finish_out(tree, "nondegenerate-path");
      }

      if (auto r = bounded_height()) return *r;
      break;
    }
    return oracle();
  }

 private:
  void log(std::string line) { result_.trace.push_back(std::move(line)); }

  SolveResult decided(Answer a, std::string branch) {
    result_.answer = a;
    result_.branch = std::move(branch);
    log("answer: " + to_string(a) + " via " + result_.branch);
    return result_;
  }

  // Lifts a pair of spanning trees of the current instance to the input digraph.
  SolveResult certify(Tree plus, Tree minus, std::string branch) {
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      plus = lift_tree(*it, plus);
      minus = lift_tree(*it, minus);
    }
    Certificate cert = make_certificate(d_, s_, t_, k_, plus, minus);
    if (!verify_certificate(d_, s_, t_, k_, cert))
      throw InternalError("solve: certificate from " + branch + " fails verification (distinctness " +
                          std::to_string(cert.distinctness) + ")");
    result_.certificate = std::move(cert);
    return decided(Answer::yes, std::move(branch));
  }

  SolveResult finish_out(const Tree& tree, std::string branch) {
    const Digraph& g = inst_.graph;
    Branching plus = extend_out_tree(g, tree);
    if (count_leaves(plus) < k_ + 1)
      throw InternalError("solve: " + branch + " out-branching has only " + std::to_string(count_leaves(plus)) +
                          " leaves");
    Branching minus = min_overlap_in_branching(g, plus, inst_.t);
    return certify(plus, minus, std::move(branch));
  }

  SolveResult finish_in(const Tree& tree, std::string branch) {
    const Digraph& g = inst_.graph;
    Branching minus = extend_in_tree(g, tree);
    Branching plus = *any_out_branching(g, inst_.s);
    return certify(plus, minus, std::move(branch));
  }

  void rereduce(const Instance& next, const std::string& why) {
    auto r = reduce_instance(next);
    if (!r) throw InternalError("solve: " + why + " destroyed the rooted branchings");
    inst_ = std::move(*r);
    changed_ = true;
  }

  std::optional<SolveResult> rule1_and_certifiers(const std::vector<WorkPath>& paths) {
    changed_ = false;
    for (const WorkPath& p : paths) {
      Instance next = apply_rule1(inst_, *dec_, p);
      if (next.graph.arc_count() != inst_.graph.arc_count()) {
        const ArcSet gone = arc_difference(inst_.graph, next.graph);
        result_.rule1_removed += static_cast<int>(gone.size());
        log("rule 1: removed " + arc_list(gone) + " on path " + vertex_list(p.nodes));
        rereduce(next, "rule 1");
        return std::nullopt;
      }

      const auto c = classify_path_arcs(inst_, *dec_, p);
      std::set<Vertex> heads;
      for (const Arc& a : c.A_plus)
        if (inst_.R_t.contains(a)) heads.insert(a.head);
      if (static_cast<int>(heads.size()) >= 2 * k_ + 2) {
        log("up-arc-heads: " + std::to_string(heads.size()) + " heads of upward R_t arcs on path " +
            vertex_list(p.nodes));
        Tree tree = build_up_heads_out_tree(inst_, *dec_, p, c);
        if (count_leaves(tree) < k_ + 1)
          throw InternalError("solve: avoid-half out-tree has only " + std::to_string(count_leaves(tree)) + " leaves");
        return finish_out(tree, "up-arc-heads");
      }

      Tree up = build_A_plus_in_tree(inst_, *dec_, p, c);
      if (count_leaves(up) >= k_ + 1) {
        log("up-arc-in-tree: " + std::to_string(count_leaves(up)) + " leaves on path " + vertex_list(p.nodes));
        return finish_in(up, "up-arc-in-tree");
      }

      if (static_cast<int>(c.Y.size()) >= k_) {
        if (auto zero = build_A_zero_in_tree(inst_, *dec_, p, c)) {
          log("on-path-in-tree: " + std::to_string(c.Y.size()) + " on-path arc tails on path " + vertex_list(p.nodes));
          return finish_in(*zero, "on-path-in-tree");
        }
        log("on-path-in-tree: construction stuck on path " + vertex_list(p.nodes));
      }
    }
    return std::nullopt;
  }

  bool rule2(const std::vector<WorkPath>& paths) {
    for (const WorkPath& p : paths) {
      auto r = apply_rule2(inst_, *dec_, p);
      if (!r) continue;
      std::ostringstream line;
      line << "rule 2: contracted";
      for (const auto& seg : r->contraction.segments) {
        line << " [" << vertex_list(seg) << "]";
        result_.rule2_contracted += static_cast<int>(seg.size()) - 1;
      }
      log(line.str());
      chain_.push_back(std::move(r->contraction));
      rereduce(r->instance, "rule 2");
      return true;
    }
    return false;
  }

  std::optional<SolveResult> bounded_height() {
    const Digraph& g = inst_.graph;
    int longest = 0;
    for (const DegeneratePath& p : degenerate_paths(*dec_)) {
      const int len = static_cast<int>(p.nodes.size());
      const bool has_t = std::find(p.nodes.begin(), p.nodes.end(), inst_.t) != p.nodes.end();
      const int bound = has_t ? 16 * k_ + 3 : 8 * k_ + 1;
      if (len > bound)
        throw InternalError("solve: degenerate path " + vertex_list(p.nodes) + " has " + std::to_string(len) +
                            " nodes after reduction, bound " + std::to_string(bound));
      if (!has_t) longest = std::max(longest, len);
    }
    result_.reached_bounded_height = true;
    result_.longest_degenerate_path = longest;

    const int height = dec_->height();
    const int want = 2 * k_ + 2 + height;
    log("bounded-height: height " + std::to_string(height) + ", looking for " + std::to_string(want) + " leaves");
    if (want > g.vertex_count()) return std::nullopt;
    for (Vertex r = 0; r < g.vertex_count(); ++r) {
      if (!has_rooted_out_branching(g, r)) continue;
      auto b = max_leaf_out_branching(g, r, want);
      if (!b) continue;
      log("bounded-height: " + std::to_string(count_leaves(*b)) + " leaves at root " + std::to_string(r));
      Tree tree = reroot_out_tree(inst_, *dec_, *b);
      return finish_out(tree, "bounded-height-max-leaf");
    }
    return std::nullopt;
  }

  SolveResult oracle() {
    const Digraph& g = inst_.graph;
    if (g.vertex_count() > options_.oracle_cap) {
      log("oracle: " + std::to_string(g.vertex_count()) + " vertices left, cap " + std::to_string(options_.oracle_cap) +
          "; undecided at desk scale");
      return decided(Answer::undecided, "undecided");
    }
    log("oracle: enumerating on " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.arc_count()) +
        " arcs");
    OracleResult r = oracle_solve(g, inst_.s, inst_.t, k_, options_.oracle_cap);
    if (!r.yes) return decided(Answer::no, "oracle");
    return certify(r.certificate->out, r.certificate->in, "oracle");
  }

  const Digraph& d_;
  Vertex s_, t_;
  int k_;
  SolveOptions options_;
  SolveResult result_;
  Instance inst_;
  std::optional<CutDecomposition> dec_;
  std::vector<Contraction> chain_;
  bool changed_ = false;
};

}  // namespace

SolveResult solve(const Digraph& d, Vertex s, Vertex t, int k, const SolveOptions& options) {
  if (!d.is_vertex(s) || !d.is_vertex(t)) throw ContractError("solve: root out of range");
  if (k < 0) throw ContractError("solve: k must be non-negative");
  return Pipeline(d, s, t, k, options).run();
}

SolveResult solve_unrooted(const Digraph& d, int k, const SolveOptions& options) {
  if (k < 0) throw ContractError("solve_unrooted: k must be non-negative");
  SolveResult last;
  bool undecided = false;
  bool any_pair = false;
  for (Vertex s = 0; s < d.vertex_count(); ++s) {
    if (!has_rooted_out_branching(d, s)) continue;
    for (Vertex t = 0; t < d.vertex_count(); ++t) {
      if (!has_rooted_in_branching(d, t)) continue;
      any_pair = true;
      SolveResult r = solve(d, s, t, k, options);
      r.trace.insert(r.trace.begin(), "pair: s=" + std::to_string(s) + " t=" + std::to_string(t));
      if (r.answer == Answer::yes) return r;
      if (r.answer == Answer::undecided) undecided = true;
      last = std::move(r);
    }
  }
  if (!any_pair) {
    last.trace.push_back("reduce: no vertex roots both an out- and an in-branching");
    last.branch = "reject";
  }
  last.answer = undecided ? Answer::undecided : Answer::no;
  last.certificate.reset();
  last.trace.push_back("answer: " + to_string(last.answer) + " over all root pairs");
  return last;
}

SolveResult solve_single_root(const Digraph& d, int k, const SolveOptions& options) {
  if (k < 0) throw ContractError("solve_single_root: k must be non-negative");
  SolveResult r;
  if (!is_strongly_connected(d)) {
    r.branch = "reject";
    r.trace.push_back("reduce: digraph is not strongly connected");
    r.trace.push_back("answer: NO via reject");
    return r;
  }
  for (Vertex root = 0; root < d.vertex_count() && k > 0; ++root) {
    auto plus = max_leaf_out_branching(d, root, k + 1);
    if (!plus) continue;
    Branching minus = min_overlap_in_branching(d, *plus, root);
    Certificate cert = make_certificate(d, root, root, k, *plus, minus);
    if (!verify_certificate(d, root, root, k, cert))
      throw InternalError("solve_single_root: max-leaf certificate fails verification");
    r.answer = Answer::yes;
    r.branch = "single-root-max-leaf";
    r.certificate = std::move(cert);
    r.trace.push_back("max-leaf: " + std::to_string(count_leaves(*plus)) + " leaves at root " + std::to_string(root));
    r.trace.push_back("answer: YES via single-root-max-leaf");
    return r;
  }
  bool undecided = false;
  SolveResult last;
  for (Vertex root = 0; root < d.vertex_count(); ++root) {
    SolveResult rr = solve(d, root, root, k, options);
    rr.trace.insert(rr.trace.begin(), "root: " + std::to_string(root));
    if (rr.answer == Answer::yes) return rr;
    if (rr.answer == Answer::undecided) undecided = true;
    last = std::move(rr);
  }
  last.answer = undecided ? Answer::undecided : Answer::no;
  last.trace.push_back("answer: " + to_string(last.answer) + " over all roots");
  return last;
}

}  // namespace arbor
