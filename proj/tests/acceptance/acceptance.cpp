// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Every sample is seeded; rerunning gives the same counts.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "arbor/branching.hpp"
#include "arbor/builders.hpp"
#include "arbor/certificate.hpp"
#include "arbor/cut_decomposition.hpp"
#include "arbor/flow.hpp"
#include "arbor/generators.hpp"
#include "arbor/instance.hpp"
#include "arbor/solver.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace arbor;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

// The n <= 8 corpus shared by criteria 3, 7 and 10.
const std::vector<corpus::Sample>& small_corpus() {
  static const auto c = corpus::mixed(400, 2, 8, 0x5eed0001);
  return c;
}

struct Prepared {
  Instance inst;
  CutDecomposition dec;
};

std::optional<Prepared> prepare(const Digraph& d, Vertex s, Vertex t) {
  auto r = reduce_instance(d, s, t, 1);
  if (!r) return std::nullopt;
  Instance a = with_aux_arc(*r);
  CutDecomposition dec = build_cut_decomposition(a.graph, s);
  return Prepared{with_forbidden_arcs(a, &dec), dec};
}

Outcome bireach() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(0xb1);
  long pairs = 0, bad = 0;
  for (int i = 0; i < 500; ++i) {
    Digraph d = corpus::random_digraph(rng, corpus::uniform_int(rng, 1, 9), 0.1 + 0.5 * corpus::uniform(rng));
    for (Vertex r = 0; r < d.vertex_count(); ++r) {
      auto got = bi_reachable_set(d, r).members();
      if (std::set<Vertex>(got.begin(), got.end()) != oracle::bireachable(d, r)) ++bad;
      ++pairs;
    }
  }
  double secs = seconds_since(t0);
  return {bad == 0 && secs < 60,
          std::to_string(pairs) + " (graph, root) pairs, " + std::to_string(bad) + " mismatches, " + fmt(secs) + " s"};
}

Outcome decomposition() {
  std::mt19937_64 rng(0xdc);
  std::map<DecompositionClause, int> per_clause;
  for (auto c : {DecompositionClause::partition, DecompositionClause::intersection, DecompositionClause::arc_placement,
                 DecompositionClause::entry, DecompositionClause::siblings, DecompositionClause::cover})
    per_clause[c] = 0;
  int graphs = 0, errors = 0;
  auto check = [&](const Digraph& d) {
    ++graphs;
    try {
      for (const auto& v : validate(build_cut_decomposition(d, 0))) ++per_clause[v.clause];
    } catch (const std::exception&) {
      ++errors;
    }
  };
  for (int i = 0; i < 1000; ++i) {
    int n = corpus::uniform_int(rng, 2, 25);
    if (i % 3 == 2)
      check(corpus::chainy(rng, n, 0.05 + 0.2 * corpus::uniform(rng), 0.03));
    else
      check(corpus::rooted_random(rng, n, (0.5 + 3.0 * corpus::uniform(rng)) / n));
  }
  for (const auto& [name, d] : corpus::fixtures())
    if (has_rooted_out_branching(d, 0)) check(d);
  std::ostringstream s;
  bool ok = errors == 0;
  s << graphs << " decompositions;";
  for (const auto& [c, k] : per_clause) {
    s << ' ' << to_string(c) << '=' << k;
    ok = ok && k == 0;
  }
  s << "; exceptions=" << errors;
  return {ok, s.str()};
}

Outcome back_arcs() {
  long branchings = 0, hits = 0, instances = 0, path_misses = 0;
  for (const auto& smp : small_corpus()) {
    if (!has_rooted_out_branching(smp.d, smp.s)) continue;
    ++instances;
    ArcSet r = forbidden_back_arcs(build_cut_decomposition(smp.d, smp.s));
    oracle::for_each_out_branching(smp.d, smp.s, [&](const ArcSet& b) {
      ++branchings;
      for (const Arc& a : r) hits += b.contains(a);
      return true;
    });
    // reduced instances: every rooted out-branching holds every degenerate path
    auto p = prepare(smp.d, smp.s, smp.t);
    if (!p) continue;
    ArcSet path_arcs;
    for (const auto& dp : degenerate_paths(p->dec))
      for (std::size_t i = 0; i + 1 < dp.host_path.size(); ++i) path_arcs.insert({dp.host_path[i], dp.host_path[i + 1]});
    oracle::for_each_out_branching(p->inst.graph, smp.s, [&](const ArcSet& b) {
      for (const Arc& a : path_arcs) path_misses += !b.contains(a);
      return true;
    });
  }
  return {hits == 0 && path_misses == 0,
          std::to_string(instances) + " instances, " + std::to_string(branchings) + " out-branchings, " +
              std::to_string(hits) + " back arcs used; degenerate-path arcs missing: " + std::to_string(path_misses)};
}

Outcome oracle_equivalence() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(0x0e);
  int done = 0, mismatch = 0, bad_cert = 0, errors = 0, undecided = 0;
  int fpt_decided = 0, fpt_wrong = 0;  // second pass with the oracle switched off
  std::map<std::string, int> branches;
  while (done < 1000) {
    int n = corpus::uniform_int(rng, 2, 8);
    Digraph raw;
    switch (done % 3) {
      case 0: raw = corpus::random_digraph(rng, n, 0.2 + 0.5 * corpus::uniform(rng)); break;
      case 1: raw = corpus::chainy(rng, n, 0.1 + 0.4 * corpus::uniform(rng), 0.05 + 0.15 * corpus::uniform(rng)); break;
      default: raw = corpus::rooted_random(rng, n, 0.15 + 0.3 * corpus::uniform(rng)); break;
    }
    Vertex t = corpus::uniform_int(rng, 0, n - 1);
    auto red = reduce_instance(raw, 0, t);
    if (!red) continue;
    const Digraph& d = red->graph;
    int k = corpus::uniform_int(rng, 1, 4);
    ++done;
    try {
      SolveResult r = solve(d, 0, t, k, {.oracle_cap = 12, .validate_decompositions = true});
      OracleResult o = oracle_solve(d, 0, t, k);
      ++branches[r.branch];
      if (r.answer == Answer::undecided) ++undecided;
      if ((r.answer == Answer::yes) != o.yes) ++mismatch;
      if (r.answer == Answer::yes && (!r.certificate || !verify_certificate(d, 0, t, k, *r.certificate))) ++bad_cert;
      if (o.yes && !verify_certificate(d, 0, t, k, *o.certificate)) ++bad_cert;
      SolveResult f = solve(d, 0, t, k, {.oracle_cap = 0});
      if (f.answer != Answer::undecided) {
        ++fpt_decided;
        if ((f.answer == Answer::yes) != o.yes) ++fpt_wrong;
        if (f.answer == Answer::yes && (!f.certificate || !verify_certificate(d, 0, t, k, *f.certificate)))
          ++fpt_wrong;
      }
    } catch (const std::exception&) {
      ++errors;
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream s;
  s << done << " instances, " << mismatch << " mismatches, " << bad_cert << " bad certificates, " << errors
    << " exceptions, " << undecided << " undecided, " << fmt(secs) << " s; branches:";
  for (const auto& [b, c] : branches) s << ' ' << b << '=' << c;
  s << "; oracle off: " << fpt_decided << " decided, " << fpt_wrong << " wrong";
  return {mismatch == 0 && bad_cert == 0 && errors == 0 && undecided == 0 && fpt_wrong == 0 && secs < 600, s.str()};
}

Outcome paper3_family() {
  std::ostringstream s;
  bool ok = true;
  for (int n = 3; n <= 6; ++n) {
    Digraph d = paper3_digraph(n, true);
    ok = ok && d == corpus::paper3(n, true);
    Answer k1 = solve(d, 0, n + 1, 1).answer;
    Answer k0 = solve(d, 0, n + 1, 0).answer;
    bool o1 = oracle_solve(d, 0, n + 1, 1).yes;
    bool o0 = oracle_solve(d, 0, n + 1, 0).yes;
    ok = ok && k1 == Answer::no && k0 == Answer::yes && !o1 && o0;
    s << "n=" << n << ": k=1 " << to_string(k1) << ", k=0 " << to_string(k0) << "; ";
  }
  return {ok, s.str()};
}

Outcome rule_safety() {
  std::mt19937_64 rng(0x7a);
  int r1 = 0, r2 = 0, disagree = 0, lifted = 0, bad_lift = 0, errors = 0;
  auto answers = [](const Instance& x) {
    std::vector<bool> out;
    for (int k = 1; k <= 4; ++k) out.push_back(oracle_solve(x.graph, x.s, x.t, k, 64).yes);
    return out;
  };
  std::vector<Digraph> graphs;
  for (int i = 0; i < 500; ++i) {
    int n = corpus::uniform_int(rng, 3, 10);
    graphs.push_back(i % 5 == 4 ? corpus::rooted_random(rng, n, 0.2)
                                : corpus::chainy(rng, n, 0.1 + 0.4 * corpus::uniform(rng), 0.1 * corpus::uniform(rng)));
  }
  graphs.push_back(corpus::rule1_fixture());
  for (const Digraph& d : graphs) {
    Vertex t = d.vertex_count() - 1;
    try {
      auto red = reduce_instance(d, 0, t);
      if (!red) continue;
      Instance cur = with_aux_arc(*red);
      for (int round = 0; round < 64; ++round) {
        CutDecomposition dec = build_cut_decomposition(cur.graph, cur.s);
        cur = with_forbidden_arcs(cur, &dec);
        bool changed = false;
        for (const WorkPath& p : work_paths(dec, cur.t)) {
          Instance next = apply_rule1(cur, dec, p);
          if (next.graph == cur.graph) continue;
          ++r1;
          if (answers(cur) != answers(next)) ++disagree;
          auto again = reduce_instance(next);
          if (!again) break;
          cur = *again;
          changed = true;
          break;
        }
        if (changed) continue;
        for (const WorkPath& p : work_paths(dec, cur.t)) {
          auto c = apply_rule2(cur, dec, p);
          if (!c) continue;
          ++r2;
          auto before = answers(cur);
          auto after = answers(c->instance);
          if (before != after) ++disagree;
          for (int k = 1; k <= 4; ++k) {
            auto o = oracle_solve(c->instance.graph, c->instance.s, c->instance.t, k, 64);
            if (!o.yes) continue;
            Tree out = lift_tree(c->contraction, o.certificate->out);
            Tree in = lift_tree(c->contraction, o.certificate->in);
            ++lifted;
            bool ok = !cur.aux_arc || (!out.arcs.contains(*cur.aux_arc) && !in.arcs.contains(*cur.aux_arc));
            ok = ok && is_tree_of(cur.graph, out) && is_tree_of(cur.graph, in);
            if (ok) {
              Certificate cert = make_certificate(cur.graph, cur.s, cur.t, k, out, in);
              ok = verify_certificate(cur.graph, cur.s, cur.t, k, cert);
            }
            if (!ok) ++bad_lift;
          }
          Instance ci = c->instance;
          auto again = reduce_instance(ci);
          if (!again) break;
          cur = *again;
          changed = true;
          break;
        }
        if (!changed) break;
      }
    } catch (const std::exception&) {
      ++errors;
    }
  }
  std::ostringstream s;
  s << "Rule 1 fired " << r1 << "x, Rule 2 fired " << r2 << "x, " << disagree << " answer changes, " << lifted
    << " lifted certificates, " << bad_lift << " invalid, " << errors << " exceptions";
  return {r1 > 0 && r2 > 0 && disagree == 0 && bad_lift == 0 && errors == 0, s.str()};
}

Outcome constructive_bounds() {
  std::mt19937_64 rng(0xc7);
  long reroots = 0, reroot_bad = 0, nondeg = 0, nondeg_bad = 0, errors = 0;
  for (const auto& smp : small_corpus()) {
    auto p = prepare(smp.d, smp.s, smp.t);
    if (!p) continue;
    const Digraph& g = p->inst.graph;
    const int height = p->dec.height();
    try {
      for (Vertex r = 0; r < g.vertex_count(); ++r) {
        if (r == smp.s || !has_rooted_out_branching(g, r)) continue;
        int best = oracle::max_leaves(g, r);
        auto t = max_leaf_out_branching(g, r, best);
        if (!t) {
          ++reroot_bad;
          continue;
        }
        int ell = count_leaves(*t);
        Tree out = reroot_out_tree(p->inst, p->dec, *t);
        int slack = p->dec.diblock(smp.s).contains(r) ? 1 : height;
        ++reroots;
        if (out.root != smp.s || !is_tree_of(g, out) || 2 * count_leaves(out) < ell - slack) ++reroot_bad;
      }
      for (Vertex leaf : p->dec.nodes()) {
        if (p->dec.is_internal(leaf)) continue;
        auto path = p->dec.tree_path(leaf);
        int count = 0;
        for (Vertex x : path) count += !p->dec.is_degenerate(x);
        for (int ell = 1; ell <= count; ++ell) {
          Tree t = build_nondegen_out_tree(p->inst, p->dec, path, ell);
          ++nondeg;
          if (t.root != smp.s || !is_tree_of(g, t) || count_leaves(t) < ell) ++nondeg_bad;
        }
      }
    } catch (const std::exception&) {
      ++errors;
    }
  }

  long queries = 0, avoid_bad = 0;
  while (queries < 10000) {
    Digraph d = corpus::rooted_random(rng, corpus::uniform_int(rng, 3, 16), 0.05 + 0.25 * corpus::uniform(rng));
    CutDecomposition dec = build_cut_decomposition(d, 0);
    std::vector<Vertex> free;
    for (Vertex v = 1; v < d.vertex_count(); ++v)
      if (!dec.is_node(v)) free.push_back(v);
    for (int q = 0; q < 20 && queries < 10000; ++q) {
      Vertex u = corpus::uniform_int(rng, 1, d.vertex_count() - 1);
      VertexSet x(d.vertex_count());
      double density = corpus::uniform(rng);
      for (Vertex v : free)
        if (v != u && corpus::uniform(rng) < density) x.insert(v);
      ++queries;
      try {
        Path p = avoid_half_path(dec, u, x);
        int hit = 0;
        for (Vertex v : p) hit += x.contains(v);
        if (!is_simple_path(d, p) || p.front() != 0 || p.back() != u || 2 * hit > x.size()) ++avoid_bad;
      } catch (const std::exception&) {
        ++avoid_bad;
      }
    }
  }
  std::ostringstream s;
  s << "reroot " << reroots << " trees (" << reroot_bad << " below bound), nondegen " << nondeg << " trees ("
    << nondeg_bad << " below bound), avoid-half " << queries << " queries (" << avoid_bad << " over half), "
    << errors << " exceptions";
  return {reroots > 0 && nondeg > 0 && reroot_bad == 0 && nondeg_bad == 0 && avoid_bad == 0 && errors == 0, s.str()};
}

Outcome height_bound() {
  std::mt19937_64 rng(0x8b);
  int reached = 0, violations = 0, errors = 0, runs = 0, longest = 0;
  for (int i = 0; i < 600; ++i) {
    int n = corpus::uniform_int(rng, 4, 22);
    Digraph d = i % 2 ? degenerate_chain(n, 0.05 + 0.3 * corpus::uniform(rng), rng())
                      : corpus::chainy(rng, n, 0.05 + 0.3 * corpus::uniform(rng), 0.02 + 0.08 * corpus::uniform(rng));
    Vertex t = corpus::uniform(rng) < 0.5 ? n - 1 : corpus::uniform_int(rng, 0, n - 1);
    int k = corpus::uniform_int(rng, 1, 3);
    ++runs;
    try {
      SolveResult r = solve(d, 0, t, k, {.oracle_cap = 8});
      if (!r.reached_bounded_height) continue;
      ++reached;
      longest = std::max(longest, r.longest_degenerate_path);
      if (r.longest_degenerate_path > 8 * k + 1) ++violations;
    } catch (const InternalError&) {
      ++violations;
    } catch (const std::exception&) {
      ++errors;
    }
  }
  std::ostringstream s;
  s << runs << " solves, bounded-height stage reached " << reached << "x, longest degenerate path (t off path) "
    << longest << " nodes, " << violations << " violations, " << errors << " exceptions";
  return {reached > 0 && violations == 0 && errors == 0, s.str()};
}

Outcome edmonds() {
  std::mt19937_64 rng(0xed);
  int graphs = 0, bad = 0;
  for (int i = 0; i < 500; ++i) {
    Digraph d = corpus::random_digraph(rng, corpus::uniform_int(rng, 1, 8), 0.2 + 0.35 * corpus::uniform(rng));
    std::vector<Weight> w;
    std::map<Arc, oracle::Weight> wm;
    for (const Arc& a : d.arcs()) {
      Weight x(corpus::uniform_int(rng, -30, 30), corpus::uniform_int(rng, 1, 9));
      w.push_back(x);
      wm[a] = x;
    }
    Vertex root = corpus::uniform_int(rng, 0, d.vertex_count() - 1);
    auto got = max_weight_out_branching(d, w, root);
    auto want = oracle::max_branching_weight(d, wm, root);
    ++graphs;
    if (got.has_value() != want.has_value()) ++bad;
    else if (got && (!oracle::is_out_branching(d, root, got->arcs) || total_weight(d, w, *got) != *want)) ++bad;
  }
  return {bad == 0, std::to_string(graphs) + " weighted digraphs, " + std::to_string(bad) + " mismatches"};
}

Outcome max_leaf() {
  long decisions = 0, bad = 0;
  for (const auto& smp : small_corpus()) {
    if (!has_rooted_out_branching(smp.d, smp.s)) continue;
    int best = oracle::max_leaves(smp.d, smp.s);
    for (int k = 0; k <= smp.d.vertex_count(); ++k) {
      auto b = max_leaf_out_branching(smp.d, smp.s, k);
      ++decisions;
      if (b.has_value() != (best >= k)) ++bad;
      else if (b && (!oracle::is_out_branching(smp.d, smp.s, b->arcs) || count_leaves(*b) < k)) ++bad;
    }
  }
  return {bad == 0, std::to_string(decisions) + " (instance, k) decisions, " + std::to_string(bad) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bi-reachability exactness", bireach},
      {"decomposition soundness", decomposition},
      {"back-arc exclusion", back_arcs},
      {"solver-oracle equivalence", oracle_equivalence},
      {"closed chain family", paper3_family},
      {"reduction-rule safety", rule_safety},
      {"constructive bounds", constructive_bounds},
      {"degenerate-path bound", height_bound},
      {"max-weight branching", edmonds},
      {"max-leaf decision", max_leaf},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("uncaught: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.summary.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
