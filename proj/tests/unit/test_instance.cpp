#include <random>

#include <gtest/gtest.h>

#include "arbor/instance.hpp"
#include "arbor/solver.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace arbor;

namespace {

// Reduced instance with aux arc and R sets, plus its s-rooted decomposition.
struct Prepared {
  Instance inst;
  CutDecomposition dec;
};

Prepared prepare(const Digraph& d, Vertex s, Vertex t) {
  auto r = reduce_instance(d, s, t, 1);
  if (!r) throw std::runtime_error("fixture rejected");
  Instance a = with_aux_arc(*r);
  CutDecomposition dec = build_cut_decomposition(a.graph, s);
  return {with_forbidden_arcs(a, &dec), dec};
}

// Chain 2..8 hanging below root diblock {0,1,2}; 4->1 is the only upward arc.
Digraph mid_tail() { return Digraph(9, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {4, 1}}); }

bool oracle_yes(const Digraph& d, Vertex s, Vertex t, int k) { return oracle_solve(d, s, t, k, 64).yes; }

}  // namespace

TEST(Reduce, Examples) {
  Digraph d = corpus::diamond();
  auto r = reduce_instance(d, 0, 4);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->graph, d);
  EXPECT_TRUE(r->reduced);
  EXPECT_FALSE(reduce_instance(d, 3, 4));

  auto r2 = reduce_instance(with_arcs(d, {{4, 0}}), 0, 4);
  ASSERT_TRUE(r2);
  EXPECT_EQ(r2->graph, d);
}

TEST(Reduce, EveryArcInSomeBranchingAndAnswersKept) {
  std::mt19937_64 rng(111);
  for (int i = 0; i < 150; ++i) {
    Digraph d = corpus::random_digraph(rng, corpus::uniform_int(rng, 2, 6), 0.3 + 0.3 * corpus::uniform(rng));
    Vertex s = 0, t = corpus::uniform_int(rng, 0, d.vertex_count() - 1);
    auto r = reduce_instance(d, s, t);
    bool exists = has_rooted_out_branching(d, s) && has_rooted_in_branching(d, t);
    ASSERT_EQ(r.has_value(), exists);
    if (!r) continue;
    ArcSet useful = oracle::arcs_in_some_branching(d, s, false);
    ArcSet in_useful = oracle::arcs_in_some_branching(d, t, true);
    useful.insert(in_useful.begin(), in_useful.end());
    EXPECT_EQ(ArcSet(r->graph.arcs().begin(), r->graph.arcs().end()), useful);
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(oracle::k_distinct(d, s, t, k), oracle::k_distinct(r->graph, s, t, k));
  }
}

TEST(AuxArc, AddedOnlyWhenMissing) {
  auto r = reduce_instance(corpus::diamond(), 0, 4);
  Instance a = with_aux_arc(*r);
  ASSERT_TRUE(a.ts_added());
  EXPECT_EQ(*a.aux_arc, (Arc{4, 0}));
  EXPECT_TRUE(a.graph.has_arc(4, 0));
  EXPECT_TRUE(a.is_aux({4, 0}));
  EXPECT_FALSE(a.is_aux({3, 4}));
  auto same = reduce_instance(Digraph(2, {{0, 1}, {1, 0}}), 0, 0);
  EXPECT_FALSE(with_aux_arc(*same).ts_added());
}

TEST(ForbiddenSets, Diamond) {
  auto r = reduce_instance(corpus::diamond(), 0, 4);
  ForbiddenArcs f = compute_Rs_Rt(*r);
  EXPECT_TRUE(f.R_s.empty());
  EXPECT_TRUE(f.R_t.empty());
  Instance raw;
  raw.graph = corpus::diamond();
  raw.t = 4;
  EXPECT_THROW(compute_Rs_Rt(raw), ContractError);
}

TEST(ForbiddenSets, ClosedPaper3) {
  // The closing arc and every back arc lie in no rooted branching, so the
  // reduced instance is the bare chain and both sets come out empty.
  auto r = reduce_instance(corpus::paper3(4, true), 0, 5);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->graph, corpus::directed_path(6));
  Instance a = with_aux_arc(*r);
  CutDecomposition dec = build_cut_decomposition(a.graph, 0);
  ForbiddenArcs f = compute_Rs_Rt(a, &dec);
  EXPECT_TRUE(f.R_s.empty());
  EXPECT_TRUE(f.R_t.empty());
}

TEST(ForbiddenSets, MatchEnumerationAndAreDisjoint) {
  std::mt19937_64 rng(113);
  for (int i = 0; i < 150; ++i) {
    Digraph d = corpus::random_digraph(rng, corpus::uniform_int(rng, 2, 7), 0.25 + 0.3 * corpus::uniform(rng));
    Vertex s = 0, t = corpus::uniform_int(rng, 0, d.vertex_count() - 1);
    auto r = reduce_instance(d, s, t);
    if (!r) continue;
    Instance a = with_aux_arc(*r);
    CutDecomposition dec = build_cut_decomposition(a.graph, s);
    ForbiddenArcs f = compute_Rs_Rt(a, &dec);
    ArcSet out_ok = oracle::arcs_in_some_branching(a.graph, s, false);
    ArcSet in_ok = oracle::arcs_in_some_branching(a.graph, t, true);
    for (const Arc& x : a.graph.arcs()) {
      if (a.is_aux(x)) continue;
      EXPECT_EQ(f.R_s.contains(x), !out_ok.contains(x));
      EXPECT_EQ(f.R_t.contains(x), !in_ok.contains(x));
      EXPECT_FALSE(f.R_s.contains(x) && f.R_t.contains(x));
    }
  }
}

TEST(Classify, DirectedPath) {
  Prepared p = prepare(corpus::directed_path(5), 0, 4);
  auto paths = work_paths(p.dec, 4);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].nodes, (std::vector<Vertex>{0, 1, 2}));
  auto c = classify_path_arcs(p.inst, p.dec, paths[0]);
  EXPECT_TRUE(c.A_plus.empty());
  EXPECT_TRUE(c.A_zero.empty());
  EXPECT_TRUE(c.A_minus.empty());
}

TEST(Classify, Paper3Unreduced) {
  Instance inst;
  inst.graph = corpus::paper3(4, false);
  inst.s = 0;
  inst.t = 5;
  CutDecomposition dec = build_cut_decomposition(inst.graph, 0);
  auto deg = degenerate_paths(dec);
  ASSERT_EQ(deg.size(), 1u);
  auto c = classify_path_arcs(inst, dec, whole(deg[0]));
  EXPECT_EQ(c.A_zero, (ArcSet{{2, 1}, {3, 1}, {3, 2}}));
  EXPECT_EQ(c.A_minus, (ArcSet{{4, 1}, {4, 2}, {4, 3}}));
  EXPECT_TRUE(c.A_plus.empty());
  EXPECT_EQ(c.Y, (std::vector<Vertex>{2, 3}));
}

TEST(Classify, FixtureClasses) {
  Prepared up = prepare(corpus::up_heads_fixture(), 0, 9);
  auto paths = work_paths(up.dec, 9);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].nodes, (std::vector<Vertex>{5, 6, 7}));
  auto c = classify_path_arcs(up.inst, up.dec, paths[0]);
  EXPECT_EQ(c.A_plus, (ArcSet{{6, 1}, {6, 2}, {7, 3}, {7, 4}}));
  EXPECT_EQ(c.X, (std::vector<Vertex>{6, 7}));
  EXPECT_EQ(c.X_heads, (std::vector<Vertex>{1, 2, 3, 4}));

  Prepared z = prepare(corpus::a_zero_fixture(), 0, 1);
  auto zp = work_paths(z.dec, 1);
  ASSERT_EQ(zp.size(), 1u);
  EXPECT_EQ(zp[0].nodes, (std::vector<Vertex>{2, 3, 4}));
  auto zc = classify_path_arcs(z.inst, z.dec, zp[0]);
  EXPECT_EQ(zc.A_zero, (ArcSet{{4, 2}}));
  EXPECT_EQ(zc.Y, (std::vector<Vertex>{4}));
}

TEST(Classify, OnPathAndFromBelowArcsAreOutForbidden) {
  std::mt19937_64 rng(127);
  int paths_seen = 0;
  for (int i = 0; i < 300; ++i) {
    Digraph d = corpus::chainy(rng, corpus::uniform_int(rng, 4, 12), 0.25, 0.05);
    Vertex t = corpus::uniform(rng) < 0.5 ? d.vertex_count() - 1 : corpus::uniform_int(rng, 0, d.vertex_count() - 1);
    auto r = reduce_instance(d, 0, t);
    if (!r) continue;
    Instance a = with_aux_arc(*r);
    CutDecomposition dec = build_cut_decomposition(a.graph, 0);
    a = with_forbidden_arcs(a, &dec);
    for (const WorkPath& p : work_paths(dec, t)) {
      auto c = classify_path_arcs(a, dec, p);
      for (const Arc& x : c.A_zero) EXPECT_TRUE(a.R_s.contains(x));
      for (const Arc& x : c.A_minus) EXPECT_TRUE(a.R_s.contains(x));
      ++paths_seen;
    }
  }
  EXPECT_GT(paths_seen, 50);
}

TEST(Rule1, NothingToDo) {
  Prepared p = prepare(corpus::up_heads_fixture(), 0, 9);
  Instance after = apply_rule1(p.inst, p.dec, work_paths(p.dec, 9)[0]);
  EXPECT_EQ(after.graph, p.inst.graph);
  EXPECT_TRUE(after.reduced);
}

TEST(Rule1, DropsLowerDuplicate) {
  Digraph d = corpus::rule1_fixture();
  Prepared p = prepare(d, 0, 5);
  // both upward arcs are outside every in-branching at 5, inside some out-branching at 0
  ArcSet in_ok = oracle::arcs_in_some_branching(d, 5, true);
  ArcSet out_ok = oracle::arcs_in_some_branching(d, 0, false);
  for (Arc a : {Arc{2, 1}, Arc{3, 1}}) {
    EXPECT_FALSE(in_ok.contains(a));
    EXPECT_TRUE(out_ok.contains(a));
    EXPECT_TRUE(p.inst.R_t.contains(a));
  }
  auto paths = work_paths(p.dec, 5);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].nodes, (std::vector<Vertex>{2, 3}));
  Instance after = apply_rule1(p.inst, p.dec, paths[0]);
  EXPECT_FALSE(after.graph.has_arc(3, 1));
  EXPECT_TRUE(after.graph.has_arc(2, 1));
  EXPECT_EQ(after.graph.arc_count(), p.inst.graph.arc_count() - 1);
  for (int k = 1; k <= 4; ++k)
    EXPECT_EQ(oracle_yes(d, 0, 5, k), oracle_yes(without_arcs(d, {{3, 1}}), 0, 5, k)) << "k=" << k;
}

TEST(Rule2, DirectedPathInteriorContracts) {
  Digraph d = corpus::directed_path(5);
  Prepared p = prepare(d, 0, 4);
  auto c = apply_rule2(p.inst, p.dec, work_paths(p.dec, 4)[0]);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->contraction.segments, (std::vector<std::vector<Vertex>>{{0, 1, 2}}));
  const Instance& ci = c->instance;
  EXPECT_EQ(ci.graph.vertex_count(), 3);
  EXPECT_EQ(oracle_yes(d, 0, 4, 0), oracle_yes(ci.graph, ci.s, ci.t, 0));
  EXPECT_EQ(oracle_yes(d, 0, 4, 1), oracle_yes(ci.graph, ci.s, ci.t, 1));
  EXPECT_TRUE(oracle_yes(ci.graph, ci.s, ci.t, 0));
  EXPECT_FALSE(oracle_yes(ci.graph, ci.s, ci.t, 1));
}

TEST(Rule2, SplitsAroundUpwardTail) {
  Digraph d = mid_tail();
  Prepared p = prepare(d, 0, 8);
  auto paths = work_paths(p.dec, 8);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].nodes, (std::vector<Vertex>{2, 3, 4, 5, 6}));
  auto c = apply_rule2(p.inst, p.dec, paths[0]);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->contraction.segments, (std::vector<std::vector<Vertex>>{{2, 3}, {5, 6}}));
  EXPECT_EQ(c->instance.graph.vertex_count(), 7);
  for (int k = 1; k <= 3; ++k)
    EXPECT_EQ(oracle_yes(d, 0, 8, k), oracle_yes(c->instance.graph, c->instance.s, c->instance.t, k));
}

TEST(Rule2, NoSegment) {
  Prepared p = prepare(corpus::up_heads_fixture(), 0, 9);
  // 6 and 7 are tails, 5 alone is too short
  EXPECT_FALSE(apply_rule2(p.inst, p.dec, work_paths(p.dec, 9)[0]));
}

TEST(Rule2, LiftedCertificatesVerify) {
  std::mt19937_64 rng(131);
  int lifted = 0;
  for (int i = 0; i < 300 && lifted < 60; ++i) {
    Digraph d = corpus::chainy(rng, corpus::uniform_int(rng, 5, 10), 0.2, 0.05);
    Vertex t = d.vertex_count() - 1;
    auto r = reduce_instance(d, 0, t);
    if (!r) continue;
    Instance a = with_aux_arc(*r);
    CutDecomposition dec = build_cut_decomposition(a.graph, 0);
    a = with_forbidden_arcs(a, &dec);
    for (const WorkPath& p : work_paths(dec, t)) {
      auto c = apply_rule2(a, dec, p);
      if (!c) continue;
      const Instance& ci = c->instance;
      for (int k = 1; k <= 3; ++k) {
        auto before = oracle_solve(a.graph, a.s, a.t, k, 64);
        auto after = oracle_solve(ci.graph, ci.s, ci.t, k, 64);
        EXPECT_EQ(before.yes, after.yes);
        if (!after.yes) continue;
        Tree out = lift_tree(c->contraction, after.certificate->out);
        Tree in = lift_tree(c->contraction, after.certificate->in);
        Certificate cert = make_certificate(d, 0, t, k, out, in);
        EXPECT_TRUE(verify_certificate(d, 0, t, k, cert));
        ++lifted;
      }
      break;
    }
  }
  EXPECT_GT(lifted, 20);
}
