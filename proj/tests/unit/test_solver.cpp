#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "arbor/certificate.hpp"
#include "arbor/generators.hpp"
#include "arbor/solver.hpp"
#include "corpus.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace arbor;

namespace {

Certificate diamond_cert() {
  Digraph d = corpus::diamond();
  return make_certificate(d, 0, 4, 1, Tree{0, Orientation::out, {{0, 1}, {0, 2}, {1, 3}, {3, 4}}},
                          Tree{4, Orientation::in, {{0, 1}, {1, 3}, {2, 3}, {3, 4}}});
}

void expect_sound(const Digraph& d, Vertex s, Vertex t, int k, const SolveResult& r) {
  if (r.answer != Answer::yes) return;
  ASSERT_TRUE(r.certificate);
  EXPECT_TRUE(verify_certificate(d, r.certificate->s, r.certificate->t, k, *r.certificate));
  if (s >= 0) {
    EXPECT_EQ(r.certificate->s, s);
    EXPECT_EQ(r.certificate->t, t);
  }
}

}  // namespace

TEST(Oracle, MatchesPairEnumeration) {
  std::mt19937_64 rng(161);
  for (int i = 0; i < 200; ++i) {
    Digraph d = corpus::random_digraph(rng, corpus::uniform_int(rng, 1, 6), 0.3 + 0.4 * corpus::uniform(rng));
    Vertex s = corpus::uniform_int(rng, 0, d.vertex_count() - 1);
    Vertex t = corpus::uniform_int(rng, 0, d.vertex_count() - 1);
    int k = corpus::uniform_int(rng, 0, 4);
    OracleResult o = oracle_solve(d, s, t, k);
    EXPECT_EQ(o.yes, oracle::k_distinct(d, s, t, k));
    if (o.yes) {
      ASSERT_TRUE(o.certificate);
      EXPECT_TRUE(verify_certificate(d, s, t, k, *o.certificate));
    }
  }
}

TEST(Oracle, Cap) {
  EXPECT_THROW(oracle_solve(bidirected_cycle(13), 0, 1, 1, 12), OracleCapExceeded);
  EXPECT_NO_THROW(oracle_solve(bidirected_cycle(12), 0, 1, 1, 12));
}

TEST(Oracle, CapFromEnvironment) {
  ::setenv("ARBOR_ORACLE_CAP", "7", 1);
  EXPECT_EQ(default_oracle_cap(), 7);
  ::setenv("ARBOR_ORACLE_CAP", "junk", 1);
  EXPECT_EQ(default_oracle_cap(), 12);
  ::unsetenv("ARBOR_ORACLE_CAP");
  EXPECT_EQ(default_oracle_cap(), 12);
}

TEST(Solve, Diamond) {
  Digraph d = corpus::diamond();
  SolveResult r = solve(d, 0, 4, 1);
  EXPECT_EQ(r.answer, Answer::yes);
  expect_sound(d, 0, 4, 1, r);
  EXPECT_FALSE(r.trace.empty());
}

TEST(Solve, ClosedPaper3Family) {
  for (int n = 3; n <= 6; ++n) {
    Digraph d = corpus::paper3(n, true);
    EXPECT_EQ(d, paper3_digraph(n, true));
    EXPECT_EQ(solve(d, 0, n + 1, 1).answer, Answer::no) << n;
    EXPECT_EQ(solve(d, 0, n + 1, 0).answer, Answer::yes) << n;
    EXPECT_EQ(solve(d, 0, n + 1, 0).branch, "k-zero");
  }
}

TEST(Solve, Rejects) {
  SolveResult r = solve(corpus::diamond(), 3, 4, 1);
  EXPECT_EQ(r.answer, Answer::no);
  EXPECT_EQ(r.branch, "reject");
  EXPECT_THROW(solve(corpus::diamond(), 0, 9, 1), ContractError);
  EXPECT_THROW(solve(corpus::diamond(), 0, 4, -1), ContractError);
}

TEST(Solve, FixturesReachTheirCertifiers) {
  struct Case {
    Digraph d;
    Vertex t;
    int k;
    std::string branch;
  };
  std::vector<Case> cases{
      {corpus::up_heads_fixture(), 9, 1, "up-arc-heads"},
      {corpus::a_plus_fixture(), 1, 1, "up-arc-in-tree"},
      {corpus::a_zero_fixture(), 1, 1, "on-path-in-tree"},
      {corpus::layered3(), 9, 2, "nondegenerate-path"},
  };
  for (const Case& c : cases) {
    SolveResult r = solve(c.d, 0, c.t, c.k, {.oracle_cap = 12, .validate_decompositions = true});
    EXPECT_EQ(r.answer, Answer::yes) << c.branch;
    EXPECT_EQ(r.branch, c.branch);
    expect_sound(c.d, 0, c.t, c.k, r);
  }
}

TEST(Solve, Rule1Fires) {
  Digraph d = corpus::rule1_fixture();
  SolveResult r = solve(d, 0, 5, 1);
  EXPECT_GE(r.rule1_removed, 1);
  EXPECT_EQ(r.answer == Answer::yes, oracle_solve(d, 0, 5, 1).yes);
  expect_sound(d, 0, 5, 1, r);
}

TEST(Solve, LongChainStaysExactWithoutOracle) {
  // a bare chain has identical unique branchings: Rule 2 contracts it
  // and the answer comes out NO even with the oracle disabled
  Digraph d = corpus::directed_path(30);
  SolveResult r = solve(d, 0, 29, 1, {.oracle_cap = 4});
  EXPECT_NE(r.answer, Answer::yes);
  EXPECT_GE(r.rule2_contracted, 1);
}

TEST(Solve, AgreesWithOracle) {
  std::mt19937_64 rng(163);
  for (int i = 0; i < 200; ++i) {
    Digraph d = i % 2 ? corpus::random_digraph(rng, corpus::uniform_int(rng, 2, 7), 0.3 + 0.3 * corpus::uniform(rng))
                      : corpus::chainy(rng, corpus::uniform_int(rng, 3, 7), 0.3, 0.1);
    Vertex t = corpus::uniform_int(rng, 0, d.vertex_count() - 1);
    int k = corpus::uniform_int(rng, 1, 4);
    SolveResult r = solve(d, 0, t, k, {.oracle_cap = 12, .validate_decompositions = true});
    EXPECT_EQ(r.answer == Answer::yes, oracle_solve(d, 0, t, k).yes);
    expect_sound(d, 0, t, k, r);
  }
}

TEST(Unrooted, MatchesPairSweep) {
  std::mt19937_64 rng(167);
  for (int i = 0; i < 80; ++i) {
    Digraph d = corpus::random_digraph(rng, corpus::uniform_int(rng, 2, 6), 0.25 + 0.3 * corpus::uniform(rng));
    int k = corpus::uniform_int(rng, 1, 4);
    bool want = false;
    for (Vertex s = 0; s < d.vertex_count() && !want; ++s)
      for (Vertex t = 0; t < d.vertex_count() && !want; ++t) want = oracle::k_distinct(d, s, t, k);
    SolveResult r = solve_unrooted(d, k);
    EXPECT_EQ(r.answer == Answer::yes, want);
    expect_sound(d, -1, -1, k, r);
  }
}

TEST(SingleRoot, Examples) {
  Digraph tri = bidirected_cycle(3);
  SolveResult r = solve_single_root(tri, 2);
  EXPECT_EQ(r.answer, Answer::yes);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.certificate->s, r.certificate->t);
  expect_sound(tri, -1, -1, 2, r);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SolveResult dag = solve_single_root(random_dag(6, 0.5, seed), 1);
    EXPECT_EQ(dag.answer, Answer::no);
  }
}

TEST(SingleRoot, MatchesRootSweep) {
  std::mt19937_64 rng(173);
  for (int i = 0; i < 80; ++i) {
    Digraph d = corpus::random_digraph(rng, corpus::uniform_int(rng, 2, 6), 0.3 + 0.4 * corpus::uniform(rng));
    int k = corpus::uniform_int(rng, 1, 5);
    bool want = false;
    for (Vertex r = 0; r < d.vertex_count() && !want; ++r) want = oracle::k_distinct(d, r, r, k);
    SolveResult got = solve_single_root(d, k);
    EXPECT_EQ(got.answer == Answer::yes, want);
    expect_sound(d, -1, -1, k, got);
    if (got.certificate) {
      EXPECT_EQ(got.certificate->s, got.certificate->t);
    }
  }
}

TEST(Certificate, VerifyMutations) {
  Digraph d = corpus::diamond();
  Certificate c = diamond_cert();
  EXPECT_EQ(c.distinctness, 1);
  EXPECT_TRUE(verify_certificate(d, 0, 4, 1, c));
  EXPECT_FALSE(verify_certificate(d, 0, 4, 2, c));
  EXPECT_FALSE(verify_certificate(d, 1, 4, 1, c));

  Certificate swapped = c;  // 0 now leaves twice and 2 has no way out
  swapped.in.arcs.erase({2, 3});
  swapped.in.arcs.insert({0, 2});
  EXPECT_FALSE(verify_certificate(d, 0, 4, 1, swapped));

  Certificate lying = c;
  lying.distinctness = 2;
  EXPECT_FALSE(verify_certificate(d, 0, 4, 1, lying));

  Certificate aux = c;  // an arc outside d
  aux.out.arcs.erase({0, 2});
  aux.out.arcs.insert({4, 2});
  EXPECT_FALSE(verify_certificate(d, 0, 4, 1, aux));

  Certificate flipped = c;
  std::swap(flipped.out, flipped.in);
  EXPECT_FALSE(verify_certificate(d, 0, 4, 1, flipped));
}

TEST(Certificate, JsonRoundTrip) {
  Digraph d = corpus::diamond();
  Certificate c = diamond_cert();
  Certificate back = certificate_from_json(to_json(c), d);
  EXPECT_EQ(back.out.arcs, c.out.arcs);
  EXPECT_EQ(back.in.arcs, c.in.arcs);
  EXPECT_EQ(back.distinctness, 1);
  EXPECT_TRUE(verify_certificate(d, 0, 4, 1, back));
  EXPECT_THROW(certificate_from_json("{\"k\":1}", d), ParseError);
  EXPECT_THROW(certificate_from_json("not json", d), ParseError);
}

TEST(Golden, DiamondCertificate) {
  Certificate c = diamond_cert();
  expect_golden("diamond_certificate.json", to_json(c));
  expect_golden("diamond_certificate.dot", to_dot(corpus::diamond(), c));
}
