#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arbor/certificate.hpp"
#include "arbor/digraph.hpp"

namespace arbor {

enum class Answer { yes, no, undecided };

std::string to_string(Answer a);

class OracleCapExceeded : public ContractError {
 public:
  using ContractError::ContractError;
};

// 12, or the value of ARBOR_ORACLE_CAP when that is a positive integer.
int default_oracle_cap();

struct OracleResult {
  bool yes = false;
  std::optional<Certificate> certificate;
};

// Exhaustive: every out-branching rooted at s paired with its least
// overlapping in-branching rooted at t. Throws OracleCapExceeded when d has
// more than `cap` vertices.
OracleResult oracle_solve(const Digraph& d, Vertex s, Vertex t, int k, int cap = default_oracle_cap());

struct SolveOptions {
  int oracle_cap = default_oracle_cap();
  // Run validate() on every decomposition and treat violations as bugs.
  bool validate_decompositions = false;
};

struct SolveResult {
  Answer answer = Answer::no;
  std::optional<Certificate> certificate;
  // What decided the answer: reject, k-zero, up-arc-heads, up-arc-in-tree,
  // on-path-in-tree, nondegenerate-path, bounded-height-max-leaf,
  // single-root-max-leaf, oracle or undecided.
  std::string branch;
  std::vector<std::string> trace;

  int rule1_removed = 0;
  int rule2_contracted = 0;
  // Set when the bounded-height stage was reached; the node count of the
  // longest maximal degenerate path avoiding t at that point.
  bool reached_bounded_height = false;
  int longest_degenerate_path = 0;
};

// Rooted k-Distinct Branchings for (d, s, t, k).
SolveResult solve(const Digraph& d, Vertex s, Vertex t, int k, const SolveOptions& options = {});
// Roots are free: tries every ordered pair (s, t), s == t included.
SolveResult solve_unrooted(const Digraph& d, int k, const SolveOptions& options = {});
// Both branchings share their root.
SolveResult solve_single_root(const Digraph& d, int k, const SolveOptions& options = {});

}  // namespace arbor
