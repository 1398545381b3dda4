// arbor: generate digraphs, inspect cut decompositions, solve and verify
// k-distinct branching instances.
//
// Exit codes: 0 YES / success, 1 NO or invalid input, 2 usage, 3 undecided.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "arbor/certificate.hpp"
#include "arbor/cut_decomposition.hpp"
#include "arbor/generators.hpp"
#include "arbor/io.hpp"
#include "arbor/solver.hpp"

namespace fs = std::filesystem;
using namespace arbor;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kUndecided = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GenArgs {
  std::string model = "gnp";
  int n = 8;
  double p = 0.3;
  std::uint64_t seed = 1;
  bool close = false;
};

int cmd_gen(const GenArgs& a) {
  Digraph d;
  try {
    if (a.model == "gnp")
      d = gnp_digraph(a.n, a.p, a.seed);
    else if (a.model == "dag")
      d = random_dag(a.n, a.p, a.seed);
    else if (a.model == "paper3")
      d = paper3_digraph(a.n, a.close);
    else if (a.model == "degenerate-chain")
      d = degenerate_chain(a.n, a.p, a.seed);
    else if (a.model == "bidirected-cycle")
      d = bidirected_cycle(a.n);
    else {
      std::cerr << "gen: unknown model " << a.model << "\n";
      return kUsage;
    }
  } catch (const ContractError& e) {
    std::cerr << "gen: " << e.what() << "\n";
    return kUsage;
  }
  std::cout << to_edge_list(d);
  return kYes;
}

struct DecomposeArgs {
  std::string file;
  int root = 0;
  std::string format = "json";
  bool dedup = false;
};

int cmd_decompose(const DecomposeArgs& a) {
  Digraph d = read_edge_list_file(a.file, {a.dedup});
  if (!d.is_vertex(a.root)) {
    std::cerr << "decompose: root " << a.root << " is not a vertex\n";
    return kNo;
  }
  if (d.vertex_count() < 2 || !has_rooted_out_branching(d, a.root)) {
    std::cerr << "decompose: not every vertex is reachable from " << a.root << "\n";
    return kNo;
  }
  CutDecomposition dec = build_cut_decomposition(d, a.root);
  std::cout << (a.format == "dot" ? to_dot(dec) : to_json(dec) + "\n");

  std::vector<Vertex> degenerate;
  for (Vertex x : dec.nodes())
    if (dec.is_degenerate(x)) degenerate.push_back(x);
  std::cerr << "nodes: " << dec.nodes().size() << ", height: " << dec.height() << "\n";
  std::cerr << "degenerate:";
  for (Vertex x : degenerate) std::cerr << ' ' << x;
  std::cerr << "\n";
  const auto violations = validate(dec);
  if (violations.empty()) std::cerr << "validation: ok\n";
  for (const auto& v : violations) std::cerr << "violation [" << to_string(v.clause) << "]: " << v.detail << "\n";
  return violations.empty() ? kYes : kNo;
}

struct SolveArgs {
  std::string file;
  int s = 0;
  int t = -1;
  int k = 1;
  std::string mode = "auto";
  std::string variant = "rooted";
  std::string cert;
  bool dedup = false;
};

// Pairwise oracle sweep for the unrooted and single-root variants.
SolveResult oracle_variant(const Digraph& d, int k, bool single_root, int cap) {
  SolveResult r;
  r.branch = "oracle";
  for (Vertex s = 0; s < d.vertex_count(); ++s)
    for (Vertex t = 0; t < d.vertex_count(); ++t) {
      if (single_root && s != t) continue;
      OracleResult o = oracle_solve(d, s, t, k, cap);
      if (!o.yes) continue;
      r.answer = Answer::yes;
      r.certificate = o.certificate;
      return r;
    }
  return r;
}

SolveResult run_solver(const Digraph& d, int s, int t, int k, const std::string& mode, const std::string& variant) {
  SolveOptions opts;
  const bool use_oracle = mode == "oracle" || (mode == "auto" && d.vertex_count() <= opts.oracle_cap);
  if (use_oracle) {
    try {
      if (variant != "rooted") return oracle_variant(d, k, variant == "single-root", opts.oracle_cap);
      OracleResult o = oracle_solve(d, s, t, k, opts.oracle_cap);
      SolveResult r;
      r.branch = "oracle";
      r.answer = o.yes ? Answer::yes : Answer::no;
      r.certificate = o.certificate;
      r.trace.push_back("oracle: exhaustive enumeration");
      return r;
    } catch (const OracleCapExceeded& e) {
      SolveResult r;
      r.answer = Answer::undecided;
      r.branch = "undecided";
      r.trace.push_back(std::string("oracle: ") + e.what());
      return r;
    }
  }
  if (variant == "unrooted") return solve_unrooted(d, k, opts);
  if (variant == "single-root") return solve_single_root(d, k, opts);
  return solve(d, s, t, k, opts);
}

int exit_code(Answer a) {
  switch (a) {
    case Answer::yes: return kYes;
    case Answer::no: return kNo;
    case Answer::undecided: return kUndecided;
  }
  return kNo;
}

int cmd_solve(const SolveArgs& a) {
  Digraph d = read_edge_list_file(a.file, {a.dedup});
  const int t = a.t < 0 ? d.vertex_count() - 1 : a.t;
  if (a.variant == "rooted" && (!d.is_vertex(a.s) || !d.is_vertex(t))) {
    std::cerr << "solve: s or t is not a vertex\n";
    return kNo;
  }
  if (a.k < 0) {
    std::cerr << "solve: k must be non-negative\n";
    return kUsage;
  }
  SolveResult r = run_solver(d, a.s, t, a.k, a.mode, a.variant);
  for (const auto& line : r.trace) std::cerr << line << "\n";
  std::cout << to_string(r.answer) << " " << r.branch << "\n";
  if (r.answer == Answer::yes && !a.cert.empty()) {
    std::ofstream out(a.cert);
    if (!out) throw std::runtime_error("cannot write " + a.cert);
    out << to_json(*r.certificate) << "\n";
  }
  return exit_code(r.answer);
}

struct VerifyArgs {
  std::string file;
  std::string cert;
  int k = -1;
  bool dedup = false;
};

int cmd_verify(const VerifyArgs& a) {
  Digraph d = read_edge_list_file(a.file, {a.dedup});
  Certificate c = certificate_from_json(slurp(a.cert), d);
  const int k = a.k < 0 ? c.k : a.k;
  const bool ok = verify_certificate(d, c.s, c.t, k, c);
  std::cout << (ok ? "valid" : "invalid") << "\n";
  return ok ? kYes : kNo;
}

struct BenchArgs {
  std::string dir;
  std::vector<std::string> modes{"fpt", "oracle"};
  int k = 1;
};

struct BenchInstance {
  int s = 0;
  int t = -1;
  int k = 1;
};

BenchInstance instance_header(const std::string& text, int default_k) {
  BenchInstance inst;
  inst.k = default_k;
  static const std::regex line_re(R"(#\s*instance([^\n]*))");
  std::smatch m;
  if (!std::regex_search(text, m, line_re)) return inst;
  const std::string rest = m[1];
  static const std::regex field_re(R"(([stk])\s*=\s*(\d+))");
  for (auto it = std::sregex_iterator(rest.begin(), rest.end(), field_re); it != std::sregex_iterator(); ++it) {
    const int v = std::stoi((*it)[2]);
    const char key = (*it)[1].str()[0];
    if (key == 's') inst.s = v;
    if (key == 't') inst.t = v;
    if (key == 'k') inst.k = v;
  }
  return inst;
}

int cmd_bench(const BenchArgs& a) {
  if (!fs::is_directory(a.dir)) {
    std::cerr << "bench: " << a.dir << " is not a directory\n";
    return kNo;
  }
  for (const auto& m : a.modes)
    if (m != "fpt" && m != "oracle" && m != "auto") {
      std::cerr << "bench: unknown mode " << m << "\n";
      return kUsage;
    }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a.dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::cout << "instance,n,m,s,t,k";
  for (const auto& m : a.modes) std::cout << ',' << m << "_answer," << m << "_branch," << m << "_ms";
  std::cout << "\n";
  int failures = 0;
  for (const auto& f : files) {
    const std::string text = slurp(f.string());
    Digraph d;
    try {
      d = parse_edge_list(text);
    } catch (const ParseError& e) {
      std::cerr << "bench: skipping " << f.filename().string() << ": " << e.what() << "\n";
      ++failures;
      continue;
    }
    BenchInstance inst = instance_header(text, a.k);
    if (inst.t < 0) inst.t = d.vertex_count() - 1;
    std::cout << f.filename().string() << ',' << d.vertex_count() << ',' << d.arc_count() << ',' << inst.s << ','
              << inst.t << ',' << inst.k;
    for (const auto& m : a.modes) {
      auto start = std::chrono::steady_clock::now();
      SolveResult r = run_solver(d, inst.s, inst.t, inst.k, m, "rooted");
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cout << ',' << to_string(r.answer) << ',' << r.branch << ',' << std::fixed << std::setprecision(3) << ms;
    }
    std::cout << "\n";
  }
  return failures ? kNo : kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut decompositions and k-distinct branchings"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Print a generated digraph as an edge list");
  g->add_option("--model", gen.model, "gnp, dag, paper3, degenerate-chain or bidirected-cycle");
  g->add_option("--n", gen.n, "Size parameter")->check(CLI::PositiveNumber);
  g->add_option("--p", gen.p, "Arc probability")->check(CLI::Range(0.0, 1.0));
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_flag("--close", gen.close, "paper3: add the closing arc v_{n+1} v_0");

  DecomposeArgs dec;
  auto* dc = app.add_subcommand("decompose", "Build and validate the rooted cut decomposition");
  dc->add_option("file", dec.file, "Edge-list file")->required();
  dc->add_option("--root", dec.root, "Root vertex");
  dc->add_option("--format", dec.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  dc->add_flag("--dedup", dec.dedup, "Collapse duplicate arcs instead of rejecting them");

  SolveArgs sol;
  auto* sc = app.add_subcommand("solve", "Decide k-distinct branchings");
  sc->add_option("file", sol.file, "Edge-list file")->required();
  sc->add_option("--s", sol.s, "Out-branching root (default 0)");
  sc->add_option("--t", sol.t, "In-branching root (default n-1)");
  sc->add_option("--k", sol.k, "Distinctness parameter (default 1)");
  sc->add_option("--mode", sol.mode, "auto, fpt or oracle")->check(CLI::IsMember({"auto", "fpt", "oracle"}));
  sc->add_option("--variant", sol.variant, "rooted, unrooted or single-root")
      ->check(CLI::IsMember({"rooted", "unrooted", "single-root"}));
  sc->add_option("--cert", sol.cert, "Write the certificate here on YES");
  sc->add_flag("--dedup", sol.dedup, "Collapse duplicate arcs instead of rejecting them");

  VerifyArgs ver;
  auto* vc = app.add_subcommand("verify", "Check a certificate against a digraph");
  vc->add_option("file", ver.file, "Edge-list file")->required();
  vc->add_option("cert", ver.cert, "Certificate JSON")->required();
  vc->add_option("--k", ver.k, "Required distinctness (default: the certificate's k)");
  vc->add_flag("--dedup", ver.dedup, "Collapse duplicate arcs instead of rejecting them");

  BenchArgs bench;
  auto* bc = app.add_subcommand("bench", "Solve every instance in a directory, CSV on stdout");
  bc->add_option("dir", bench.dir, "Directory of edge-list files")->required();
  bc->add_option("--modes", bench.modes, "Modes to run (fpt, oracle, auto)")->delimiter(',');
  bc->add_option("--k", bench.k, "k for files without an instance header");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*dc) return cmd_decompose(dec);
    if (*sc) return cmd_solve(sol);
    if (*vc) return cmd_verify(ver);
    if (*bc) return cmd_bench(bench);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNo;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNo;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNo;
  }
  return kUsage;
}
