#include "arbor/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace arbor {

namespace {

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
  return line;
}

// Parses exactly two non-negative integers from `line`.
bool parse_pair(std::string_view line, long long& a, long long& b) {
  std::istringstream in{std::string(line)};
  std::string extra;
  if (!(in >> a >> b)) return false;
  return !(in >> extra);
}

}  // namespace

Digraph parse_edge_list(std::string_view text, ParseOptions options) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  long long n = 0, m = 0, arc_lines = 0;
  std::vector<Arc> arcs;
  std::set<Arc> seen;

  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::string_view line = strip_comment(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    long long a = 0, b = 0;
    if (!parse_pair(line, a, b)) throw ParseError(line_no, "expected two integers");
    if (!have_header) {
      if (a < 0 || b < 0) throw ParseError(line_no, "negative header value");
      n = a;
      m = b;
      have_header = true;
      continue;
    }
    if (arc_lines >= m) throw ParseError(line_no, "more arcs than announced");
    ++arc_lines;
    if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError(line_no, "vertex id out of range");
    if (a == b) throw ParseError(line_no, "self-loop at vertex " + std::to_string(a));
    Arc arc{static_cast<Vertex>(a), static_cast<Vertex>(b)};
    if (!seen.insert(arc).second) {
      if (!options.dedup)
        throw ParseError(line_no, "duplicate arc " + std::to_string(a) + " " + std::to_string(b));
      continue;
    }
    arcs.push_back(arc);
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no, "missing 'n m' header");
  if (arc_lines != m)
    throw ParseError(line_no, "expected " + std::to_string(m) + " arcs, found " +
                                  std::to_string(arc_lines));
  return Digraph(static_cast<int>(n), std::move(arcs));
}

Digraph read_edge_list_file(const std::string& path, ParseOptions options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str(), options);
}

std::string to_edge_list(const Digraph& d) {
  std::ostringstream out;
  out << d.vertex_count() << ' ' << d.arc_count() << '\n';
  for (const Arc& a : d.arcs()) out << a.tail << ' ' << a.head << '\n';
  return out.str();
}

std::string to_json(const Digraph& d) {
  nlohmann::ordered_json j;
  j["n"] = d.vertex_count();
  j["arcs"] = nlohmann::ordered_json::array();
  for (const Arc& a : d.arcs()) j["arcs"].push_back({a.tail, a.head});
  return j.dump();
}

Digraph digraph_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  if (!j.contains("n") || !j.contains("arcs")) throw ParseError(0, "missing 'n' or 'arcs'");
  std::vector<Arc> arcs;
  for (const auto& pair : j.at("arcs")) arcs.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
  return Digraph(j.at("n").get<int>(), std::move(arcs));
}

std::string to_dot(const Digraph& d) {
  std::ostringstream out;
  out << "digraph D {\n";
  for (Vertex v = 0; v < d.vertex_count(); ++v)
    out << "  " << v << " [label=\"" << d.label(v) << "\"];\n";
  for (const Arc& a : d.arcs()) out << "  " << a.tail << " -> " << a.head << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace arbor
