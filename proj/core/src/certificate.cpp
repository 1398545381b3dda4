#include "arbor/certificate.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace arbor {

Certificate make_certificate(const Digraph& d, Vertex s, Vertex t, int k, const Tree& out, const Tree& in) {
  Certificate c;
  c.k = k;
  c.s = s;
  c.t = t;
  c.out = make_branching(d, out);
  c.in = make_branching(d, in);
  c.distinctness = distinctness(c.out, c.in);
  return c;
}

bool verify_certificate(const Digraph& d, Vertex s, Vertex t, int k, const Certificate& cert) {
  if (cert.s != s || cert.t != t) return false;
  if (cert.out.orientation != Orientation::out || cert.in.orientation != Orientation::in) return false;
  if (cert.out.root != s || cert.in.root != t) return false;
  if (!is_branching_of(d, cert.out) || !is_branching_of(d, cert.in)) return false;
  int shared = 0;
  for (const Arc& a : cert.out.arcs)
    if (cert.in.arcs.contains(a)) ++shared;
  const int diff = static_cast<int>(cert.out.arcs.size()) - shared;
  return diff == cert.distinctness && diff >= k;
}

namespace {

nlohmann::json arcs_json(const ArcSet& arcs) {
  auto j = nlohmann::json::array();
  for (const Arc& a : arcs) j.push_back({a.tail, a.head});
  return j;
}

ArcSet arcs_from(const nlohmann::json& j) {
  ArcSet out;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError(0, "certificate: arcs must be [u,v] pairs");
    out.insert({pair[0].get<Vertex>(), pair[1].get<Vertex>()});
  }
  return out;
}

}  // namespace

std::string to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["k"] = cert.k;
  j["s"] = cert.s;
  j["t"] = cert.t;
  j["out_arcs"] = arcs_json(cert.out.arcs);
  j["in_arcs"] = arcs_json(cert.in.arcs);
  j["distinctness"] = cert.distinctness;
  return j.dump();
}

Certificate certificate_from_json(std::string_view text, const Digraph& d) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    Certificate c;
    c.k = j.at("k").get<int>();
    c.s = j.at("s").get<Vertex>();
    c.t = j.at("t").get<Vertex>();
    c.distinctness = j.at("distinctness").get<int>();
    Tree out{c.s, Orientation::out, arcs_from(j.at("out_arcs"))};
    Tree in{c.t, Orientation::in, arcs_from(j.at("in_arcs"))};
    c.out = make_branching(d, std::move(out));
    c.in = make_branching(d, std::move(in));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("certificate: ") + e.what());
  }
}

std::string to_dot(const Digraph& d, const Certificate& cert) {
  std::ostringstream out;
  out << "digraph certificate {\n";
  out << "  " << cert.s << " [shape=box];\n";
  if (cert.t != cert.s) out << "  " << cert.t << " [shape=doublecircle];\n";
  for (const Arc& a : d.arcs()) {
    const bool plus = cert.out.arcs.contains(a), minus = cert.in.arcs.contains(a);
    out << "  " << a.tail << " -> " << a.head;
    if (plus && minus)
      out << " [style=bold]";
    else if (plus)
      out << " [color=blue]";
    else if (minus)
      out << " [color=red, style=dashed]";
    else
      out << " [color=gray]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace arbor
