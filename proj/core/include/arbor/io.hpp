#pragma once

#include <string>
#include <string_view>

#include "arbor/digraph.hpp"

namespace arbor {

struct ParseOptions {
  bool dedup = false;
};

// Edge-list text: first non-comment line "n m", then m lines "u v".
// '#' starts a comment that runs to the end of the line.
Digraph parse_edge_list(std::string_view text, ParseOptions options = {});
Digraph read_edge_list_file(const std::string& path, ParseOptions options = {});

std::string to_edge_list(const Digraph& d);

// {"n":int,"arcs":[[u,v],...]}
std::string to_json(const Digraph& d);
Digraph digraph_from_json(std::string_view text);

std::string to_dot(const Digraph& d);

}  // namespace arbor
