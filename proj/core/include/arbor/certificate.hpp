#pragma once

#include <string>
#include <string_view>

#include "arbor/branching.hpp"

namespace arbor {

// Witness for a YES answer: an out-branching rooted at s and an in-branching
// rooted at t with distinctness at least k.
struct Certificate {
  int k = 0;
  Vertex s = 0;
  Vertex t = 0;
  Branching out;
  Branching in;
  int distinctness = 0;
};

// Fills in distinctness. Both branchings must be branchings of d.
Certificate make_certificate(const Digraph& d, Vertex s, Vertex t, int k, const Tree& out, const Tree& in);

// Both branchings valid for d with the right roots and orientations, the
// recorded distinctness correct and at least k. Arcs outside d (such as an
// auxiliary ts arc) make it fail.
bool verify_certificate(const Digraph& d, Vertex s, Vertex t, int k, const Certificate& cert);

// {"k":..,"s":..,"t":..,"out_arcs":[[u,v]..],"in_arcs":[[u,v]..],"distinctness":..}
std::string to_json(const Certificate& cert);
// Reads a certificate and binds its branchings to d. Throws ParseError on
// malformed JSON; arcs are not checked here.
Certificate certificate_from_json(std::string_view text, const Digraph& d);
// Out-branching arcs solid, in-branching arcs dashed, shared arcs bold.
std::string to_dot(const Digraph& d, const Certificate& cert);

}  // namespace arbor
