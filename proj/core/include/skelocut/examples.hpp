#pragma once

#include "skelocut/polyhedron.hpp"

namespace skelocut::examples {

// Golden solids used by the CLI `examples` subcommand and the test suites.

Polyhedron regular_tetrahedron();     // edge length 1
Polyhedron cube();                    // unit edge
Polyhedron regular_octahedron();     // vertices at +-e_i
Polyhedron regular_icosahedron();    // edge length 1
Polyhedron pentagonal_dipyramid();   // all edges equal (J13)
Polyhedron regular_dodecahedron();
Polyhedron doubly_covered_square();
// One closed ring of degree-2 nodes over a tetrahedral base (the output of the
// ring construction applied once).
Polyhedron stacked_pyramid();

// 1-skeleton adjacency of the solids above, for the HIST tools.
std::vector<std::vector<int>> cube_graph();
std::vector<std::vector<int>> dodecahedron_graph();
std::vector<std::vector<int>> k4_graph();
std::vector<std::vector<int>> octahedron_graph();

// Balanced-parentheses encoding of the 7-leaf, 12-node tree realized by four
// truncations of a regular tetrahedron.
inline const char* tree_7leaves = "(((()())())(()())(()()))";

}  // namespace skelocut::examples
