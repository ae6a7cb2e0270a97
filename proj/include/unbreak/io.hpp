#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "unbreak/boundaried.hpp"
#include "unbreak/graph.hpp"

namespace unbreak {

// Graph text format: first content line `p <n> <m>`, then m lines
// `e <u> <v>` with 0-based ids < n. Blank lines and `#` comments are
// ignored. Parallel edges repeat `e` lines; a self-loop is `e u u`.
// Extensions used by other formats: `b <v> <label>` boundary lines,
// `x <index> <kind> <payload...>` element lines, `t <v>` terminal
// lines and `r <v1> <v2> ...` relation-class lines.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
Graph parse_graph_file(const std::string& path);

BoundariedStructure parse_structure(std::istream& in);
BoundariedStructure parse_structure_string(const std::string& text);
BoundariedStructure parse_structure_file(const std::string& path);

std::string write_graph(const Graph& g);

// Parsed form of the extended format, for formats layered on top of
// the plain graph (terminal/relation lines for cut instances).
struct ParsedGraphFile {
  Graph graph;
  std::vector<Vertex> terminals;
  std::vector<std::vector<Vertex>> relation_classes;
};

ParsedGraphFile parse_graph_with_annotations(std::istream& in);
ParsedGraphFile parse_graph_with_annotations_file(const std::string& path);

}  // namespace unbreak
