#include "unbreak/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace unbreak {

namespace {

struct RawFile {
  int n = -1;
  std::vector<Edge> edges;
  std::map<Vertex, int> labels;                         // b lines
  std::vector<std::pair<int, Element>> elements;        // x lines (index, element)
  std::vector<Vertex> terminals;                        // t lines
  std::vector<std::vector<Vertex>> relation_classes;    // r lines
  int declared_m = -1;
};

int parse_int(const std::string& tok, int line_no) {
  size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + tok + "'", line_no);
  }
  if (used != tok.size()) {
    throw ParseError("expected integer, got '" + tok + "'", line_no);
  }
  return value;
}

Vertex parse_vertex(const std::string& tok, int n, int line_no) {
  int v = parse_int(tok, line_no);
  if (v < 0 || v >= n) {
    throw ParseError("vertex id " + tok + " out of range [0," +
                         std::to_string(n) + ")",
                     line_no);
  }
  return v;
}

RawFile parse_raw(std::istream& in) {
  RawFile raw;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag[0] == '#') continue;
    if (tag == "p") {
      if (raw.n >= 0) throw ParseError("duplicate p line", line_no);
      std::string ns, ms;
      if (!(ls >> ns >> ms)) throw ParseError("p line needs `p <n> <m>`", line_no);
      raw.n = parse_int(ns, line_no);
      raw.declared_m = parse_int(ms, line_no);
      if (raw.n < 0 || raw.declared_m < 0) {
        throw ParseError("p line counts must be non-negative", line_no);
      }
      continue;
    }
    if (raw.n < 0) throw ParseError("`" + tag + "` line before p line", line_no);
    if (tag == "e") {
      std::string us, vs;
      if (!(ls >> us >> vs)) throw ParseError("e line needs two ids", line_no);
      raw.edges.push_back(Edge{parse_vertex(us, raw.n, line_no),
                               parse_vertex(vs, raw.n, line_no)});
    } else if (tag == "b") {
      std::string vs, lsr;
      if (!(ls >> vs >> lsr)) throw ParseError("b line needs `b <v> <label>`", line_no);
      Vertex v = parse_vertex(vs, raw.n, line_no);
      int label = parse_int(lsr, line_no);
      if (label <= 0) throw ParseError("labels must be positive", line_no);
      if (raw.labels.count(v)) throw ParseError("vertex labeled twice", line_no);
      raw.labels[v] = label;
    } else if (tag == "x") {
      std::string idxs, kinds;
      if (!(ls >> idxs >> kinds)) {
        throw ParseError("x line needs `x <index> <kind> ...`", line_no);
      }
      int idx = parse_int(idxs, line_no);
      auto kind = kind_from_name(kinds);
      if (!kind || *kind == Kind::Graph) {
        throw ParseError("unknown element kind '" + kinds + "'", line_no);
      }
      Element el;
      std::string tok;
      switch (*kind) {
        case Kind::Vertex:
          if (!(ls >> tok)) throw ParseError("vertex element needs an id", line_no);
          el = Element::of_vertex(parse_vertex(tok, raw.n, line_no));
          break;
        case Kind::Edge:
          if (!(ls >> tok)) throw ParseError("edge element needs an index", line_no);
          el = Element::of_edge(parse_int(tok, line_no));
          break;
        case Kind::VertexSet: {
          VertexSet s;
          while (ls >> tok) s.insert(parse_vertex(tok, raw.n, line_no));
          el = Element::of_vertex_set(std::move(s));
          break;
        }
        case Kind::EdgeSet: {
          std::set<int> s;
          while (ls >> tok) s.insert(parse_int(tok, line_no));
          el = Element::of_edge_set(std::move(s));
          break;
        }
        default:
          el = Element::star();
          break;
      }
      raw.elements.push_back({idx, std::move(el)});
    } else if (tag == "t") {
      std::string vs;
      if (!(ls >> vs)) throw ParseError("t line needs a vertex", line_no);
      raw.terminals.push_back(parse_vertex(vs, raw.n, line_no));
    } else if (tag == "r") {
      std::vector<Vertex> cls;
      std::string tok;
      while (ls >> tok) cls.push_back(parse_vertex(tok, raw.n, line_no));
      if (cls.empty()) throw ParseError("r line needs at least one vertex", line_no);
      raw.relation_classes.push_back(std::move(cls));
    } else {
      throw ParseError("unknown line tag '" + tag + "'", line_no);
    }
  }
  if (raw.n < 0) throw ParseError("missing p line", 0);
  if (raw.declared_m != static_cast<int>(raw.edges.size())) {
    throw ParseError("p line declares " + std::to_string(raw.declared_m) +
                         " edges but found " + std::to_string(raw.edges.size()),
                     0);
  }
  return raw;
}

Graph raw_to_graph(const RawFile& raw) {
  VertexSet vs;
  for (int i = 0; i < raw.n; ++i) vs.insert(i);
  return Graph(std::move(vs), raw.edges);
}

}  // namespace

Graph parse_graph(std::istream& in) {
  RawFile raw = parse_raw(in);
  if (!raw.labels.empty() || !raw.elements.empty() || !raw.terminals.empty() ||
      !raw.relation_classes.empty()) {
    throw ParseError("plain graph file may only contain p/e lines", 0);
  }
  return raw_to_graph(raw);
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Graph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path, 0);
  return parse_graph(in);
}

BoundariedStructure parse_structure(std::istream& in) {
  RawFile raw = parse_raw(in);
  if (!raw.terminals.empty() || !raw.relation_classes.empty()) {
    throw ParseError("structure file may not contain t/r lines", 0);
  }
  Graph g = raw_to_graph(raw);
  BoundariedStructure s;
  s.bgraph = BoundariedGraph(g, raw.labels);
  std::sort(raw.elements.begin(), raw.elements.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  int expect = 2;
  for (auto& [idx, el] : raw.elements) {
    if (idx != expect) {
      throw ParseError("element indices must be consecutive from 2; got " +
                           std::to_string(idx),
                       0);
    }
    validate_element(g, el, true);
    s.elements.push_back(std::move(el));
    ++expect;
  }
  return s;
}

BoundariedStructure parse_structure_string(const std::string& text) {
  std::istringstream in(text);
  return parse_structure(in);
}

BoundariedStructure parse_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path, 0);
  return parse_structure(in);
}

ParsedGraphFile parse_graph_with_annotations(std::istream& in) {
  RawFile raw = parse_raw(in);
  if (!raw.labels.empty() || !raw.elements.empty()) {
    throw ParseError("annotated graph file may not contain b/x lines", 0);
  }
  ParsedGraphFile out;
  out.graph = raw_to_graph(raw);
  out.terminals = raw.terminals;
  out.relation_classes = raw.relation_classes;
  return out;
}

ParsedGraphFile parse_graph_with_annotations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path, 0);
  return parse_graph_with_annotations(in);
}

std::string write_graph(const Graph& g) {
  std::map<Vertex, int> ren;
  int next = 0;
  for (Vertex v : g.vertices()) ren[v] = next++;
  std::ostringstream os;
  os << "p " << g.num_vertices() << " " << g.num_edges() << "\n";
  for (const Edge& e : g.edges()) {
    os << "e " << ren.at(e.u) << " " << ren.at(e.v) << "\n";
  }
  return os.str();
}

}  // namespace unbreak
