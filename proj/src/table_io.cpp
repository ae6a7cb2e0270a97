#include "unbreak/table_io.hpp"

#include <fstream>
#include <sstream>

#include "unbreak/io.hpp"

namespace unbreak {

std::string write_table(const RepresentativeTable& table) {
  std::ostringstream os;
  os << "fsmtable.v1\n";
  os << "prop " << table.property << "\n";
  os << "budget " << table.label_budget << "\n";
  os << "arity " << table.arity << "\n";
  os << "kinds";
  for (Kind k : table.element_kinds) os << " " << kind_name(k);
  os << "\n";
  os << "ubound " << table.universe_bound << "\n";
  os << "cbound " << table.context_bound << "\n";
  os << "r " << table.max_code_length << "\n";
  os << "maxrepv " << table.max_rep_vertices << "\n";
  os << "classes " << table.reps.size() << "\n";
  for (size_t i = 0; i < table.reps.size(); ++i) {
    os << "class " << i << "\n";
    os << serialize_structure(table.reps[i]);
    os << "endclass\n";
  }
  os << "matrix\n";
  for (const auto& row : table.answers) {
    for (int8_t v : row) os << (v < 0 ? '-' : (v == 0 ? '0' : '1'));
    os << "\n";
  }
  os << "endmatrix\n";
  return os.str();
}

RepresentativeTable parse_table(std::istream& in) {
  RepresentativeTable table;
  std::string line;
  int line_no = 0;
  auto next_line = [&](std::string& out) {
    if (!std::getline(in, out)) throw ParseError("unexpected end of table file", line_no);
    ++line_no;
  };
  next_line(line);
  if (line != "fsmtable.v1") throw ParseError("bad table header", line_no);

  size_t zeta = 0;
  while (true) {
    next_line(line);
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "prop") {
      ls >> table.property;
    } else if (tag == "budget") {
      ls >> table.label_budget;
    } else if (tag == "arity") {
      ls >> table.arity;
    } else if (tag == "kinds") {
      std::string name;
      while (ls >> name) {
        auto k = kind_from_name(name);
        if (!k) throw ParseError("unknown kind '" + name + "'", line_no);
        table.element_kinds.push_back(*k);
      }
    } else if (tag == "ubound") {
      ls >> table.universe_bound;
    } else if (tag == "cbound") {
      ls >> table.context_bound;
    } else if (tag == "r") {
      ls >> table.max_code_length;
    } else if (tag == "maxrepv") {
      ls >> table.max_rep_vertices;
    } else if (tag == "classes") {
      ls >> zeta;
      break;
    } else {
      throw ParseError("unknown table line '" + tag + "'", line_no);
    }
  }
  for (size_t i = 0; i < zeta; ++i) {
    next_line(line);
    if (line.rfind("class", 0) != 0) throw ParseError("expected class block", line_no);
    std::string block;
    while (true) {
      next_line(line);
      if (line == "endclass") break;
      block += line;
      block += "\n";
    }
    BoundariedStructure rep = parse_structure_string(block);
    table.rep_codes.push_back(canonical_code(rep));
    table.reps.push_back(std::move(rep));
  }
  next_line(line);
  if (line != "matrix") throw ParseError("expected matrix block", line_no);
  for (size_t i = 0; i < zeta; ++i) {
    next_line(line);
    if (line.size() != zeta) throw ParseError("matrix row of wrong width", line_no);
    std::vector<int8_t> row;
    for (char ch : line) {
      if (ch == '-') {
        row.push_back(-1);
      } else if (ch == '0') {
        row.push_back(0);
      } else if (ch == '1') {
        row.push_back(1);
      } else {
        throw ParseError("matrix entries must be 0/1/-", line_no);
      }
    }
    table.answers.push_back(std::move(row));
  }
  next_line(line);
  if (line != "endmatrix") throw ParseError("expected endmatrix", line_no);
  return table;
}

RepresentativeTable parse_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path, 0);
  return parse_table(in);
}

}  // namespace unbreak
