#pragma once

#include <iosfwd>
#include <string>

#include "unbreak/finite_state.hpp"

namespace unbreak {

// Versioned text format: header `fsmtable.v1`, metadata lines, one
// serialized structure block per class, then the answer matrix.
std::string write_table(const RepresentativeTable& table);
RepresentativeTable parse_table(std::istream& in);
RepresentativeTable parse_table_file(const std::string& path);

}  // namespace unbreak
