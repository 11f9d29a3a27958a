#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "fracneum/grid_function.hpp"
#include "fracneum/mesh.hpp"

namespace fracneum {

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

/// Strict parse of a full decimal token; throws InputError naming `what`.
double parse_double(std::string_view token, std::string_view what);

/// CSV with header "cell_center,cell_measure,tag,value", one row per cell.
void write_grid_function(std::ostream& os, const DomainMesh& mesh, const GridFunction& u);
GridFunction read_grid_function(std::istream& is, const DomainMesh& mesh);

}  // namespace fracneum
