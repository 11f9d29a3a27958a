#include "fracneum/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "fracneum/errors.hpp"

namespace fracneum {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, std::string_view what) {
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) token.remove_suffix(1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw InputError(std::string(what) + ": not a number: '" + std::string(token) + "'");
    if (!std::isfinite(value)) throw InputError(std::string(what) + ": not finite: '" + std::string(token) + "'");
    return value;
}

void write_grid_function(std::ostream& os, const DomainMesh& mesh, const GridFunction& u) {
    u.require_mesh(mesh);
    os << "cell_center,cell_measure,tag,value\n";
    for (std::size_t k = 0; k < mesh.size(); ++k)
        os << format_double(mesh.cell_center(k)) << ',' << format_double(mesh.cell_measure(k)) << ','
           << (mesh.is_interior(k) ? "INTERIOR" : "EXTERIOR") << ',' << format_double(u[k]) << '\n';
}

GridFunction read_grid_function(std::istream& is, const DomainMesh& mesh) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("cell_center,cell_measure,tag,value", 0) != 0)
        throw InputError("grid function CSV: missing header");
    std::vector<double> values;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 4) throw InputError("grid function CSV: expected 4 fields per row");
        const std::size_t k = values.size();
        if (k >= mesh.size()) throw BindingError("grid function CSV: more rows than mesh cells");
        const double center = parse_double(fields[0], "cell_center");
        if (std::abs(center - mesh.cell_center(k)) > 1e-12 * (1.0 + std::abs(center)))
            throw BindingError("grid function CSV: cell centers do not match the mesh");
        values.push_back(parse_double(fields[3], "value"));
    }
    return GridFunction(mesh, std::move(values));
}

}  // namespace fracneum
