#include "fracneum/grid_function.hpp"

#include <cmath>
#include <string>

#include "fracneum/errors.hpp"

namespace fracneum {

GridFunction::GridFunction(const DomainMesh& mesh, std::vector<double> values)
    : values_(std::move(values)), mesh_id_(mesh.id()) {
    if (values_.size() != mesh.size())
        throw BindingError("GridFunction: " + std::to_string(values_.size()) + " values for a mesh of " +
                           std::to_string(mesh.size()) + " cells");
    for (double v : values_)
        if (!std::isfinite(v)) throw InputError("GridFunction: non-finite value");
}

GridFunction GridFunction::zeros(const DomainMesh& mesh) { return constant(mesh, 0.0); }

GridFunction GridFunction::constant(const DomainMesh& mesh, double c) {
    return GridFunction(mesh, std::vector<double>(mesh.size(), c));
}

void GridFunction::require_mesh(const DomainMesh& mesh) const {
    if (mesh_id_ != mesh.id() || values_.size() != mesh.size())
        throw BindingError("GridFunction is not bound to this mesh");
}

}  // namespace fracneum
