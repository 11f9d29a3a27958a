#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fracneum/mesh.hpp"

namespace fracneum {

/// One value per cell of a bound mesh: the piecewise-constant element of X.
class GridFunction {
public:
    /// Throws BindingError on a length mismatch and InputError on non-finite values.
    GridFunction(const DomainMesh& mesh, std::vector<double> values);

    static GridFunction zeros(const DomainMesh& mesh);
    static GridFunction constant(const DomainMesh& mesh, double c);

    std::uint64_t mesh_id() const noexcept { return mesh_id_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }

    /// Throws BindingError unless this function is bound to `mesh`.
    void require_mesh(const DomainMesh& mesh) const;

private:
    std::vector<double> values_;
    std::uint64_t mesh_id_;
};

}  // namespace fracneum
