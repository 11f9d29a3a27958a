#include "fracneum/mesh.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "fracneum/errors.hpp"

namespace fracneum {

namespace {

std::uint64_t next_mesh_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

// Breakpoints of [lo, hi] into widths proportional to `shape`; endpoints are exact.
std::vector<double> breakpoints(double lo, double hi, const std::vector<double>& shape) {
    double total = 0.0;
    for (double w : shape) total += w;
    std::vector<double> x(shape.size() + 1);
    x.front() = lo;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < shape.size(); ++i) {
        acc += shape[i];
        x[i + 1] = lo + (hi - lo) * (acc / total);
    }
    x.back() = hi;
    return x;
}

// Interior widths: symmetric about the center, shrinking by `ratio` per cell toward each end.
std::vector<double> interior_shape(std::size_t n, const Grading& grading) {
    std::vector<double> shape(n, 1.0);
    if (grading.kind == Grading::Kind::Uniform) return shape;
    for (std::size_t i = 0; i < n; ++i) {
        // distance (in cells) from the nearest end of Omega
        const std::size_t from_end = std::min(i, n - 1 - i);
        const std::size_t from_center = (n - 1) / 2 - from_end;
        shape[i] = std::pow(grading.ratio, static_cast<double>(from_center));
    }
    return shape;
}

// Collar widths listed from the boundary of Omega outward.
std::vector<double> collar_shape(std::size_t n, const Grading& grading) {
    std::vector<double> shape(n, 1.0);
    if (grading.kind == Grading::Kind::Uniform) return shape;
    for (std::size_t i = 0; i < n; ++i) shape[i] = std::pow(grading.ratio, -static_cast<double>(i));
    return shape;
}

}  // namespace

DomainMesh::DomainMesh(double omega_lo, double omega_hi, double collar_radius, std::vector<Interval> cells,
                       std::size_t n_exterior_left, std::size_t n_interior)
    : omega_lo_(omega_lo),
      omega_hi_(omega_hi),
      collar_radius_(collar_radius),
      cells_(std::move(cells)),
      n_left_(n_exterior_left),
      n_interior_(n_interior),
      id_(next_mesh_id()) {
    validate();
}

void DomainMesh::validate() const {
    if (!(omega_lo_ < omega_hi_)) throw DomainError("mesh: omega_lo must be < omega_hi");
    if (!(collar_radius_ > 0.0)) throw DomainError("mesh: collar radius must be > 0");
    if (n_interior_ == 0 || n_left_ == 0 || n_left_ + n_interior_ >= cells_.size())
        throw DomainError("mesh: need at least one interior cell and one collar cell per side");
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        if (!(cells_[k].length() > 0.0) || !std::isfinite(cells_[k].length()))
            throw DomainError("mesh: cell " + std::to_string(k) + " has non-positive measure");
        if (k > 0 && cells_[k].lo != cells_[k - 1].hi)
            throw DomainError("mesh: cells " + std::to_string(k - 1) + " and " + std::to_string(k) +
                              " leave a gap or overlap");
    }
    if (cells_.front().lo != omega_lo_ - collar_radius_ || cells_.back().hi != omega_hi_ + collar_radius_)
        throw DomainError("mesh: cells do not cover [omega_lo - R, omega_hi + R]");
    if (cells_[n_left_].lo != omega_lo_ || cells_[n_left_ + n_interior_ - 1].hi != omega_hi_)
        throw DomainError("mesh: interior cells do not tile Omega");
}

DomainMesh build_mesh(double omega_lo, double omega_hi, std::size_t n_interior, std::size_t n_exterior_per_side,
                      double collar_radius, Grading grading) {
    if (!std::isfinite(omega_lo) || !std::isfinite(omega_hi) || !(omega_lo < omega_hi))
        throw ParameterError("omega_lo/omega_hi", "need finite omega_lo < omega_hi");
    if (n_interior < 1) throw ParameterError("n_interior", "must be >= 1");
    if (n_exterior_per_side < 1) throw ParameterError("n_exterior_per_side", "must be >= 1");
    if (!(collar_radius > 0.0) || !std::isfinite(collar_radius))
        throw ParameterError("collar_radius", "must be finite and > 0");
    if (grading.kind == Grading::Kind::Geometric && !(grading.ratio > 0.0 && std::isfinite(grading.ratio)))
        throw ParameterError("ratio", "geometric grading ratio must be finite and > 0");

    const double left_end = omega_lo - collar_radius;
    const double right_end = omega_hi + collar_radius;

    std::vector<double> outward = collar_shape(n_exterior_per_side, grading);
    std::vector<double> left_shape(outward.rbegin(), outward.rend());
    const auto xl = breakpoints(left_end, omega_lo, left_shape);
    const auto xi = breakpoints(omega_lo, omega_hi, interior_shape(n_interior, grading));
    const auto xr = breakpoints(omega_hi, right_end, outward);

    std::vector<Interval> cells;
    cells.reserve(n_interior + 2 * n_exterior_per_side);
    for (const auto* x : {&xl, &xi, &xr})
        for (std::size_t i = 0; i + 1 < x->size(); ++i) cells.push_back({(*x)[i], (*x)[i + 1]});
    return DomainMesh(omega_lo, omega_hi, collar_radius, std::move(cells), n_exterior_per_side, n_interior);
}

DomainMesh bisect(const DomainMesh& mesh) {
    std::vector<Interval> cells;
    cells.reserve(2 * mesh.size());
    for (const auto& c : mesh.cells()) {
        const double mid = c.center();
        cells.push_back({c.lo, mid});
        cells.push_back({mid, c.hi});
    }
    return DomainMesh(mesh.omega_lo(), mesh.omega_hi(), mesh.collar_radius(), std::move(cells),
                      2 * mesh.n_exterior_left(), 2 * mesh.n_interior());
}

}  // namespace fracneum
