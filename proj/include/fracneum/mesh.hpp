#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fracneum {

/// Closed interval [lo, hi] on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const noexcept { return hi - lo; }
    double center() const noexcept { return 0.5 * (lo + hi); }
};

enum class CellTag : std::uint8_t { Interior, Exterior };

struct Grading {
    enum class Kind { Uniform, Geometric };
    Kind kind = Kind::Uniform;
    double ratio = 1.0;

    static Grading uniform() { return {}; }
    static Grading geometric(double r) { return {Kind::Geometric, r}; }
};

/// Partition of [omega_lo - R, omega_hi + R] into cells ordered left to right:
/// left collar cells, the interior cells tiling Omega, then right collar cells.
/// Cell 0 and cell size()-1 are the outermost collar cells, which carry the
/// frozen tail beyond the collar.
class DomainMesh {
public:
    DomainMesh(double omega_lo, double omega_hi, double collar_radius, std::vector<Interval> cells,
               std::size_t n_exterior_left, std::size_t n_interior);

    double omega_lo() const noexcept { return omega_lo_; }
    double omega_hi() const noexcept { return omega_hi_; }
    double collar_radius() const noexcept { return collar_radius_; }
    std::uint64_t id() const noexcept { return id_; }

    std::size_t size() const noexcept { return cells_.size(); }
    std::size_t n_interior() const noexcept { return n_interior_; }
    std::size_t n_exterior() const noexcept { return cells_.size() - n_interior_; }
    std::size_t first_interior() const noexcept { return n_left_; }
    std::size_t end_interior() const noexcept { return n_left_ + n_interior_; }
    std::size_t n_exterior_left() const noexcept { return n_left_; }
    std::size_t n_exterior_right() const noexcept { return cells_.size() - n_left_ - n_interior_; }

    std::span<const Interval> cells() const noexcept { return cells_; }
    const Interval& cell(std::size_t k) const { return cells_[k]; }
    double cell_measure(std::size_t k) const { return cells_[k].length(); }
    double cell_center(std::size_t k) const { return cells_[k].center(); }
    CellTag tag(std::size_t k) const noexcept {
        return (k >= n_left_ && k < n_left_ + n_interior_) ? CellTag::Interior : CellTag::Exterior;
    }
    bool is_interior(std::size_t k) const noexcept { return tag(k) == CellTag::Interior; }

    /// |Omega|
    double interior_measure() const noexcept { return omega_hi_ - omega_lo_; }

    /// Throws DomainError if any of the partition invariants fails.
    void validate() const;

private:
    double omega_lo_;
    double omega_hi_;
    double collar_radius_;
    std::vector<Interval> cells_;
    std::size_t n_left_;
    std::size_t n_interior_;
    std::uint64_t id_;
};

/// Interior cells tile (omega_lo, omega_hi); n_exterior_per_side cells tile each
/// collar of width collar_radius. With Geometric(r), widths are multiplied by r
/// at every step toward the boundary of Omega from either side.
DomainMesh build_mesh(double omega_lo, double omega_hi, std::size_t n_interior,
                      std::size_t n_exterior_per_side, double collar_radius,
                      Grading grading = Grading::uniform());

/// Bisects every cell; keeps the collar and tags.
DomainMesh bisect(const DomainMesh& mesh);

}  // namespace fracneum
