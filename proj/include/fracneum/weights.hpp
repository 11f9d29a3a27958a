#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fracneum/mesh.hpp"

namespace fracneum {

/// Pair weights of the singular kernel over the Q region for one mesh.
///
/// `pair(i, j)` is the exact cell-pair integral (zero for exterior-exterior
/// pairs and on the diagonal). Each interior cell also couples to the two
/// half-lines beyond the collar; that tail is frozen to the outermost collar
/// cell of its side, so `coupling(i, j)` = pair + folded tail is what every
/// energy and operator sees.
class KernelWeights {
public:
    KernelWeights(const DomainMesh& mesh, double alpha, std::vector<double> pair, std::vector<double> tail_left,
                  std::vector<double> tail_right);

    std::size_t n_cells() const noexcept { return n_; }
    double alpha() const noexcept { return alpha_; }
    std::uint64_t mesh_id() const noexcept { return mesh_id_; }

    double pair(std::size_t i, std::size_t j) const { return pair_[i * n_ + j]; }
    double coupling(std::size_t i, std::size_t j) const { return coupling_[i * n_ + j]; }
    /// Row-major n x n effective coupling matrix.
    std::span<const double> coupling_matrix() const noexcept { return coupling_; }
    std::span<const double> coupling_row(std::size_t i) const { return {coupling_.data() + i * n_, n_}; }

    double tail_left(std::size_t k) const { return tail_left_[k]; }
    double tail_right(std::size_t k) const { return tail_right_[k]; }

    /// Share of the total weight mass carried by the frozen tails.
    double tail_fraction() const;

private:
    std::size_t n_;
    double alpha_;
    std::uint64_t mesh_id_;
    std::vector<double> pair_;
    std::vector<double> tail_left_;
    std::vector<double> tail_right_;
    std::vector<double> coupling_;
};

/// alpha = 1 + p s. OpenMP-parallel over rows; every entry is computed
/// independently, so the result does not depend on the schedule.
KernelWeights assemble_weights(const DomainMesh& mesh, double p, double s);

namespace serial {
KernelWeights assemble_weights(const DomainMesh& mesh, double p, double s);
}

/// Header line, cell records, then pair records "i j w" (i < j) carrying the
/// effective coupling. See FORMATS.md.
void write_mesh(std::ostream& os, const DomainMesh& mesh, const KernelWeights& weights);

struct MeshFile {
    DomainMesh mesh;
    double alpha;
    /// Row-major n x n effective coupling read back from the pair records.
    std::vector<double> coupling;
};

MeshFile read_mesh(std::istream& is);

}  // namespace fracneum
