#include <gtest/gtest.h>

#include <sstream>

#include "fracneum/errors.hpp"
#include "fracneum/parallel.hpp"
#include "fracneum/quadrature.hpp"
#include "fracneum/weights.hpp"
#include "oracles.hpp"

using namespace fracneum;

TEST(Weights, StructureOfTheQRegion) {
    const DomainMesh m = build_mesh(0.0, 1.0, 8, 3, 0.5);
    const KernelWeights w = assemble_weights(m, 2.0, 0.4);
    EXPECT_DOUBLE_EQ(w.alpha(), 1.8);
    EXPECT_EQ(w.mesh_id(), m.id());
    for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_EQ(w.pair(i, i), 0.0);
        for (std::size_t j = 0; j < m.size(); ++j) {
            EXPECT_EQ(w.pair(i, j), w.pair(j, i));
            EXPECT_EQ(w.coupling(i, j), w.coupling(j, i));
            if (!m.is_interior(i) && !m.is_interior(j)) EXPECT_EQ(w.coupling(i, j), 0.0);
            if (i != j && (m.is_interior(i) || m.is_interior(j))) EXPECT_GT(w.pair(i, j), 0.0);
        }
    }
}

TEST(Weights, PairEntriesAreCellIntegrals) {
    const DomainMesh m = build_mesh(0.0, 1.0, 6, 2, 1.0);
    const KernelWeights w = assemble_weights(m, 1.5, 0.5);
    for (std::size_t i = m.first_interior(); i < m.end_interior(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i == j) continue;
            const double want = oracle::pair_integral(m.cell(i), m.cell(j), w.alpha());
            EXPECT_NEAR(w.pair(i, j), want, 1e-10 * want);
        }
}

TEST(Weights, TailsFoldIntoOutermostCollarCells) {
    const DomainMesh m = build_mesh(0.0, 1.0, 6, 2, 0.5);
    const KernelWeights w = assemble_weights(m, 2.0, 0.5);
    const std::size_t last = m.size() - 1;
    for (std::size_t k = m.first_interior(); k < m.end_interior(); ++k) {
        const double tl = oracle::tail_integral(m.cell(k), -0.5, Side::Left, 2.0);
        const double tr = oracle::tail_integral(m.cell(k), 1.5, Side::Right, 2.0);
        EXPECT_NEAR(w.tail_left(k), tl, 1e-10 * tl);
        EXPECT_NEAR(w.tail_right(k), tr, 1e-10 * tr);
        EXPECT_NEAR(w.coupling(k, 0), w.pair(k, 0) + w.tail_left(k), 1e-15 * w.coupling(k, 0));
        EXPECT_NEAR(w.coupling(k, last), w.pair(k, last) + w.tail_right(k), 1e-15 * w.coupling(k, last));
        EXPECT_EQ(w.coupling(k, 1), w.pair(k, 1));
    }
    EXPECT_GT(w.tail_fraction(), 0.0);
    EXPECT_LT(w.tail_fraction(), 1.0);
}

TEST(Weights, TailFractionShrinksWithCollarRadius) {
    const double near = assemble_weights(build_mesh(0, 1, 20, 5, 0.25), 2.0, 0.5).tail_fraction();
    const double far = assemble_weights(build_mesh(0, 1, 20, 5, 2.0), 2.0, 0.5).tail_fraction();
    EXPECT_LT(far, near);
}

TEST(Weights, SerialAndParallelAssemblyAgreeBitForBit) {
    const DomainMesh m = build_mesh(0.0, 1.0, 40, 8, 1.0, Grading::geometric(0.9));
    const KernelWeights ref = serial::assemble_weights(m, 2.0, 0.75);
    for (int threads : {1, 2, 4}) {
        configure_threads(threads);
        const KernelWeights par = assemble_weights(m, 2.0, 0.75);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) ASSERT_EQ(par.coupling(i, j), ref.coupling(i, j));
    }
}

TEST(Weights, MeshFileRoundTrip) {
    const DomainMesh m = build_mesh(-0.5, 0.5, 5, 2, 0.3, Grading::geometric(0.7));
    const KernelWeights w = assemble_weights(m, 3.0, 0.3);
    std::stringstream ss;
    write_mesh(ss, m, w);
    const MeshFile back = read_mesh(ss);
    EXPECT_EQ(back.alpha, w.alpha());
    ASSERT_EQ(back.mesh.size(), m.size());
    EXPECT_EQ(back.mesh.n_interior(), m.n_interior());
    for (std::size_t k = 0; k < m.size(); ++k) {
        EXPECT_EQ(back.mesh.cell(k).lo, m.cell(k).lo);
        EXPECT_EQ(back.mesh.cell(k).hi, m.cell(k).hi);
    }
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(back.coupling[i * m.size() + j], w.coupling(i, j));
}

TEST(Weights, MalformedMeshFileIsRejected) {
    std::istringstream bad("not a mesh\n");
    EXPECT_THROW(read_mesh(bad), Error);
}
