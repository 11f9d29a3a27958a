#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fracneum/errors.hpp"
#include "fracneum/neumann.hpp"
#include "fracneum/propcheck.hpp"
#include "oracles.hpp"

using namespace fracneum;

namespace {

GridFunction random_interior(const DomainMesh& mesh, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    GridFunction u = GridFunction::zeros(mesh);
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) u[k] = d(rng);
    return u;
}

}  // namespace

TEST(Neumann, WeightedMeanAtPEqualsTwo) {
    const DomainMesh m = build_mesh(0.0, 1.0, 12, 5, 0.7, Grading::geometric(0.85));
    const KernelWeights w = assemble_weights(m, 2.0, 0.3);
    const GridFunction u = random_interior(m, 1);
    const GridFunction e = exterior_extend(u, m, w, 2.0);
    const std::vector<double> raw(u.values().begin(), u.values().end());
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m.is_interior(k)) {
            EXPECT_EQ(e[k], u[k]);
        } else {
            EXPECT_NEAR(e[k], oracle::weighted_mean(m, w, raw, k), 6e-12);
        }
    }
    EXPECT_LT(neumann_residual(e, m, w, 2.0), 1e-12);
}

TEST(Neumann, ExtensionSolvesTheConditionForGeneralP) {
    const DomainMesh m = build_mesh(-1.0, 1.0, 10, 4, 1.0);
    for (double p : {1.3, 1.5, 3.0, 5.0}) {
        const KernelWeights w = assemble_weights(m, p, 0.5);
        const GridFunction e = exterior_extend(random_interior(m, 2), m, w, p);
        EXPECT_LT(neumann_residual(e, m, w, p), 1e-11) << p;
        double lo = 1e300, hi = -1e300;
        for (std::size_t k = m.first_interior(); k < m.end_interior(); ++k) lo = std::min(lo, e[k]), hi = std::max(hi, e[k]);
        for (std::size_t k = 0; k < m.size(); ++k)
            if (!m.is_interior(k)) EXPECT_TRUE(e[k] >= lo && e[k] <= hi);
    }
}

TEST(Neumann, ExteriorInputIsIgnored) {
    const DomainMesh m = build_mesh(0.0, 1.0, 6, 2, 1.0);
    const KernelWeights w = assemble_weights(m, 2.5, 0.5);
    GridFunction u = random_interior(m, 3);
    const GridFunction a = exterior_extend(u, m, w, 2.5);
    u[0] = 99.0;
    const GridFunction b = exterior_extend(u, m, w, 2.5);
    for (std::size_t k = 0; k < m.size(); ++k) EXPECT_EQ(a[k], b[k]);
}

TEST(Neumann, RandomInvariants) {
    const NeumannInvariantReport r = check_neumann_invariants(200, 9);
    EXPECT_EQ(r.cases, 200u);
    EXPECT_EQ(r.failures(), 0u);
    EXPECT_LT(r.worst_weighted_mean_error, 1e-12);
}

TEST(Neumann, BindingAndFiniteness) {
    const DomainMesh m = build_mesh(0.0, 1.0, 6, 2, 1.0);
    const DomainMesh other = build_mesh(0.0, 1.0, 6, 2, 1.0);
    const KernelWeights w = assemble_weights(other, 2.0, 0.5);
    EXPECT_THROW(exterior_extend(GridFunction::zeros(m), m, w, 2.0), BindingError);
}
