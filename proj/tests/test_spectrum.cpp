#include <gtest/gtest.h>

#include <cmath>

#include "fracneum/energy.hpp"
#include "fracneum/errors.hpp"
#include "fracneum/spectrum.hpp"
#include "oracles.hpp"

using namespace fracneum;

TEST(Spectrum, FirstEigenpairIsZeroAndConstant) {
    for (double s : {0.25, 0.5, 0.75}) {
        const DomainMesh m = build_mesh(0.0, 1.0, 40, 10, 1.0);
        const KernelWeights w = assemble_weights(m, 2.0, s);
        const auto pairs = eig_p2(m, w, 3);
        ASSERT_EQ(pairs.size(), 3u);
        EXPECT_LE(std::abs(pairs[0].lambda), 1e-9);
        const auto& phi = pairs[0].phi;
        double lo = 1e300, hi = -1e300;
        for (std::size_t k = 0; k < m.size(); ++k) lo = std::min(lo, phi[k]), hi = std::max(hi, phi[k]);
        EXPECT_LE((hi - lo) / std::abs(hi), 1e-8);
        EXPECT_GT(lo, 0.0);
        EXPECT_GT(pairs[1].lambda, 0.0);
        EXPECT_LE(pairs[1].lambda, pairs[2].lambda);
    }
}

TEST(Spectrum, EigenpairsSatisfyTheFullSystem) {
    // [u]^2 = u^T (2L) u, so interior rows read 2 (L phi)_k = lambda m_k phi_k
    // and collar rows (L phi)_k = 0
    const DomainMesh m = build_mesh(0.0, 1.0, 24, 6, 0.5, Grading::geometric(0.9));
    const KernelWeights w = assemble_weights(m, 2.0, 0.4);
    const Eigen::MatrixXd l = oracle::laplacian(w);
    const auto pairs = eig_p2(m, w, 6);
    for (const auto& pr : pairs) {
        Eigen::VectorXd phi(m.size());
        for (std::size_t k = 0; k < m.size(); ++k) phi(k) = pr.phi[k];
        const Eigen::VectorXd lphi = 2.0 * (l * phi);
        double mass = 0.0;
        for (std::size_t k = 0; k < m.size(); ++k) {
            const double want = m.is_interior(k) ? pr.lambda * m.cell_measure(k) * phi(k) : 0.0;
            EXPECT_NEAR(lphi(k), want, 1e-9 * (1 + pr.lambda));
            if (m.is_interior(k)) mass += m.cell_measure(k) * phi(k) * phi(k);
        }
        EXPECT_NEAR(mass, 1.0, 1e-12);
        EXPECT_NEAR(rayleigh(pr.phi, w, m, 2.0), pr.lambda, 1e-10 * (1 + pr.lambda));
    }
    // eigenfunctions are M-orthogonal on the interior
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            double dot = 0.0;
            for (std::size_t k = m.first_interior(); k < m.end_interior(); ++k)
                dot += m.cell_measure(k) * pairs[a].phi[k] * pairs[b].phi[k];
            EXPECT_NEAR(dot, 0.0, 1e-9);
        }
}

TEST(Spectrum, AllEigenvaluesMatchPairs) {
    const DomainMesh m = build_mesh(0.0, 1.0, 20, 5, 1.0);
    const KernelWeights w = assemble_weights(m, 2.0, 0.5);
    const auto all = eigenvalues_p2(m, w);
    const auto pairs = eig_p2(m, w, 5);
    ASSERT_EQ(all.size(), 20u);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(all[i], pairs[i].lambda, 1e-9 * (1 + all[i]));
}

TEST(Spectrum, CondensedFormIsTheSchurComplement) {
    const DomainMesh m = build_mesh(0.0, 1.0, 10, 3, 1.0);
    const KernelWeights w = assemble_weights(m, 2.0, 0.5);
    const CondensedForm c = condense_p2(m, w);
    ASSERT_EQ(c.matrix.rows(), 10);
    EXPECT_LT((c.matrix - c.matrix.transpose()).norm(), 1e-12 * c.matrix.norm());
    // a constant lies in the kernel and prolongs to a constant
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(10);
    EXPECT_LT((c.matrix * one).norm(), 1e-10 * c.matrix.norm());
    EXPECT_LT((c.prolong * one - Eigen::VectorXd::Ones(c.prolong.rows())).norm(), 1e-12);
}

TEST(Spectrum, RayleighAndCones) {
    const DomainMesh m = build_mesh(0.0, 1.0, 20, 5, 1.0);
    const KernelWeights w = assemble_weights(m, 2.0, 0.5);
    const auto pairs = eig_p2(m, w, 3);
    EXPECT_THROW(rayleigh(GridFunction::zeros(m), w, m, 2.0), DomainError);
    EXPECT_EQ(cone_test(GridFunction::zeros(m), 1.0, 2.0, w, m, 2.0), ConeMembership::BothZero);
    const auto& phi2 = pairs[1].phi;
    EXPECT_EQ(cone_test(phi2, pairs[1].lambda * 1.01, pairs[2].lambda, w, m, 2.0), ConeMembership::InCMinus);
    EXPECT_EQ(cone_test(phi2, 0.0, pairs[1].lambda * 0.99, w, m, 2.0), ConeMembership::InCPlus);
    EXPECT_EQ(cone_test(pairs[2].phi, pairs[1].lambda, pairs[2].lambda * 1.5, w, m, 2.0), ConeMembership::Neither);
    EXPECT_THROW(cone_test(phi2, 2.0, 1.0, w, m, 2.0), ParameterError);
    EXPECT_STREQ(to_string(ConeMembership::InCPlus), "IN_C_PLUS");
}

TEST(Spectrum, ConeBracket) {
    const std::vector<double> ev{0.0, 3.0, 7.0, 12.0};
    EXPECT_EQ(cone_bracket(ev, 0.0), 1u);   // 1 in [0, 3)
    EXPECT_EQ(cone_bracket(ev, 1.0), 2u);   // 3 in [3, 7)
    EXPECT_EQ(cone_bracket(ev, 4.0), 3u);   // 9
    EXPECT_FALSE(cone_bracket(ev, 10.0));   // 21 beyond the list
    EXPECT_FALSE(cone_bracket(ev, -1.0));   // -1 below lambda_1
}

TEST(Spectrum, EigenpairCountValidated) {
    const DomainMesh m = build_mesh(0.0, 1.0, 5, 2, 1.0);
    const KernelWeights w = assemble_weights(m, 2.0, 0.5);
    EXPECT_THROW(eig_p2(m, w, 0), ParameterError);
    EXPECT_THROW(eig_p2(m, w, 6), ParameterError);
}
