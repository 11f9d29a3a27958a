#include <gtest/gtest.h>

#include <cmath>

#include "fracneum/errors.hpp"
#include "fracneum/nonlinearity.hpp"
#include "fracneum/propcheck.hpp"
#include "fracneum/weights.hpp"

using namespace fracneum;

TEST(Propcheck, InequalitiesHoldOnRandomAndAdversarialSamples) {
    const InequalityReport r = check_pointwise_inequalities(20000, 1.01, 10.0, 3);
    EXPECT_EQ(r.samples, 20000u);
    EXPECT_GT(r.adversarial, 0u);
    EXPECT_EQ(r.total_violations(), 0u);
    EXPECT_TRUE(r.first_violations.empty());
}

TEST(Propcheck, InequalitiesAreSeedDeterministic) {
    const auto a = check_pointwise_inequalities(1000, 1.5, 3.0, 5);
    const auto b = check_pointwise_inequalities(1000, 1.5, 3.0, 5);
    EXPECT_EQ(a.worst_slack, b.worst_slack);
}

TEST(Propcheck, CriticalExponent) {
    EXPECT_DOUBLE_EQ(critical_exponent(2.0, 0.25), 4.0);
    EXPECT_TRUE(std::isinf(critical_exponent(2.0, 0.5)));
    EXPECT_TRUE(std::isinf(critical_exponent(3.0, 0.5)));
}

TEST(Propcheck, BuiltInsSatisfyTheirDeclaredHypotheses) {
    const auto grid = log_t_grid();
    const std::vector<double> xs{0.0, 0.25, 0.5, 1.0};
    for (double p : {1.5, 2.0, 3.0}) {
        const auto pp = pure_power(p, 1.0, p + 2.0);
        EXPECT_FALSE(check_growth(pp, HypothesisSet::G, grid, xs, 0.7).failed()) << p;
        EXPECT_FALSE(check_growth(pp, HypothesisSet::F, grid, xs, 0.7).failed()) << p;
        const auto pert = perturbed_power(p, 1.0, p + 2.0, 0.5, p + 1.0);
        EXPECT_FALSE(check_growth(pert, HypothesisSet::G, grid, xs).failed()) << p;
        EXPECT_FALSE(check_growth(pert, HypothesisSet::F, grid, xs).failed()) << p;
        const auto lin = affine_decay(p, 1.0, [](double x) { return 1.0 + x; });
        EXPECT_FALSE(check_growth(lin, HypothesisSet::Linear, grid, xs).failed()) << p;
    }
}

TEST(Propcheck, WrongConstantsFail) {
    auto nl = pure_power(2.0, 1.0, 4.0);
    nl.superlinear->a2 = 0.5;  // |g| = |t|^3 exceeds 0.5 |t|^3
    const auto r = check_growth(nl, HypothesisSet::G, log_t_grid(), {0.0, 1.0});
    EXPECT_TRUE(r.failed());
}

TEST(Propcheck, SupercriticalExponentIsFlagged) {
    // p = 2, s = 0.4: p*_s = 10 < 12
    const auto nl = pure_power(2.0, 1.0, 12.0);
    EXPECT_TRUE(check_growth(nl, HypothesisSet::G, log_t_grid(), {0.0}, 0.4).failed());
    EXPECT_FALSE(check_growth(nl, HypothesisSet::G, log_t_grid(), {0.0}, 0.45).failed());  // p*_s = 20
}

TEST(Propcheck, MissingMetadataThrows) {
    const auto lin = affine_decay(2.0, 1.0, [](double) { return 0.0; });
    EXPECT_THROW(check_growth(lin, HypothesisSet::G, log_t_grid(), {0.0}), ConfigError);
    EXPECT_THROW(check_growth(pure_power(2.0, 1.0, 3.0), HypothesisSet::Linear, log_t_grid(), {0.0}), ConfigError);
}

TEST(Propcheck, MonotoneOperator) {
    const DomainMesh m = build_mesh(0.0, 1.0, 12, 3, 1.0);
    for (double p : {1.5, 2.0, 3.0}) {
        const auto r = check_monotonicity(assemble_weights(m, p, 0.5), p, 2000, 4);
        EXPECT_EQ(r.pairs, 2000u);
        EXPECT_EQ(r.violations, 0u);
        EXPECT_GE(r.min_pairing, -1e-12);
    }
}

TEST(Propcheck, VerifySuiteSmall) {
    VerifyOptions o;
    o.inequality_samples = 2000;
    o.monotone_pairs = 200;
    o.neumann_cases = 50;
    o.n_interior = 8;
    const auto j = run_verify_suite(o);
    EXPECT_TRUE(j.at("passed").get<bool>()) << j.dump(2);
    for (const char* name : {"inequalities", "growth", "gradient", "monotone_operator", "neumann"})
        EXPECT_TRUE(j.at("suites").contains(name)) << name;
}
