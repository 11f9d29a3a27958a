#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracneum/critical.hpp"
#include "fracneum/errors.hpp"
#include "fracneum/neumann.hpp"
#include "fracneum/nonlinearity.hpp"
#include "oracles.hpp"

using namespace fracneum;

namespace {

double f0(double x) { return 0.5 + std::cos(3.0 * x); }

ProblemConfig witness(double lambda, std::size_t n) {
    return make_problem(build_mesh(0.0, 1.0, n, n / 4, 1.0), 2.0, 0.4, lambda, pure_power(2.0, 1.0, 4.0));
}

GridFunction endpoint(const ProblemConfig& cfg, double sign) {
    GridFunction e = GridFunction::zeros(cfg.grid());
    for (std::size_t k = cfg.grid().first_interior(); k < cfg.grid().end_interior(); ++k)
        e[k] = sign * 3.0 * (1.0 + 0.3 * std::cos(M_PI * cfg.grid().cell_center(k)));
    return exterior_extend(e, cfg.grid(), cfg.kernel(), 2.0);
}

}  // namespace

TEST(Critical, SignClasses) {
    const DomainMesh m = build_mesh(0, 1, 4, 2, 1.0);
    EXPECT_EQ(sign_class(GridFunction::constant(m, 0.3)), SignClass::Positive);
    EXPECT_EQ(sign_class(GridFunction::constant(m, -0.3)), SignClass::Negative);
    EXPECT_EQ(sign_class(GridFunction::zeros(m)), SignClass::Zero);
    GridFunction u = GridFunction::constant(m, 1.0);
    u[3] = 0.0;
    EXPECT_EQ(sign_class(u), SignClass::SignChanging);
    u[3] = -1.0;
    EXPECT_EQ(sign_class(u), SignClass::SignChanging);
    u[3] = 1e-11;
    EXPECT_EQ(sign_class(u), SignClass::SignChanging);
    EXPECT_STREQ(to_string(SignClass::Positive), "POSITIVE");
}

TEST(Critical, MinimizeMatchesLinearSolve) {
    const auto cfg = make_problem(build_mesh(0, 1, 30, 8, 1.0), 2.0, 0.5, 0.0, affine_decay(2.0, 1.0, f0));
    DescentOptions opts;
    opts.tol = 1e-11;
    const auto r = minimize(GridFunction::zeros(cfg.grid()), FunctionalKind::I, cfg, opts);
    ASSERT_TRUE(r.converged) << r.message;
    const auto want = oracle::coercive_solution(cfg.grid(), cfg.kernel(), f0);
    double err = 0.0;
    for (std::size_t k = cfg.grid().first_interior(); k < cfg.grid().end_interior(); ++k)
        err += cfg.grid().cell_measure(k) * std::pow(r.u[k] - want[k], 2);
    EXPECT_LT(std::sqrt(err), 1e-8);
    for (std::size_t k = 1; k < r.energy_history.size(); ++k) EXPECT_LE(r.energy_history[k], r.energy_history[k - 1]);
    EXPECT_LT(r.neumann_residual, 1e-10);
}

TEST(Critical, CoercivityAlongARay) {
    const auto cfg = make_problem(build_mesh(0, 1, 20, 5, 1.0), 2.0, 0.5, 0.0, affine_decay(2.0, 1.0, f0));
    GridFunction u = GridFunction::constant(cfg.grid(), 1.0);
    const auto ratios = coercivity_probe(FunctionalKind::I, u, cfg, {8, 16, 32, 64, 128});
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        EXPECT_GT(ratios[i], 0.0);
        if (i) EXPECT_GT(ratios[i], ratios[i - 1]);
    }
    EXPECT_THROW(coercivity_probe(FunctionalKind::I, GridFunction::zeros(cfg.grid()), cfg, {1}), DomainError);
}

TEST(Critical, MountainPassFindsConstantSignSolutions) {
    const auto cfg = witness(-0.25, 32);
    MountainPassOptions opts;
    opts.descent.tol = 1e-9;
    const auto plus = mountain_pass(endpoint(cfg, 1.0), FunctionalKind::EPlus, cfg, opts);
    const auto minus = mountain_pass(endpoint(cfg, -1.0), FunctionalKind::EMinus, cfg, opts);
    ASSERT_TRUE(plus.converged) << plus.message;
    ASSERT_TRUE(minus.converged) << minus.message;
    EXPECT_EQ(plus.sign_class, SignClass::Positive);
    EXPECT_EQ(minus.sign_class, SignClass::Negative);
    // with lambda = -1/4 and g = t^3 the constant 1/2 solves the problem
    EXPECT_NEAR(plus.energy, 1.0 / 64, 1e-10);
    EXPECT_NEAR(minus.energy, 1.0 / 64, 1e-10);
    for (std::size_t k = 0; k < plus.u.size(); ++k) EXPECT_NEAR(plus.u[k], -minus.u[k], 1e-6);
    EXPECT_GT(plus.precheck_ring_min, 0.0);
    for (std::size_t k = 1; k < plus.path_max_history.size(); ++k)
        EXPECT_LE(plus.path_max_history[k], plus.path_max_history[k - 1]);
}

TEST(Critical, MountainPassGeometryFailsForNonnegativeLambda) {
    const auto cfg = witness(0.5, 16);
    try {
        mountain_pass(endpoint(cfg, 1.0), FunctionalKind::EPlus, cfg);
        FAIL() << "expected GeometryError";
    } catch (const GeometryError& e) {
        EXPECT_FALSE(e.radii().empty());
        EXPECT_EQ(e.radii().size(), e.ring_minima().size());
        for (double v : e.ring_minima()) EXPECT_LE(v, 0.0);
    }
}

TEST(Critical, MountainPassRejectsBadInput) {
    const auto cfg = witness(-0.25, 16);
    EXPECT_THROW(mountain_pass(endpoint(cfg, 1.0), FunctionalKind::I, cfg), ParameterError);
    // E+ needs an endpoint with a positive part
    EXPECT_THROW(mountain_pass(endpoint(cfg, -1.0), FunctionalKind::EPlus, cfg), GeometryError);
}

TEST(Critical, UnboundedDescentReportsDivergenceOrNonConvergence) {
    const auto cfg = witness(0.0, 16);
    DescentOptions opts;
    opts.max_iter = 200;
    try {
        const auto r = minimize(GridFunction::constant(cfg.grid(), 2.0), FunctionalKind::I, cfg, opts);
        EXPECT_FALSE(r.converged);
    } catch (const DivergenceError& e) {
        EXPECT_EQ(e.last_iterate().size(), cfg.grid().size());
    }
}

TEST(Critical, ClassifyReportsConeBracket) {
    const auto cfg = witness(-0.25, 16);
    const auto r = classify(GridFunction::constant(cfg.grid(), 0.5), FunctionalKind::EPlus, cfg);
    EXPECT_LT(r.grad_norm, 1e-12);
    EXPECT_EQ(r.sign_class, SignClass::Positive);
    ASSERT_TRUE(r.cone_bracket.has_value());
    EXPECT_EQ(*r.cone_bracket, 1u);  // 2 lambda + 1 = 1/2 lies in [lambda_1, lambda_2)
}
