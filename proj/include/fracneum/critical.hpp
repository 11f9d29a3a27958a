#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracneum/energy.hpp"
#include "fracneum/grid_function.hpp"

namespace fracneum {

enum class SignClass { Positive, Negative, SignChanging, Zero };

const char* to_string(SignClass c);

struct CriticalPointReport {
    explicit CriticalPointReport(GridFunction v) : u(std::move(v)) {}

    GridFunction u;
    FunctionalKind kind = FunctionalKind::I;
    double energy = 0.0;
    /// sqrt(sum over interior k of g_k^2 / m_k): the L2 size of the pointwise residual.
    double grad_norm = 0.0;
    double cerami_measure = 0.0;
    double neumann_residual = 0.0;
    SignClass sign_class = SignClass::Zero;
    double min_value = 0.0;  // over all cells
    double max_value = 0.0;
    std::optional<std::size_t> cone_bracket;  // p = 2 only
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> energy_history;    // minimize: start energy plus the accepted increments
    std::vector<double> path_max_history;  // mountain_pass: max over nodes after every sweep
    double precheck_radius = 0.0;          // mountain_pass: inner sphere radius
    double precheck_ring_min = 0.0;
    std::string message;
};

struct DescentOptions {
    double tol = 1e-8;
    std::size_t max_iter = 20000;
    double armijo = 1e-4;
    double shrink = 0.5;
    double initial_step = 1.0;
    std::size_t max_backtracks = 80;
};

struct MountainPassOptions {
    DescentOptions descent{};
    std::size_t nodes = 21;
    std::size_t max_sweeps = 4000;
    /// Sweeps between attempts to polish the highest node by Newton's method.
    std::size_t sweeps_per_round = 50;
    std::size_t newton_iters = 60;
    std::size_t precheck_levels = 40;
    std::size_t precheck_directions = 24;
    std::uint64_t seed = 42;
};

/// Sign class from min/max over all cells, tolerance 1e-10. A function that is
/// >= 0 but touches zero somewhere is SIGN_CHANGING.
SignClass sign_class(const GridFunction& u);

/// Fills a report for `u` as a candidate critical point of `kind` (u unchanged).
CriticalPointReport classify(const GridFunction& u, FunctionalKind kind, const ProblemConfig& cfg);
inline CriticalPointReport classify(const GridFunction& u, const ProblemConfig& cfg) {
    return classify(u, FunctionalKind::I, cfg);
}

/// Preconditioned nonlinear conjugate gradients (Polak-Ribiere+, mass-matrix
/// preconditioner) with Armijo backtracking on the interior values; exterior
/// values always follow by exterior_extend. Every accepted step strictly lowers
/// the energy. Throws DivergenceError on a non-finite energy.
CriticalPointReport minimize(const GridFunction& u0, FunctionalKind kind, const ProblemConfig& cfg,
                             const DescentOptions& opts = {});

/// Mountain-pass search between 0 and `e` on E_PLUS or E_MINUS.
///
/// A precheck samples spheres of radius |e| 2^-j (constants, e, seeded random
/// directions) and needs one whose sampled minimum is positive; otherwise it
/// throws GeometryError. The string 0 -> e of `nodes` points is relaxed by one
/// Armijo descent step per inner node per sweep and redistributed by arclength
/// whenever that does not raise the path maximum. Every `sweeps_per_round`
/// sweeps the highest node is handed to a damped Newton iteration on the
/// gradient; the search ends when that reaches grad_norm <= tol.
CriticalPointReport mountain_pass(const GridFunction& e, FunctionalKind kind, const ProblemConfig& cfg,
                                  const MountainPassOptions& opts = {});

/// I(t u) / norm_X(t u)^p for each t.
std::vector<double> coercivity_probe(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg,
                                     const std::vector<double>& ts);

}  // namespace fracneum
