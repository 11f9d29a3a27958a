#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracneum/critical.hpp"
#include "fracneum/energy.hpp"
#include "fracneum/neumann.hpp"
#include "fracneum/nonlinearity.hpp"
#include "fracneum/propcheck.hpp"
#include "fracneum/quadrature.hpp"
#include "fracneum/spectrum.hpp"
#include "fracneum/weights.hpp"
#include "oracles.hpp"

using namespace fracneum;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string sci(double x, int digits = 3) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

Outcome first_eigenvalue() {
    double worst_lambda = 0.0, worst_variation = 0.0;
    for (std::size_t n : {25, 100, 400})
        for (double s : {0.25, 0.5, 0.75}) {
            const DomainMesh m = build_mesh(0.0, 1.0, n, n / 4, 1.0);
            const KernelWeights w = assemble_weights(m, 2.0, s);
            const auto pairs = eig_p2(m, w, 1);
            const auto& phi = pairs[0].phi;
            double lo = phi[0], hi = phi[0];
            for (std::size_t k = 0; k < m.size(); ++k) lo = std::min(lo, phi[k]), hi = std::max(hi, phi[k]);
            worst_lambda = std::max(worst_lambda, std::abs(pairs[0].lambda));
            worst_variation = std::max(worst_variation, (hi - lo) / std::max(std::abs(hi), std::abs(lo)));
        }
    return {worst_lambda <= 1e-9 && worst_variation <= 1e-8,
            "max |lambda_1| " + sci(worst_lambda) + ", max relative variation " + sci(worst_variation)};
}

Outcome quadrature_exactness() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> len(1e-3, 1.0), gap(1e-4, 3.0), pos(-5.0, 5.0), coin(0.0, 1.0);
    double worst_pair = 0.0, worst_tail = 0.0;
    for (double alpha : {1.3, 1.5, 2.0, 2.5}) {
        for (int i = 0; i < 100; ++i) {
            const double lo = pos(rng), la = len(rng), lb = len(rng);
            // touching pairs are integrable only below alpha = 2
            const double g = (alpha < 2.0 && coin(rng) < 0.25) ? 0.0 : gap(rng);
            const Interval a{lo, lo + la}, b{lo + la + g, lo + la + g + lb};
            const double want = oracle::pair_integral(a, b, alpha);
            worst_pair = std::max(worst_pair, std::abs(pair_weight(a, b, alpha) - want) / want);

            const double cut = pos(rng), lc = len(rng), gc = gap(rng);
            const bool right = coin(rng) < 0.5;
            const Interval c = right ? Interval{cut - gc - lc, cut - gc} : Interval{cut + gc, cut + gc + lc};
            const Side side = right ? Side::Right : Side::Left;
            const double tw = oracle::tail_integral(c, cut, side, alpha);
            worst_tail = std::max(worst_tail, std::abs(tail_weight(c, cut, side, alpha) - tw) / tw);
        }
    }
    return {worst_pair <= 1e-10 && worst_tail <= 1e-10,
            "worst relative error pair " + sci(worst_pair) + ", tail " + sci(worst_tail)};
}

Outcome inequality_sweep() {
    const InequalityReport r = check_pointwise_inequalities(100000, 1.01, 10.0, 42);
    std::ostringstream d;
    d << r.samples << " samples (" << r.adversarial << " adversarial), violations";
    for (std::size_t i = 0; i < 4; ++i) d << ' ' << InequalityReport::names[i] << '=' << r.violations[i];
    return {r.samples == 100000 && r.total_violations() == 0, d.str()};
}

Outcome gradient_consistency() {
    double worst = 0.0;
    std::ostringstream excluded;
    for (double p : {1.5, 2.0, 3.0}) {
        const auto cfg =
            make_problem(build_mesh(0.0, 1.0, 24, 6, 1.0), p, 0.4, 0.3, perturbed_power(p, 1.0, p + 2.0, 0.5, p + 1.0));
        std::mt19937_64 rng(static_cast<std::uint64_t>(p * 100));
        std::uniform_real_distribution<double> d(-1.5, 1.5);
        std::vector<double> v(cfg.grid().size());
        for (auto& x : v) x = d(rng);
        const GridFunction u(cfg.grid(), v);
        for (auto kind : {FunctionalKind::I, FunctionalKind::EPlus, FunctionalKind::EMinus}) {
            const GradientCheck gc = check_gradient_fd(kind, u, cfg, 1e-6);
            worst = std::max(worst, gc.max_rel_error);
            if (p < 2.0 && !gc.excluded.empty()) {
                excluded << ' ' << to_string(kind) << "@p=" << p << ":{";
                for (std::size_t i = 0; i < gc.excluded.size(); ++i) excluded << (i ? "," : "") << gc.excluded[i];
                excluded << '}';
            }
        }
    }
    const std::string ex = excluded.str();
    return {worst < 1e-6, "max relative error " + sci(worst) + "; excluded cells" + (ex.empty() ? " none" : ex)};
}

Outcome coercive_oracle() {
    const auto f0 = [](double x) { return 0.5 + std::cos(3.0 * x); };
    const auto cfg = make_problem(build_mesh(0.0, 1.0, 100, 25, 1.0), 2.0, 0.5, 0.0, affine_decay(2.0, 1.0, f0));
    const auto& mesh = cfg.grid();
    DescentOptions opts;
    opts.tol = 1e-11;
    const auto r = minimize(GridFunction::zeros(mesh), FunctionalKind::I, cfg, opts);
    const auto want = oracle::coercive_solution(mesh, cfg.kernel(), f0);
    double err = 0.0;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
        err += mesh.cell_measure(k) * std::pow(r.u[k] - want[k], 2);
    err = std::sqrt(err);

    // random ray, unit X-norm, oriented so the source term pulls it forward
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(mesh.size());
    for (auto& x : v) x = d(rng);
    GridFunction ray = exterior_extend(GridFunction(mesh, v), mesh, cfg.kernel(), 2.0);
    double pull = 0.0;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
        pull += mesh.cell_measure(k) * f0(mesh.cell_center(k)) * ray[k];
    const double scale = (pull < 0.0 ? -1.0 : 1.0) / norm_x(cfg.kernel(), ray, mesh, 2.0);
    for (auto& x : ray.values()) x *= scale;
    const std::vector<double> ts{8, 16, 32, 64, 128, 256, 512, 1024};
    const auto ratio = coercivity_probe(FunctionalKind::I, ray, cfg, ts);
    bool ray_ok = ratio[0] > 0.0;
    for (std::size_t i = 1; i < ratio.size(); ++i) ray_ok = ray_ok && ratio[i] > ratio[i - 1];
    return {r.converged && err <= 1e-8 && ray_ok, "weighted error " + sci(err) + " after " +
                                                      std::to_string(r.iterations) + " iterations; I(tu)/|tu|^2 " +
                                                      sci(ratio.front(), 8) + " -> " + sci(ratio.back(), 8) +
                                                      (ray_ok ? " increasing" : " NOT increasing")};
}

Outcome constant_sign_witness() {
    const double lambda = -0.25;
    const auto cfg = make_problem(build_mesh(0.0, 1.0, 100, 25, 1.0), 2.0, 0.4, lambda, pure_power(2.0, 1.0, 4.0));
    const auto& mesh = cfg.grid();
    const auto ev = eig_p2(mesh, cfg.kernel(), 2);
    const bool below = 2 * lambda + 1 < ev[1].lambda;

    GridFunction e = GridFunction::zeros(mesh);
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
        e[k] = 3.0 * (1.0 + 0.3 * std::cos(M_PI * mesh.cell_center(k)));
    e = exterior_extend(e, mesh, cfg.kernel(), 2.0);
    GridFunction neg = e;
    for (auto& x : neg.values()) x = -x;
    MountainPassOptions opts;
    opts.descent.tol = 1e-9;
    const auto plus = mountain_pass(e, FunctionalKind::EPlus, cfg, opts);
    const auto minus = mountain_pass(neg, FunctionalKind::EMinus, cfg, opts);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst_weak = 0.0;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> v(mesh.size());
        for (auto& x : v) x = d(rng);
        const GridFunction test(mesh, v);
        const double nv = norm_x(cfg.kernel(), test, mesh, 2.0);
        worst_weak = std::max({worst_weak, std::abs(weak_residual(plus.u, test, cfg)) / nv,
                               std::abs(weak_residual(minus.u, test, cfg)) / nv});
    }
    double mirror = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) mirror = std::max(mirror, std::abs(plus.u[k] + minus.u[k]));

    const bool ok = below && plus.converged && minus.converged && plus.grad_norm < 1e-6 && minus.grad_norm < 1e-6 &&
                    plus.energy > 0 && minus.energy > 0 && plus.sign_class == SignClass::Positive &&
                    minus.sign_class == SignClass::Negative && plus.neumann_residual < 1e-6 &&
                    minus.neumann_residual < 1e-6 && worst_weak <= 1e-5 && mirror <= 1e-6;
    std::ostringstream o;
    o << "2lambda+1=" << 2 * lambda + 1 << " < lambda_2=" << sci(ev[1].lambda) << "; E_PLUS "
      << to_string(plus.sign_class) << " E=" << sci(plus.energy) << " |g|=" << sci(plus.grad_norm) << "; E_MINUS "
      << to_string(minus.sign_class) << " E=" << sci(minus.energy) << " |g|=" << sci(minus.grad_norm)
      << "; neumann " << sci(std::max(plus.neumann_residual, minus.neumann_residual)) << ", weak/|v| "
      << sci(worst_weak) << ", |u+ + u-| " << sci(mirror);
    return {ok, o.str()};
}

Outcome neumann_extension() {
    const NeumannInvariantReport r = check_neumann_invariants(1000, 42);
    // independent pass over the p = 2 closed form
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::size_t> ni(4, 40), ne(1, 6);
    std::uniform_real_distribution<double> val(-5.0, 5.0), rad(0.1, 2.0), sd(0.1, 0.9);
    double worst = 0.0;
    for (int c = 0; c < 1000; ++c) {
        const DomainMesh m = build_mesh(0.0, 1.0, ni(rng), ne(rng), rad(rng));
        const KernelWeights w = assemble_weights(m, 2.0, sd(rng));
        std::vector<double> u(m.size(), 0.0);
        double lo = 1e300, hi = -1e300;
        for (std::size_t k = m.first_interior(); k < m.end_interior(); ++k) {
            u[k] = val(rng);
            lo = std::min(lo, u[k]), hi = std::max(hi, u[k]);
        }
        const GridFunction ext = exterior_extend(GridFunction(m, u), m, w, 2.0);
        for (std::size_t k = 0; k < m.size(); ++k)
            if (!m.is_interior(k))
                worst = std::max(worst, std::abs(ext[k] - oracle::weighted_mean(m, w, u, k)) / (1.0 + hi - lo));
    }
    std::ostringstream o;
    o << r.cases << " cases: mean/constant/comparison/equivariance failures " << r.weighted_mean_failures << '/'
      << r.constant_failures << '/' << r.comparison_failures << '/' << r.equivariance_failures
      << "; oracle weighted-mean error " << sci(worst) << " (relative to 1 + spread)";
    return {r.cases == 1000 && r.failures() == 0 && worst <= 1e-12, o.str()};
}

Outcome monotone_operator() {
    const DomainMesh m = build_mesh(0.0, 1.0, 24, 6, 1.0);
    std::ostringstream o;
    bool ok = true;
    for (double p : {1.5, 2.0, 3.0}) {
        const auto r = check_monotonicity(assemble_weights(m, p, 0.5), p, 10000, 42);
        ok = ok && r.pairs == 10000 && r.violations == 0;
        o << "p=" << p << " min " << sci(r.min_pairing) << " violations " << r.violations << "; ";
    }
    return {ok, o.str()};
}

Outcome self_convergence() {
    std::vector<double> l2;
    for (std::size_t n : {25, 50, 100, 200}) {
        const DomainMesh m = build_mesh(0.0, 1.0, n, n / 2, 1.0);
        l2.push_back(eig_p2(m, assemble_weights(m, 2.0, 0.5), 2)[1].lambda);
    }
    std::ostringstream o;
    o << "lambda_2 =";
    for (double v : l2) o << ' ' << sci(v);
    o << "; gaps";
    bool ok = true;
    for (std::size_t i = 1; i < l2.size(); ++i) {
        const double gap = std::abs(l2[i] - l2[i - 1]);
        o << ' ' << sci(gap);
        if (i > 1) ok = ok && gap < std::abs(l2[i - 1] - l2[i - 2]);
    }
    return {ok, o.str()};
}

}  // namespace

int main() {
    run(1, "first eigenvalue", first_eigenvalue);
    run(2, "quadrature exactness", quadrature_exactness);
    run(3, "inequality sweep", inequality_sweep);
    run(4, "gradient consistency", gradient_consistency);
    run(5, "coercive oracle", coercive_oracle);
    run(6, "constant-sign witness", constant_sign_witness);
    run(7, "Neumann extension", neumann_extension);
    run(8, "monotone operator", monotone_operator);
    run(9, "self-convergence", self_convergence);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
