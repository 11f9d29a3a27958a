#include "fracneum/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "fracneum/errors.hpp"
#include "fracneum/neumann.hpp"
#include "fracneum/spectrum.hpp"

namespace fracneum {

const char* to_string(SignClass c) {
    switch (c) {
        case SignClass::Positive: return "POSITIVE";
        case SignClass::Negative: return "NEGATIVE";
        case SignClass::SignChanging: return "SIGN_CHANGING";
        case SignClass::Zero: return "ZERO";
    }
    return "?";
}

SignClass sign_class(const GridFunction& u) {
    constexpr double tol = 1e-10;
    const auto v = u.values();
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (std::abs(*lo) <= tol && std::abs(*hi) <= tol) return SignClass::Zero;
    if (*lo > tol) return SignClass::Positive;
    if (*hi < -tol) return SignClass::Negative;
    return SignClass::SignChanging;
}

namespace {

using Vec = Eigen::VectorXd;

// The functional restricted to interior values, exterior values slaved to them
// through exterior_extend. At an extended state the exterior gradient is zero,
// so the interior gradient is the gradient of the restricted functional.
class Reduced {
public:
    Reduced(FunctionalKind kind, const ProblemConfig& cfg)
        : kind_(kind), cfg_(cfg), first_(cfg.grid().first_interior()), ni_(cfg.grid().n_interior()), mass_(ni_) {
        for (std::size_t i = 0; i < ni_; ++i) mass_(idx(i)) = cfg.grid().cell_measure(first_ + i);
    }

    GridFunction full(const Vec& x) const {
        GridFunction u = GridFunction::zeros(cfg_.grid());
        for (std::size_t i = 0; i < ni_; ++i) u[first_ + i] = x(idx(i));
        return exterior_extend(u, cfg_.grid(), cfg_.kernel(), cfg_.p);
    }
    Vec interior(const GridFunction& u) const {
        Vec x(ni_);
        for (std::size_t i = 0; i < ni_; ++i) x(idx(i)) = u[first_ + i];
        return x;
    }
    Vec gradient(const Evaluation& ev) const { return interior(ev.gradient); }
    double grad_norm(const Vec& g) const { return std::sqrt(g.cwiseAbs2().cwiseQuotient(mass_).sum()); }
    Vec precondition(const Vec& g) const { return g.cwiseQuotient(mass_); }
    Evaluation evaluate(const GridFunction& u) const { return fracneum::evaluate(kind_, u, cfg_); }
    double increment(const GridFunction& a, const GridFunction& b) const {
        return energy_increment(kind_, a, b, cfg_);
    }
    FunctionalKind kind() const { return kind_; }
    const ProblemConfig& cfg() const { return cfg_; }
    std::size_t first() const { return first_; }
    std::size_t size() const { return ni_; }

    static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

private:
    FunctionalKind kind_;
    const ProblemConfig& cfg_;
    std::size_t first_;
    std::size_t ni_;
    Vec mass_;
};

struct State {
    Vec x;
    GridFunction u;
    Evaluation ev;
    Vec g;
};

State make_state(const Reduced& r, Vec x) {
    GridFunction u = r.full(x);
    Evaluation ev = r.evaluate(u);
    Vec g = r.gradient(ev);
    return {std::move(x), std::move(u), std::move(ev), std::move(g)};
}

struct LineSearch {
    bool accepted = false;
    double step = 0.0;
    double increment = 0.0;
};

// Armijo backtracking along d from s. On success s is replaced by the new state.
LineSearch armijo(const Reduced& r, State& s, const Vec& d, double step0, const DescentOptions& o) {
    const double slope = s.g.dot(d);
    LineSearch ls;
    if (!(slope < 0.0)) return ls;
    double t = step0;
    for (std::size_t k = 0; k < o.max_backtracks; ++k, t *= o.shrink) {
        Vec x = s.x + t * d;
        if (!x.allFinite()) continue;
        GridFunction u = r.full(x);
        const double inc = r.increment(s.u, u);
        if (!std::isfinite(inc)) continue;
        if (inc < 0.0 && inc <= o.armijo * t * slope) {
            Evaluation ev = r.evaluate(u);
            if (!std::isfinite(ev.value)) {
                const auto v = s.u.values();
                throw DivergenceError("descent: non-finite energy", {v.begin(), v.end()});
            }
            s.g = r.gradient(ev);
            s.x = std::move(x);
            s.u = std::move(u);
            s.ev = std::move(ev);
            return {true, t, inc};
        }
    }
    return ls;
}

void require_options(const DescentOptions& o) {
    if (!(o.tol > 0.0)) throw ParameterError("solver.tol", "must be > 0");
    if (!(o.armijo > 0.0 && o.armijo < 1.0)) throw ParameterError("solver.armijo", "must lie in (0, 1)");
    if (!(o.shrink > 0.0 && o.shrink < 1.0)) throw ParameterError("solver.shrink", "must lie in (0, 1)");
    if (!(o.initial_step > 0.0)) throw ParameterError("solver.initial_step", "must be > 0");
}

// Damped Newton on the interior gradient with the exterior block eliminated.
// Merit: grad_norm^2. Returns true once grad_norm <= tol.
bool newton(const Reduced& r, State& s, const MountainPassOptions& o, std::size_t& iterations) {
    const auto& mesh = r.cfg().grid();
    const std::size_t n = mesh.size();
    const std::size_t ni = r.size();
    const std::size_t first = r.first();
    State cur = s;
    for (std::size_t it = 0; it < o.newton_iters; ++it) {
        const double merit = std::pow(r.grad_norm(cur.g), 2);
        if (std::sqrt(merit) <= o.descent.tol) {
            s = std::move(cur);
            return true;
        }
        ++iterations;
        const std::vector<double> h = hessian(r.kind(), cur.u, r.cfg());
        Eigen::MatrixXd hred(ni, ni);
        for (std::size_t i = 0; i < ni; ++i)
            for (std::size_t j = 0; j < ni; ++j) hred(Reduced::idx(i), Reduced::idx(j)) = h[(first + i) * n + first + j];
        for (std::size_t e = 0; e < n; ++e) {
            if (mesh.is_interior(e)) continue;
            const double dee = h[e * n + e];
            if (!(dee > 0.0)) continue;
            Vec col(ni);
            for (std::size_t i = 0; i < ni; ++i) col(Reduced::idx(i)) = h[(first + i) * n + e];
            hred.noalias() -= col * col.transpose() / dee;
        }
        const Vec delta = hred.partialPivLu().solve(-cur.g);
        if (!delta.allFinite()) return false;
        bool moved = false;
        double t = 1.0;
        for (int k = 0; k < 40; ++k, t *= 0.5) {
            State trial = make_state(r, cur.x + t * delta);
            if (!std::isfinite(trial.ev.value)) continue;
            const double m = std::pow(r.grad_norm(trial.g), 2);
            if (m <= (1.0 - 1e-4 * t) * merit) {
                cur = std::move(trial);
                moved = true;
                break;
            }
        }
        if (!moved) return false;
    }
    if (r.grad_norm(cur.g) <= o.descent.tol) {
        s = std::move(cur);
        return true;
    }
    return false;
}

double mass_norm(const Vec& x, const Vec& mass) { return std::sqrt(x.cwiseAbs2().dot(mass)); }

}  // namespace

CriticalPointReport classify(const GridFunction& u, FunctionalKind kind, const ProblemConfig& cfg) {
    const auto& mesh = cfg.grid();
    const Evaluation ev = evaluate(kind, u, cfg);
    CriticalPointReport rep(u);
    rep.kind = kind;
    rep.energy = ev.value;
    double gsq = 0.0;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
        gsq += ev.gradient[k] * ev.gradient[k] / mesh.cell_measure(k);
    rep.grad_norm = std::sqrt(gsq);
    rep.cerami_measure = (1.0 + norm_x(cfg.kernel(), u, mesh, cfg.p)) * rep.grad_norm;
    rep.neumann_residual = neumann_residual(u, mesh, cfg.kernel(), cfg.p);
    const auto v = u.values();
    rep.min_value = *std::min_element(v.begin(), v.end());
    rep.max_value = *std::max_element(v.begin(), v.end());
    rep.sign_class = sign_class(u);
    if (cfg.p == 2.0 && mesh.n_interior() <= 512) {
        const auto lambdas = eigenvalues_p2(mesh, cfg.kernel());
        rep.cone_bracket = cone_bracket(lambdas, cfg.lambda);
    }
    return rep;
}

CriticalPointReport minimize(const GridFunction& u0, FunctionalKind kind, const ProblemConfig& cfg,
                             const DescentOptions& opts) {
    require_options(opts);
    u0.require_mesh(cfg.grid());
    const Reduced r(kind, cfg);
    State s = make_state(r, r.interior(u0));
    if (!std::isfinite(s.ev.value)) {
        const auto v = u0.values();
        throw DivergenceError("minimize: non-finite energy at the initial guess", {v.begin(), v.end()});
    }
    std::vector<double> history{s.ev.value};
    Vec z = r.precondition(s.g);
    Vec d = -z;
    double prev_slope = 0.0;
    double prev_step = opts.initial_step;
    double prev_decrease = 0.0;
    std::size_t it = 0;
    bool converged = false;
    std::string message;
    for (; it < opts.max_iter; ++it) {
        if (r.grad_norm(s.g) <= opts.tol) {
            converged = true;
            break;
        }
        double slope = s.g.dot(d);
        bool steepest = false;
        if (!(slope < 0.0)) {
            d = -z;
            slope = s.g.dot(d);
            steepest = true;
        }
        // Initial trial from the previous decrease (quadratic model), else from the previous step.
        double t0 = opts.initial_step;
        if (it > 0 && prev_decrease < 0.0) t0 = std::clamp(2.0 * prev_decrease / slope, 1e-12, 1e12);
        else if (it > 0) t0 = prev_step * prev_slope / slope;
        if (!(t0 > 0.0) || !std::isfinite(t0)) t0 = opts.initial_step;
        const Vec g_old = s.g;
        const Vec z_old = z;
        LineSearch ls = armijo(r, s, d, t0, opts);
        if (!ls.accepted && !steepest) {
            d = -z;
            slope = s.g.dot(d);
            ls = armijo(r, s, d, opts.initial_step, opts);
        }
        if (!ls.accepted) {
            message = "line search stalled";
            break;
        }
        history.push_back(history.back() + ls.increment);
        prev_step = ls.step;
        prev_slope = slope;
        prev_decrease = ls.increment;
        z = r.precondition(s.g);
        const double beta = std::max(0.0, s.g.dot(z - z_old) / g_old.dot(z_old));
        d = -z + beta * d;
    }
    if (!converged && r.grad_norm(s.g) <= opts.tol) converged = true;
    if (!converged && message.empty()) message = "iteration cap reached";
    CriticalPointReport rep = classify(s.u, kind, cfg);
    rep.iterations = it;
    rep.converged = converged;
    rep.energy_history = std::move(history);
    rep.message = converged ? "converged" : message;
    return rep;
}

CriticalPointReport mountain_pass(const GridFunction& e, FunctionalKind kind, const ProblemConfig& cfg,
                                  const MountainPassOptions& opts) {
    if (kind == FunctionalKind::I) throw ParameterError("kind", "mountain_pass runs on E_PLUS or E_MINUS");
    require_options(opts.descent);
    if (opts.nodes < 3) throw ParameterError("solver.nodes", "need at least 3 path nodes");
    if (opts.sweeps_per_round < 1) throw ParameterError("solver.sweeps_per_round", "must be >= 1");
    e.require_mesh(cfg.grid());
    const auto& mesh = cfg.grid();
    const auto& w = cfg.kernel();
    const Reduced r(kind, cfg);
    const Vec xe = r.interior(e);
    const GridFunction e_full = r.full(xe);

    const bool plus = kind == FunctionalKind::EPlus;
    const double lead = plus ? xe.maxCoeff() : -xe.minCoeff();
    if (!(lead > 0.0))
        throw GeometryError(std::string("mountain_pass: endpoint has no ") + (plus ? "positive" : "negative") +
                                " part on Omega",
                            {}, {});
    const double e_energy = energy(kind, e_full, cfg);
    if (e_energy > 0.0)
        throw GeometryError("mountain_pass: endpoint energy " + std::to_string(e_energy) + " is positive", {}, {});

    // Sphere precheck.
    const double ne = norm_x(w, e_full, mesh, cfg.p);
    std::vector<Vec> dirs{Vec::Ones(static_cast<Eigen::Index>(r.size())), -Vec::Ones(static_cast<Eigen::Index>(r.size())),
                          xe, -xe};
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (std::size_t k = 0; k < opts.precheck_directions; ++k) {
        Vec d(static_cast<Eigen::Index>(r.size()));
        for (auto& v : d) v = unif(rng);
        if (k % 2 == 0) d += xe / xe.cwiseAbs().maxCoeff();
        dirs.push_back(std::move(d));
    }
    std::vector<GridFunction> units;
    for (const auto& d : dirs) {
        GridFunction u = r.full(d);
        const double nu = norm_x(w, u, mesh, cfg.p);
        if (!(nu > 0.0)) continue;
        for (auto& v : u.values()) v /= nu;
        units.push_back(std::move(u));
    }
    std::vector<double> radii, minima;
    double radius = 0.0, ring_min = 0.0;
    for (std::size_t j = 1; j <= opts.precheck_levels; ++j) {
        const double rad = std::ldexp(ne, -static_cast<int>(j));
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& u : units) {
            GridFunction v = u;
            for (auto& x : v.values()) x *= rad;
            lo = std::min(lo, energy(kind, v, cfg));
        }
        radii.push_back(rad);
        minima.push_back(lo);
        if (lo > 0.0) {
            radius = rad;
            ring_min = lo;
            break;
        }
    }
    if (!(radius > 0.0))
        throw GeometryError("mountain_pass: no sampled sphere around 0 has a positive minimum", radii, minima);

    // String 0 -> e.
    const std::size_t P = opts.nodes;
    std::vector<State> path;
    path.reserve(P);
    for (std::size_t i = 0; i < P; ++i)
        path.push_back(make_state(r, xe * (static_cast<double>(i) / static_cast<double>(P - 1))));
    std::vector<double> steps(P, opts.descent.initial_step);
    Vec mass(static_cast<Eigen::Index>(r.size()));
    for (std::size_t i = 0; i < r.size(); ++i) mass(Reduced::idx(i)) = mesh.cell_measure(r.first() + i);

    auto path_max = [&](const std::vector<State>& nodes) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < nodes.size(); ++i)
            if (nodes[i].ev.value > nodes[arg].ev.value) arg = i;
        return arg;
    };

    const double floor_level = std::max(path.front().ev.value, path.back().ev.value);
    std::vector<double> history;
    std::size_t sweeps = 0, newton_iters = 0;
    bool converged = false;
    State found = path[path_max(path)];
    double round_start = found.ev.value;
    for (; sweeps < opts.max_sweeps && !converged; ++sweeps) {
        // Descent across the string: the preconditioned gradient minus its
        // component along the local tangent, both in the mass inner product.
        std::vector<Vec> tangents(P);
        for (std::size_t i = 1; i + 1 < P; ++i) {
            Vec tau = path[i + 1].x - path[i - 1].x;
            const double len = mass_norm(tau, mass);
            tangents[i] = len > 0.0 ? Vec(tau / len) : Vec::Zero(tau.size());
        }
        // Nodes at or below the endpoint level play no part in the minimax and
        // stay put; the others move at most one node spacing per sweep.
        double spacing = 0.0;
        for (std::size_t i = 1; i < P; ++i) spacing += mass_norm(path[i].x - path[i - 1].x, mass);
        spacing /= static_cast<double>(P - 1);
        for (std::size_t i = 1; i + 1 < P; ++i) {
            if (path[i].ev.value <= floor_level) continue;
            const Vec z = r.precondition(path[i].g);
            const Vec d = -(z - z.cwiseProduct(mass).dot(tangents[i]) * tangents[i]);
            const double dn = mass_norm(d, mass);
            if (!(dn > 0.0)) continue;
            const double cap = spacing / dn;
            const LineSearch ls = armijo(r, path[i], d, std::min(2.0 * steps[i], cap), opts.descent);
            if (ls.accepted) steps[i] = ls.step;
        }
        const double relaxed = path[path_max(path)].ev.value;

        // Arclength redistribution in the mass norm.
        std::vector<double> arc(P, 0.0);
        for (std::size_t i = 1; i < P; ++i) arc[i] = arc[i - 1] + mass_norm(path[i].x - path[i - 1].x, mass);
        if (arc.back() > 0.0) {
            std::vector<State> moved;
            moved.reserve(P);
            moved.push_back(path.front());
            std::size_t seg = 1;
            for (std::size_t i = 1; i + 1 < P; ++i) {
                const double target = arc.back() * static_cast<double>(i) / static_cast<double>(P - 1);
                while (seg + 1 < P && arc[seg] < target) ++seg;
                const double len = arc[seg] - arc[seg - 1];
                const double a = len > 0.0 ? (target - arc[seg - 1]) / len : 0.0;
                moved.push_back(make_state(r, (1.0 - a) * path[seg - 1].x + a * path[seg].x));
            }
            moved.push_back(path.back());
            if (moved[path_max(moved)].ev.value <= relaxed) path = std::move(moved);
        }
        const double top = path[path_max(path)].ev.value;
        if (!history.empty() && top > history.back())
            throw std::logic_error("mountain_pass: path maximum increased");
        history.push_back(top);

        const bool stalled = std::abs(round_start - top) <= 1e-15 * (1.0 + std::abs(top));
        if ((sweeps + 1) % opts.sweeps_per_round == 0 || stalled) {
            State cand = path[path_max(path)];
            if (newton(r, cand, opts, newton_iters) && cand.ev.value > 0.0) {
                found = std::move(cand);
                converged = true;
            } else if (stalled) {
                found = path[path_max(path)];
                ++sweeps;
                break;
            }
            round_start = top;
        }
    }
    if (!converged) found = path[path_max(path)];

    CriticalPointReport rep = classify(found.u, kind, cfg);
    rep.iterations = sweeps + newton_iters;
    rep.converged = converged && rep.grad_norm <= opts.descent.tol;
    rep.path_max_history = std::move(history);
    rep.precheck_radius = radius;
    rep.precheck_ring_min = ring_min;
    rep.message = rep.converged ? "converged" : "path search stagnated before the gradient tolerance was met";
    return rep;
}

std::vector<double> coercivity_probe(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg,
                                     const std::vector<double>& ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        GridFunction v = u;
        for (auto& x : v.values()) x *= t;
        const double nx = norm_x(cfg.kernel(), v, cfg.grid(), cfg.p);
        if (!(nx > 0.0)) throw DomainError("coercivity_probe: ray direction vanishes");
        out.push_back(energy(kind, v, cfg) / std::pow(nx, cfg.p));
    }
    return out;
}

}  // namespace fracneum
