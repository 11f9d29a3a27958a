#include "fracneum/energy.hpp"

#include <cmath>
#include <string>

#include "fracneum/errors.hpp"
#include "fracneum/kernels.hpp"

namespace fracneum {

using kernels::abs_pow;
using kernels::jp;
using kernels::pow_increment;

const char* to_string(FunctionalKind kind) {
    switch (kind) {
        case FunctionalKind::I: return "I";
        case FunctionalKind::EPlus: return "E_PLUS";
        case FunctionalKind::EMinus: return "E_MINUS";
    }
    return "?";
}

void ProblemConfig::validate() const {
    if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("p", "must be finite and > 1");
    if (!(s > 0.0 && s < 1.0)) throw ParameterError("s", "must lie in (0, 1)");
    if (!std::isfinite(lambda)) throw ParameterError("lambda", "must be finite");
    if (!mesh || !weights) throw ConfigError("problem: mesh and weights are required");
    if (weights->mesh_id() != mesh->id()) throw BindingError("problem: weights were assembled on another mesh");
    if (std::abs(weights->alpha() - (1.0 + p * s)) > 1e-14 * (1.0 + p * s))
        throw ConfigError("problem: weights alpha does not equal 1 + p s");
    if (nonlinearity && nonlinearity->p != p)
        throw ConfigError("problem: nonlinearity '" + nonlinearity->name + "' was declared for a different p");
}

ProblemConfig make_problem(DomainMesh mesh, double p, double s, double lambda, Nonlinearity nonlinearity) {
    ProblemConfig cfg;
    cfg.p = p;
    cfg.s = s;
    cfg.lambda = lambda;
    cfg.mesh = std::make_shared<const DomainMesh>(std::move(mesh));
    cfg.weights = std::make_shared<const KernelWeights>(assemble_weights(*cfg.mesh, p, s));
    cfg.nonlinearity = std::make_shared<const Nonlinearity>(std::move(nonlinearity));
    cfg.validate();
    return cfg;
}

double gagliardo_p(const KernelWeights& w, const GridFunction& u, double p) {
    if (u.mesh_id() != w.mesh_id()) throw BindingError("gagliardo_p: function and weights live on different meshes");
    return kernels::seminorm(w, u.values(), p);
}

double lp_interior(const GridFunction& u, const DomainMesh& mesh, double p) {
    u.require_mesh(mesh);
    double s = 0.0;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) s += mesh.cell_measure(k) * abs_pow(u[k], p);
    return s;
}

double norm_x(const KernelWeights& w, const GridFunction& u, const DomainMesh& mesh, double p) {
    return std::pow(gagliardo_p(w, u, p) + lp_interior(u, mesh, p), 1.0 / p);
}

GridFunction kernel_gradient(const KernelWeights& w, const GridFunction& u, double p) {
    if (u.mesh_id() != w.mesh_id()) throw BindingError("kernel_gradient: function and weights live on different meshes");
    std::vector<double> out(u.size());
    kernels::gradient(w, u.values(), p, out);
    GridFunction g = u;
    std::copy(out.begin(), out.end(), g.values().begin());
    return g;
}

namespace {

void require_binding(const GridFunction& u, const ProblemConfig& cfg) {
    u.require_mesh(cfg.grid());
    if (u.mesh_id() != cfg.kernel().mesh_id()) throw BindingError("function and weights live on different meshes");
}

void require_source(FunctionalKind kind, const ProblemConfig& cfg) {
    if (!cfg.nonlinearity) throw ConfigError(std::string("functional ") + to_string(kind) + ": nonlinearity missing");
    if (kind != FunctionalKind::I && !cfg.nonlinearity->no_ar)
        throw ConfigError(std::string("functional ") + to_string(kind) + ": nonlinearity '" + cfg.nonlinearity->name +
                          "' declares no f-hypotheses (f(x,0) = 0 is required for the truncated functionals)");
}

// Local energy density (per unit measure) at one interior cell.
double local_value(FunctionalKind kind, double x, double t, const ProblemConfig& cfg) {
    const double p = cfg.p;
    const auto& nl = cfg.source();
    switch (kind) {
        case FunctionalKind::I: return -cfg.lambda / p * abs_pow(t, p) - nl.primitive(x, t);
        case FunctionalKind::EPlus: {
            const double tp = std::max(t, 0.0);
            return abs_pow(t, p) / p - (cfg.lambda + 1.0) / p * abs_pow(tp, p) - nl.primitive(x, tp);
        }
        case FunctionalKind::EMinus: {
            const double tm = std::min(t, 0.0);
            return abs_pow(t, p) / p - (cfg.lambda + 1.0) / p * abs_pow(tm, p) - nl.primitive(x, tm);
        }
    }
    return 0.0;
}

// t-derivative of local_value.
double local_slope(FunctionalKind kind, double x, double t, const ProblemConfig& cfg) {
    const double p = cfg.p;
    const auto& nl = cfg.source();
    switch (kind) {
        case FunctionalKind::I: return -cfg.lambda * jp(t, p) - nl.g(x, t);
        case FunctionalKind::EPlus: {
            const double tp = std::max(t, 0.0);
            return jp(t, p) - (cfg.lambda + 1.0) * jp(tp, p) - nl.g(x, tp);
        }
        case FunctionalKind::EMinus: {
            const double tm = std::min(t, 0.0);
            return jp(t, p) - (cfg.lambda + 1.0) * jp(tm, p) - nl.g(x, tm);
        }
    }
    return 0.0;
}

double power_curvature(double t, double p, double floor) {
    if (p == 2.0) return 1.0;
    const double a = p < 2.0 ? std::max(std::abs(t), floor) : std::abs(t);
    return (p - 1.0) * std::pow(a, p - 2.0);
}

double local_curvature(FunctionalKind kind, double x, double t, const ProblemConfig& cfg, double floor) {
    const double p = cfg.p;
    const auto& nl = cfg.source();
    const double c = power_curvature(t, p, floor);
    switch (kind) {
        case FunctionalKind::I: return -cfg.lambda * c - nl.dg_dt(x, t);
        case FunctionalKind::EPlus: return c - (t > 0.0 ? (cfg.lambda + 1.0) * c + nl.dg_dt(x, t) : 0.0);
        case FunctionalKind::EMinus: return c - (t < 0.0 ? (cfg.lambda + 1.0) * c + nl.dg_dt(x, t) : 0.0);
    }
    return 0.0;
}

double local_increment(FunctionalKind kind, double x, double a, double b, const ProblemConfig& cfg) {
    const double p = cfg.p;
    const auto& nl = cfg.source();
    const double d = b - a;
    switch (kind) {
        case FunctionalKind::I: return -cfg.lambda * pow_increment(a, d, p) - nl.primitive_increment(x, a, b);
        case FunctionalKind::EPlus: {
            const double ap = std::max(a, 0.0), bp = std::max(b, 0.0);
            return pow_increment(a, d, p) - (cfg.lambda + 1.0) * pow_increment(ap, bp - ap, p) -
                   nl.primitive_increment(x, ap, bp);
        }
        case FunctionalKind::EMinus: {
            const double am = std::min(a, 0.0), bm = std::min(b, 0.0);
            return pow_increment(a, d, p) - (cfg.lambda + 1.0) * pow_increment(am, bm - am, p) -
                   nl.primitive_increment(x, am, bm);
        }
    }
    return 0.0;
}

}  // namespace

Evaluation evaluate(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg) {
    require_source(kind, cfg);
    require_binding(u, cfg);
    const auto& mesh = cfg.grid();
    const double kernel_part = kernels::seminorm(cfg.kernel(), u.values(), cfg.p) / (2.0 * cfg.p);
    GridFunction grad = kernel_gradient(cfg.kernel(), u, cfg.p);
    double local = 0.0;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) {
        const double m = mesh.cell_measure(k);
        const double x = mesh.cell_center(k);
        local += m * local_value(kind, x, u[k], cfg);
        grad[k] += m * local_slope(kind, x, u[k], cfg);
    }
    const double value = kernel_part + local;
    return {value, std::move(grad)};
}

double energy(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg) {
    require_source(kind, cfg);
    require_binding(u, cfg);
    const auto& mesh = cfg.grid();
    double local = 0.0;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
        local += mesh.cell_measure(k) * local_value(kind, mesh.cell_center(k), u[k], cfg);
    return kernels::seminorm(cfg.kernel(), u.values(), cfg.p) / (2.0 * cfg.p) + local;
}

double energy_increment(FunctionalKind kind, const GridFunction& from, const GridFunction& to,
                        const ProblemConfig& cfg) {
    require_source(kind, cfg);
    require_binding(from, cfg);
    require_binding(to, cfg);
    const auto& mesh = cfg.grid();
    std::vector<double> step(from.size());
    for (std::size_t k = 0; k < step.size(); ++k) step[k] = to[k] - from[k];
    double local = 0.0;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
        local += mesh.cell_measure(k) * local_increment(kind, mesh.cell_center(k), from[k], to[k], cfg);
    // (1/2p) * 2 * sum_{i<j} w (|D'|^p - |D|^p) = sum_{i<j} w * pow_increment
    return kernels::increment(cfg.kernel(), from.values(), step, cfg.p) + local;
}

double weak_residual(const GridFunction& u, const GridFunction& v, const ProblemConfig& cfg) {
    require_source(FunctionalKind::I, cfg);
    require_binding(u, cfg);
    require_binding(v, cfg);
    const auto& mesh = cfg.grid();
    const auto& nl = cfg.source();
    double local = 0.0;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) {
        const double x = mesh.cell_center(k);
        local += mesh.cell_measure(k) * (cfg.lambda * jp(u[k], cfg.p) + nl.g(x, u[k])) * v[k];
    }
    return kernels::pairing(cfg.kernel(), u.values(), v.values(), cfg.p) - local;
}

std::vector<double> hessian(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg, double floor) {
    require_source(kind, cfg);
    require_binding(u, cfg);
    const auto& mesh = cfg.grid();
    const auto& w = cfg.kernel();
    const std::size_t n = u.size();
    const double p = cfg.p;
    std::vector<double> h(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double k = w.coupling(i, j);
            if (k == 0.0) continue;
            const double c = k * power_curvature(u[i] - u[j], p, floor);
            h[i * n + i] += c;
            h[j * n + j] += c;
            h[i * n + j] -= c;
            h[j * n + i] -= c;
        }
    }
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
        h[k * n + k] += mesh.cell_measure(k) * local_curvature(kind, mesh.cell_center(k), u[k], cfg, floor);
    return h;
}

}  // namespace fracneum
