#include "fracneum/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracneum/errors.hpp"
#include "fracneum/kernels.hpp"

namespace fracneum {

using kernels::jp;

namespace {

struct InteriorRange {
    double lo;
    double hi;
};

InteriorRange interior_range(const GridFunction& u, const DomainMesh& mesh) {
    InteriorRange r{u[mesh.first_interior()], u[mesh.first_interior()]};
    for (std::size_t j = mesh.first_interior(); j < mesh.end_interior(); ++j) {
        if (!std::isfinite(u[j])) throw InputError("exterior_extend: non-finite interior value");
        r.lo = std::min(r.lo, u[j]);
        r.hi = std::max(r.hi, u[j]);
    }
    return r;
}

double flux(const DomainMesh& mesh, const KernelWeights& w, const GridFunction& u, std::size_t k, double t, double p) {
    const auto row = w.coupling_row(k);
    double s = 0.0;
    for (std::size_t j = mesh.first_interior(); j < mesh.end_interior(); ++j)
        if (row[j] != 0.0) s += row[j] * jp(t - u[j], p);
    return s;
}

double flux_slope(const DomainMesh& mesh, const KernelWeights& w, const GridFunction& u, std::size_t k, double t,
                  double p) {
    const auto row = w.coupling_row(k);
    double s = 0.0;
    for (std::size_t j = mesh.first_interior(); j < mesh.end_interior(); ++j)
        if (row[j] != 0.0) s += row[j] * (p == 2.0 ? 1.0 : (p - 1.0) * std::pow(std::abs(t - u[j]), p - 2.0));
    return s;
}

double solve_cell(const DomainMesh& mesh, const KernelWeights& w, const GridFunction& u, std::size_t k, double p,
                  InteriorRange range) {
    double lo = range.lo;
    double hi = range.hi;
    if (lo == hi) return lo;
    const double tol = 1e-13 * (1.0 + (hi - lo));
    if (p < 2.0) {
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const double f = flux(mesh, w, u, k, mid, p);
            if (f == 0.0) return mid;
            (f > 0.0 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        const double f = flux(mesh, w, u, k, t, p);
        if (f == 0.0) return t;
        (f > 0.0 ? hi : lo) = t;
        const double df = flux_slope(mesh, w, u, k, t, p);
        double next = t - f / df;
        if (!(df > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - t);
        t = next;
        if (step <= 0.5 * tol || hi - lo <= tol) break;
    }
    return t;
}

void require_connected(const DomainMesh& mesh, const KernelWeights& w) {
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        if (mesh.is_interior(k)) continue;
        double total = 0.0;
        for (std::size_t j = mesh.first_interior(); j < mesh.end_interior(); ++j) total += w.coupling(k, j);
        if (!(total > 0.0))
            throw ConnectivityError("exterior cell " + std::to_string(k) + " has no coupling to the interior");
    }
}

}  // namespace

GridFunction exterior_extend(const GridFunction& u, const DomainMesh& mesh, const KernelWeights& w, double p) {
    u.require_mesh(mesh);
    if (w.mesh_id() != mesh.id()) throw BindingError("exterior_extend: weights belong to another mesh");
    require_connected(mesh, w);
    const InteriorRange range = interior_range(u, mesh);
    GridFunction out = u;
    const auto n = static_cast<std::ptrdiff_t>(mesh.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        if (!mesh.is_interior(kk)) out[kk] = solve_cell(mesh, w, u, kk, p, range);
    }
    return out;
}

double neumann_residual(const GridFunction& u, const DomainMesh& mesh, const KernelWeights& w, double p) {
    u.require_mesh(mesh);
    if (w.mesh_id() != mesh.id()) throw BindingError("neumann_residual: weights belong to another mesh");
    require_connected(mesh, w);
    const InteriorRange range = interior_range(u, mesh);
    const double scale = std::pow(1.0 + (range.hi - range.lo), p - 1.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        if (mesh.is_interior(k)) continue;
        double total = 0.0;
        for (std::size_t j = mesh.first_interior(); j < mesh.end_interior(); ++j) total += w.coupling(k, j);
        worst = std::max(worst, std::abs(flux(mesh, w, u, k, u[k], p)) / (total * scale));
    }
    return worst;
}

}  // namespace fracneum
