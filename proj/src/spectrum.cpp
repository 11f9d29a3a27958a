#include "fracneum/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracneum/energy.hpp"
#include "fracneum/errors.hpp"
#include "fracneum/neumann.hpp"

namespace fracneum {

CondensedForm condense_p2(const DomainMesh& mesh, const KernelWeights& w) {
    if (w.mesh_id() != mesh.id()) throw BindingError("condense_p2: weights belong to another mesh");
    const std::size_t n = mesh.size();
    const std::size_t ni = mesh.n_interior();
    const std::size_t first = mesh.first_interior();
    std::vector<std::size_t> ext;
    for (std::size_t k = 0; k < n; ++k)
        if (!mesh.is_interior(k)) ext.push_back(k);

    // [u]^2_h = 2 sum_{i<j} w_ij (u_i - u_j)^2 = u^T (2 L) u
    Eigen::MatrixXd a_ii = Eigen::MatrixXd::Zero(ni, ni);
    for (std::size_t i = 0; i < ni; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double c = w.coupling(first + i, j);
            if (c == 0.0 || j == first + i) continue;
            a_ii(i, i) += 2.0 * c;
            if (mesh.is_interior(j)) a_ii(i, j - first) -= 2.0 * c;
        }
    }
    Eigen::MatrixXd prolong = Eigen::MatrixXd::Zero(ext.size(), ni);
    for (std::size_t e = 0; e < ext.size(); ++e) {
        double d = 0.0;
        for (std::size_t i = 0; i < ni; ++i) d += w.coupling(ext[e], first + i);
        if (!(d > 0.0)) throw ConnectivityError("condense_p2: exterior cell " + std::to_string(ext[e]) + " is isolated");
        for (std::size_t i = 0; i < ni; ++i) prolong(e, i) = w.coupling(ext[e], first + i) / d;
    }
    // Schur complement: A_II - A_IE D^-1 A_EI with A_IE = -2 W_IE, D = 2 diag(row sums)
    Eigen::MatrixXd w_ie(ni, ext.size());
    for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t e = 0; e < ext.size(); ++e) w_ie(i, e) = w.coupling(first + i, ext[e]);
    Eigen::MatrixXd reduced = a_ii - 2.0 * (w_ie * prolong);
    reduced = 0.5 * (reduced + reduced.transpose()).eval();

    Eigen::VectorXd mass(ni);
    for (std::size_t i = 0; i < ni; ++i) mass(i) = mesh.cell_measure(first + i);
    return {std::move(reduced), std::move(mass), std::move(prolong)};
}

double rayleigh(const GridFunction& u, const KernelWeights& w, const DomainMesh& mesh, double p) {
    const double denom = lp_interior(u, mesh, p);
    if (!(denom > 0.0)) throw DomainError("rayleigh: u vanishes on Omega");
    return gagliardo_p(w, u, p) / denom;
}

std::vector<EigenPair> eig_p2(const DomainMesh& mesh, const KernelWeights& w, std::size_t k) {
    if (k < 1 || k > mesh.n_interior())
        throw ParameterError("k", "requested eigenpairs must be in [1, n_interior]");
    const CondensedForm form = condense_p2(mesh, w);
    const Eigen::VectorXd inv_sqrt_mass = form.mass.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd scaled = inv_sqrt_mass.asDiagonal() * form.matrix * inv_sqrt_mass.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scaled);
    if (solver.info() != Eigen::Success) throw DomainError("eig_p2: eigensolver did not converge");

    const std::size_t ni = mesh.n_interior();
    const std::size_t first = mesh.first_interior();
    std::vector<EigenPair> out;
    out.reserve(k);
    for (std::size_t m = 0; m < k; ++m) {
        Eigen::VectorXd phi = inv_sqrt_mass.cwiseProduct(solver.eigenvectors().col(static_cast<Eigen::Index>(m)));
        const double big = phi.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < phi.size(); ++i) {
            if (std::abs(phi(i)) > 1e-12 * big) {
                if (phi(i) < 0.0) phi = -phi;
                break;
            }
        }
        GridFunction g = GridFunction::zeros(mesh);
        for (std::size_t i = 0; i < ni; ++i) g[first + i] = phi(static_cast<Eigen::Index>(i));
        g = exterior_extend(g, mesh, w, 2.0);
        const double norm = std::sqrt(lp_interior(g, mesh, 2.0));
        for (auto& v : g.values()) v /= norm;
        out.push_back({rayleigh(g, w, mesh, 2.0), std::move(g)});
    }
    std::stable_sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) { return a.lambda < b.lambda; });
    return out;
}

std::vector<double> eigenvalues_p2(const DomainMesh& mesh, const KernelWeights& w) {
    const CondensedForm form = condense_p2(mesh, w);
    const Eigen::VectorXd inv_sqrt_mass = form.mass.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd scaled = inv_sqrt_mass.asDiagonal() * form.matrix * inv_sqrt_mass.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scaled, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DomainError("eigenvalues_p2: eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

const char* to_string(ConeMembership c) {
    switch (c) {
        case ConeMembership::InCMinus: return "IN_C_MINUS";
        case ConeMembership::InCPlus: return "IN_C_PLUS";
        case ConeMembership::Neither: return "NEITHER";
        case ConeMembership::BothZero: return "BOTH_ZERO";
    }
    return "?";
}

ConeMembership cone_test(const GridFunction& u, double lambda_lo, double lambda_hi, const KernelWeights& w,
                         const DomainMesh& mesh, double p) {
    if (!(lambda_lo >= 0.0 && lambda_lo <= lambda_hi)) throw ParameterError("lambda_lo/lambda_hi", "need 0 <= lo <= hi");
    u.require_mesh(mesh);
    if (std::all_of(u.values().begin(), u.values().end(), [](double v) { return v == 0.0; }))
        return ConeMembership::BothZero;
    const double semi = gagliardo_p(w, u, p);
    const double mass = lp_interior(u, mesh, p);
    if (semi <= lambda_lo * mass) return ConeMembership::InCMinus;
    if (semi >= lambda_hi * mass) return ConeMembership::InCPlus;
    return ConeMembership::Neither;
}

std::optional<std::size_t> cone_bracket(std::span<const double> eigenvalues, double lambda) {
    const double level = 2.0 * lambda + 1.0;
    for (std::size_t m = 0; m + 1 < eigenvalues.size(); ++m)
        if (eigenvalues[m] <= level && level < eigenvalues[m + 1]) return m + 1;
    return std::nullopt;
}

}  // namespace fracneum
