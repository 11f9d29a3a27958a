#pragma once

#include <memory>
#include <vector>

#include "fracneum/grid_function.hpp"
#include "fracneum/mesh.hpp"
#include "fracneum/nonlinearity.hpp"
#include "fracneum/weights.hpp"

namespace fracneum {

/// I: the full functional. EPlus / EMinus: the sign-truncated functionals whose
/// critical points are the nonnegative / nonpositive solutions.
enum class FunctionalKind { I, EPlus, EMinus };

const char* to_string(FunctionalKind kind);

struct ProblemConfig {
    double p = 2.0;
    double s = 0.5;
    double lambda = 0.0;
    std::shared_ptr<const DomainMesh> mesh;
    std::shared_ptr<const KernelWeights> weights;
    std::shared_ptr<const Nonlinearity> nonlinearity;

    const DomainMesh& grid() const { return *mesh; }
    const KernelWeights& kernel() const { return *weights; }
    const Nonlinearity& source() const { return *nonlinearity; }

    /// Throws ConfigError / ParameterError on inconsistent exponents, handles or alpha.
    void validate() const;
};

/// Builds the mesh handle and assembles the weights.
ProblemConfig make_problem(DomainMesh mesh, double p, double s, double lambda, Nonlinearity nonlinearity);

struct Evaluation {
    double value = 0.0;
    GridFunction gradient;
};

/// [u]^p_h = 2 sum_{i<j} w_ij |u_i - u_j|^p
double gagliardo_p(const KernelWeights& w, const GridFunction& u, double p);

/// ([u]^p_h + sum_{interior} m_k |u_k|^p)^(1/p)
double norm_x(const KernelWeights& w, const GridFunction& u, const DomainMesh& mesh, double p);

/// sum over interior cells of m_k |u_k|^p
double lp_interior(const GridFunction& u, const DomainMesh& mesh, double p);

/// Value and gradient (with respect to the cell values) of the chosen functional.
///
///   I(u)  = [u]^p/(2p) - (lambda/p) sum m|u|^p - sum m G(x,u)
///   E+(u) = [u]^p/(2p) + (1/p) sum m|u|^p - ((lambda+1)/p) sum m (u+)^p - sum m F(x,u+)
///   E-(u) = [u]^p/(2p) + (1/p) sum m|u|^p - ((lambda+1)/p) sum m (u-)^p - sum m F(x,-u-)
///
/// Local sums run over interior cells with the source evaluated at the cell
/// center. Exterior gradient components carry only the kernel term.
Evaluation evaluate(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg);

/// Value only.
double energy(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg);

/// energy(to) - energy(from), computed term by term from increments so that it
/// stays accurate when the two states are close.
double energy_increment(FunctionalKind kind, const GridFunction& from, const GridFunction& to,
                        const ProblemConfig& cfg);

/// Kernel part of the gradient: sum_j w_kj J_p(u_k - u_j).
GridFunction kernel_gradient(const KernelWeights& w, const GridFunction& u, double p);

/// sum_{i<j} w_ij J_p(u_i-u_j)(v_i-v_j) - lambda sum m |u|^(p-2) u v - sum m g(x,u) v.
/// Vanishes for every v exactly at discrete weak solutions.
double weak_residual(const GridFunction& u, const GridFunction& v, const ProblemConfig& cfg);

/// Dense Hessian of the functional (row-major, n x n). Powers |t|^(p-2) are
/// evaluated with |t| floored at `floor` when p < 2.
std::vector<double> hessian(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg,
                            double floor = 1e-8);

}  // namespace fracneum
