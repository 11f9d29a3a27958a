#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fracneum/grid_function.hpp"
#include "fracneum/mesh.hpp"
#include "fracneum/weights.hpp"

namespace fracneum {

/// Eigenvalue of the Rayleigh quotient [u]^p / sum m|u|^p and its eigenfunction,
/// exterior-extended and normalized by sum_{interior} m |phi|^p = 1.
struct EigenPair {
    double lambda;
    GridFunction phi;
};

/// Matrix of the quadratic form [u]^2_h on interior unknowns after the
/// exterior unknowns are eliminated (Schur complement; the collar block is
/// diagonal because exterior cells never couple to each other).
struct CondensedForm {
    Eigen::MatrixXd matrix;   // n_interior x n_interior, symmetric PSD
    Eigen::VectorXd mass;     // interior cell measures
    Eigen::MatrixXd prolong;  // n_exterior x n_interior: exterior values from interior ones
};

CondensedForm condense_p2(const DomainMesh& mesh, const KernelWeights& w);

/// The k smallest eigenpairs at p = 2, ascending. Dense symmetric solve of
/// M^-1/2 A M^-1/2, eigenvalues refined by the Rayleigh quotient of the
/// reinflated eigenfunction. Sign fixed so the first nonzero interior entry is
/// positive.
std::vector<EigenPair> eig_p2(const DomainMesh& mesh, const KernelWeights& w, std::size_t k);

/// All eigenvalues of the condensed p = 2 problem, ascending, unrefined.
std::vector<double> eigenvalues_p2(const DomainMesh& mesh, const KernelWeights& w);

/// [u]^p_h / sum_{interior} m |u|^p
double rayleigh(const GridFunction& u, const KernelWeights& w, const DomainMesh& mesh, double p);

enum class ConeMembership { InCMinus, InCPlus, Neither, BothZero };

const char* to_string(ConeMembership c);

/// C- : [u]^p <= lambda_lo sum m|u|^p.  C+ : [u]^p >= lambda_hi sum m|u|^p.
ConeMembership cone_test(const GridFunction& u, double lambda_lo, double lambda_hi, const KernelWeights& w,
                         const DomainMesh& mesh, double p);

/// The 1-based m with lambda_m <= 2 lambda + 1 < lambda_{m+1}, if the list brackets it.
std::optional<std::size_t> cone_bracket(std::span<const double> eigenvalues, double lambda);

}  // namespace fracneum
