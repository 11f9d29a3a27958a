#pragma once

#include "fracneum/grid_function.hpp"
#include "fracneum/mesh.hpp"
#include "fracneum/weights.hpp"

namespace fracneum {

/// Completes interior data to the collar by enforcing the discrete nonlocal
/// Neumann condition cell by cell: each exterior value t solves
///   sum_{j interior} w_kj J_p(t - u_j) = 0.
/// The left side is strictly increasing in t, so the root is unique and lies in
/// [min u, max u] over the interior. Bisection to a bracket of width
/// 1e-13 (1 + spread); for p >= 2 the iteration is safeguarded Newton inside
/// the same bracket. Exterior values of `u` on entry are ignored.
GridFunction exterior_extend(const GridFunction& u, const DomainMesh& mesh, const KernelWeights& w, double p);

/// max over exterior k of |sum_j w_kj J_p(u_k - u_j)| / (sum_j w_kj (1 + spread)^(p-1)).
double neumann_residual(const GridFunction& u, const DomainMesh& mesh, const KernelWeights& w, double p);

}  // namespace fracneum
