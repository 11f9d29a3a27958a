#pragma once

#include <array>
#include <span>

#include "fracneum/mesh.hpp"

namespace fracneum {

enum class Side { Left, Right };

/// Double integral of |x - y|^-alpha over I1 x I2.
///
/// I1 and I2 may share an endpoint but not interior points. Closed-form double
/// antiderivative Phi(t) = t^(2-alpha) / ((1-alpha)(2-alpha)), or -ln t at
/// alpha = 2, combined over the four corners. Well separated pairs switch to
/// tensor Gauss-Legendre, which avoids the cancellation of the four-corner sum.
/// Touching intervals with alpha >= 2 diverge and raise DomainError.
double pair_weight(Interval a, Interval b, double alpha);

/// Double integral of |x - y|^-alpha over I x H, H the half-line beyond `cut`
/// on `side` (Right: (cut, inf), Left: (-inf, cut)). I must not touch the cut.
double tail_weight(Interval cell, double cut, Side side, double alpha);

/// Finite surrogate for touching cells when alpha >= 2. Each cell is split at its
/// midpoint; the three separated sub-blocks use pair_weight and the near-half x
/// near-half block uses a one-point rule at the sub-block centers.
double touching_weight_regularized(Interval a, Interval b, double alpha);

/// Weight used by assembly: pair_weight, except touching cells with alpha >= 2.
double assembly_weight(Interval a, Interval b, double alpha);

/// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre16 {
    static const std::array<double, 16>& nodes();
    static const std::array<double, 16>& weights();
};

/// Integral of f over [lo, hi] with one 16-point Gauss-Legendre panel.
template <typename F>
double gauss_legendre(F&& f, double lo, double hi) {
    const auto& x = GaussLegendre16::nodes();
    const auto& w = GaussLegendre16::weights();
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(mid + half * x[i]);
    return half * sum;
}

}  // namespace fracneum
