#include "fracneum/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "fracneum/errors.hpp"

namespace fracneum {

namespace {

struct LegendreRule {
    std::array<double, 16> x{};
    std::array<double, 16> w{};

    LegendreRule() {
        constexpr int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const LegendreRule& rule() {
    static const LegendreRule r;
    return r;
}

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 1.0)) throw ParameterError("alpha", "kernel exponent must be finite and > 1");
}

// t^beta / beta shifted by the constant -1/beta, continuous through beta = 0 (-> ln t).
double shifted_power_over_beta(double t, double beta) {
    if (beta == 0.0) return std::log(t);
    return std::expm1(beta * std::log(t)) / beta;
}

// Orders the pair left to right; throws if the interiors overlap.
std::pair<Interval, Interval> ordered(Interval a, Interval b) {
    if (b.lo < a.lo || (b.lo == a.lo && b.hi < a.hi)) std::swap(a, b);
    if (a.hi > b.lo) throw DomainError("pair_weight: intervals overlap");
    return {a, b};
}

// Closed form over the four corners; gap g >= 0, widths h1, h2.
double four_corner(double g, double h1, double h2, double alpha) {
    const double beta = 2.0 - alpha;
    const auto phi = [&](double t) { return shifted_power_over_beta(t, beta) / (1.0 - alpha); };
    return phi(g + h1 + h2) - phi(g + h1) - phi(g + h2) + phi(g);
}

// Outer Gauss-Legendre over the short interval, inner closed form over the long one.
double one_sided(double g, double h_short, double h_long, double alpha) {
    const double beta1 = 1.0 - alpha;
    return gauss_legendre(
        [&](double s) {
            const double d = g + s;
            return -std::expm1(beta1 * std::log1p(h_long / d)) * std::pow(d, beta1) / (alpha - 1.0);
        },
        0.0, h_short);
}

double tensor_gauss(double g, double h1, double h2, double alpha) {
    return gauss_legendre(
        [&](double s) { return gauss_legendre([&](double t) { return std::pow(g + s + t, -alpha); }, 0.0, h2); },
        0.0, h1);
}

}  // namespace

const std::array<double, 16>& GaussLegendre16::nodes() { return rule().x; }
const std::array<double, 16>& GaussLegendre16::weights() { return rule().w; }

double pair_weight(Interval a, Interval b, double alpha) {
    check_alpha(alpha);
    if (a.length() < 0.0 || b.length() < 0.0) throw DomainError("pair_weight: interval with hi < lo");
    if (a.length() == 0.0 || b.length() == 0.0) return 0.0;
    const auto [left, right] = ordered(a, b);
    const double g = right.lo - left.hi;
    const double h1 = left.length();
    const double h2 = right.length();
    if (g == 0.0 && alpha >= 2.0)
        throw DomainError("pair_weight: touching intervals diverge for alpha >= 2");
    const double h_max = std::max(h1, h2);
    const double h_min = std::min(h1, h2);
    if (g > 4.0 * h_max) return tensor_gauss(g, h1, h2, alpha);
    if (g > 4.0 * h_min) return one_sided(g, h_min, h_max, alpha);
    return four_corner(g, h1, h2, alpha);
}

double tail_weight(Interval cell, double cut, Side side, double alpha) {
    check_alpha(alpha);
    if (cell.length() < 0.0) throw DomainError("tail_weight: interval with hi < lo");
    const double near = side == Side::Right ? cut - cell.hi : cell.lo - cut;
    if (!(near > 0.0)) throw DomainError("tail_weight: cell must lie strictly on the inner side of the cut");
    const double far = near + cell.length();
    const double beta = 2.0 - alpha;
    if (near > 4.0 * cell.length())
        return gauss_legendre([&](double t) { return std::pow(t, 1.0 - alpha); }, near, far) / (alpha - 1.0);
    return (shifted_power_over_beta(far, beta) - shifted_power_over_beta(near, beta)) / (alpha - 1.0);
}

double touching_weight_regularized(Interval a, Interval b, double alpha) {
    check_alpha(alpha);
    const auto [left, right] = ordered(a, b);
    const double m1 = left.center();
    const double m2 = right.center();
    const Interval far1{left.lo, m1}, near1{m1, left.hi};
    const Interval near2{right.lo, m2}, far2{m2, right.hi};
    const double h1 = left.length();
    const double h2 = right.length();
    const double near_block = 0.25 * h1 * h2 * std::pow(0.25 * (h1 + h2) + (right.lo - left.hi), -alpha);
    return pair_weight(far1, near2, alpha) + pair_weight(far1, far2, alpha) + pair_weight(near1, far2, alpha) +
           near_block;
}

double assembly_weight(Interval a, Interval b, double alpha) {
    const bool touching = a.hi == b.lo || b.hi == a.lo;
    if (touching && alpha >= 2.0 && a.length() > 0.0 && b.length() > 0.0)
        return touching_weight_regularized(a, b, alpha);
    return pair_weight(a, b, alpha);
}

}  // namespace fracneum
