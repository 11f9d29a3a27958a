#include "fracneum/nonlinearity.hpp"

#include <cmath>

#include "fracneum/errors.hpp"
#include "fracneum/kernels.hpp"
#include "fracneum/quadrature.hpp"

namespace fracneum {

using kernels::jp;

double Nonlinearity::primitive_increment(double x, double a, double b) const {
    if (a == b) return 0.0;
    const bool same_sign = (a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0);
    if (same_sign && std::abs(b - a) <= 1e-2 * std::max(std::abs(a), std::abs(b)))
        return gauss_legendre([&](double t) { return g(x, t); }, a, b);
    return primitive(x, b) - primitive(x, a);
}

namespace {

void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("p", "must be finite and > 1");
}

double dpow(double t, double q) {
    // d/dt |t|^(q-2) t = (q-1) |t|^(q-2)
    if (t == 0.0) return q > 2.0 ? 0.0 : (q == 2.0 ? 1.0 : INFINITY);
    return (q - 1.0) * std::pow(std::abs(t), q - 2.0);
}

}  // namespace

Nonlinearity zero_nonlinearity(double p) {
    check_p(p);
    Nonlinearity nl;
    nl.name = "zero";
    nl.p = p;
    nl.g = [](double, double) { return 0.0; };
    nl.primitive = [](double, double) { return 0.0; };
    nl.dg_dt = [](double, double) { return 0.0; };
    nl.odd = true;
    nl.linear = LinearGrowth{};
    return nl;
}

Nonlinearity pure_power(double p, double kappa, double q) {
    check_p(p);
    if (!(kappa > 0.0)) throw ParameterError("kappa", "must be > 0");
    if (!(q > p)) throw ParameterError("q", "must exceed p");
    Nonlinearity nl;
    nl.name = "power";
    nl.p = p;
    nl.g = [kappa, q](double, double t) { return kappa * jp(t, q); };
    nl.primitive = [kappa, q](double, double t) { return kappa * std::pow(std::abs(t), q) / q; };
    nl.dg_dt = [kappa, q](double, double t) { return kappa * dpow(t, q); };
    nl.odd = true;
    SuperlinearGrowth sl;
    sl.a1 = 0.0;
    sl.a2 = kappa;
    sl.q = q;
    sl.mu = q;
    sl.r_ar = 0.0;
    sl.mu_tilde = q;
    sl.a3 = kappa / q;
    nl.superlinear = sl;
    NoArGrowth na;
    na.c = kappa;
    na.r = q;
    nl.no_ar = na;
    return nl;
}

Nonlinearity perturbed_power(double p, double kappa, double q, double eps, double q_low) {
    check_p(p);
    if (!(kappa > 0.0)) throw ParameterError("kappa", "must be > 0");
    if (!(eps >= 0.0)) throw ParameterError("epsilon", "must be >= 0");
    if (!(q_low > p && q_low < q)) throw ParameterError("q_low", "need p < q_low < q");
    Nonlinearity nl;
    nl.name = "perturbed_power";
    nl.p = p;
    nl.g = [=](double, double t) { return kappa * jp(t, q) + eps * jp(t, q_low); };
    nl.primitive = [=](double, double t) {
        const double a = std::abs(t);
        return kappa * std::pow(a, q) / q + eps * std::pow(a, q_low) / q_low;
    };
    nl.dg_dt = [=](double, double t) { return kappa * dpow(t, q) + eps * dpow(t, q_low); };
    nl.odd = true;
    // eps |t|^(q_low-1) <= eps (1 + |t|^(q-1))
    NoArGrowth na;
    na.a = [eps](double) { return eps; };
    na.c = kappa + eps;
    na.r = q;
    nl.no_ar = na;
    SuperlinearGrowth sl;
    sl.a1 = eps;
    sl.a2 = kappa + eps;
    sl.q = q;
    sl.mu = q_low;
    sl.r_ar = 0.0;
    sl.mu_tilde = q;
    sl.a3 = kappa / q;
    nl.superlinear = sl;
    return nl;
}

Nonlinearity affine_decay(double p, double gamma, SpaceFunction f0) {
    check_p(p);
    if (!(gamma > 0.0)) throw ParameterError("gamma", "must be > 0");
    Nonlinearity nl;
    nl.name = "affine_decay";
    nl.p = p;
    nl.g = [=](double x, double t) { return -gamma * jp(t, p) + f0(x); };
    nl.primitive = [=](double x, double t) { return -gamma * std::pow(std::abs(t), p) / p + f0(x) * t; };
    nl.dg_dt = [=](double, double t) { return -gamma * dpow(t, p); };
    nl.odd = false;
    LinearGrowth lg;
    lg.a = [f0](double x) { return std::abs(f0(x)); };
    lg.b = gamma;
    lg.alpha_bar = [gamma](double) { return -gamma; };
    nl.linear = lg;
    return nl;
}

}  // namespace fracneum
