#pragma once

#include <functional>
#include <optional>
#include <string>

namespace fracneum {

using SpaceFunction = std::function<double(double x)>;
using SourceFunction = std::function<double(double x, double t)>;

/// Constants of the superlinear (Ambrosetti-Rabinowitz) hypotheses:
///   |g(x,t)| <= a1 + a2 |t|^(q-1)
///   0 < mu G(x,t) <= g(x,t) t            for |t| > R
///   G(x,t) >= a3 |t|^mu_tilde - a4(x)
///   G >= 0 everywhere when R > 0
struct SuperlinearGrowth {
    double a1 = 0.0;
    double a2 = 0.0;
    double q = 0.0;
    double mu = 0.0;
    double r_ar = 0.0;
    double mu_tilde = 0.0;
    double a3 = 0.0;
    SpaceFunction a4 = [](double) { return 0.0; };
};

/// Constants of the hypotheses without the AR condition (f(x,0) = 0):
///   |f(x,t)| <= a(x) + c |t|^(r-1)
///   F(x,t) / |t|^p -> +inf as |t| -> inf
///   sigma(x,t1) <= theta sigma(x,t2) + beta*(x) on ordered pairs, sigma = f t - p F
///   f(x,t) / (|t|^(p-2) t) -> 0 as t -> 0
struct NoArGrowth {
    SpaceFunction a = [](double) { return 0.0; };
    double c = 0.0;
    double r = 0.0;
    double theta = 1.0;
    SpaceFunction beta_star = [](double) { return 0.0; };
};

/// p-linear growth: |g(x,t)| <= a(x) + b |t|^(p-1), with
/// alpha_bar(x) = limsup_{|t|->inf} g(x,t) / (|t|^(p-2) t).
struct LinearGrowth {
    SpaceFunction a = [](double) { return 0.0; };
    double b = 0.0;
    SpaceFunction alpha_bar = [](double) { return 0.0; };
};

/// Source term g with primitive G(x,t) = int_0^t g(x,tau) dtau and its
/// t-derivative. `p` is the exponent the growth metadata is stated against.
struct Nonlinearity {
    std::string name;
    double p = 2.0;
    SourceFunction g;
    SourceFunction primitive;
    SourceFunction dg_dt;
    bool odd = false;
    std::optional<SuperlinearGrowth> superlinear;
    std::optional<NoArGrowth> no_ar;
    std::optional<LinearGrowth> linear;

    double operator()(double x, double t) const { return g(x, t); }
    /// G(x,b) - G(x,a), accurate when b is close to a.
    double primitive_increment(double x, double a, double b) const;
};

/// g = 0.
Nonlinearity zero_nonlinearity(double p);

/// g = kappa |t|^(q-2) t, q > p. Odd; satisfies both superlinear hypothesis sets
/// with mu = mu_tilde = q, a3 = kappa / q, theta = 1, beta* = 0.
Nonlinearity pure_power(double p, double kappa, double q);

/// g = kappa |t|^(q-2) t + eps |t|^(q_low-2) t with p < q_low < q and eps >= 0.
/// sigma is nondecreasing in |t|, so theta = 1 and beta* = 0.
Nonlinearity perturbed_power(double p, double kappa, double q, double eps, double q_low);

/// g = -gamma |t|^(p-2) t + f0(x), gamma > 0: p-linear growth with
/// a = |f0|, b = gamma and alpha_bar = -gamma < 0.
Nonlinearity affine_decay(double p, double gamma, SpaceFunction f0);

}  // namespace fracneum
