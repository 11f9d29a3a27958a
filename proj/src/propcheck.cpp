#include "fracneum/propcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fracneum/errors.hpp"
#include "fracneum/kernels.hpp"
#include "fracneum/neumann.hpp"
#include "fracneum/quadrature.hpp"
#include "fracneum/spectrum.hpp"

namespace fracneum {

using kernels::abs_pow;
using kernels::jp;

// ---------------------------------------------------------------- inequalities

namespace {

struct Slacks {
    std::array<double, 4> v;
};

Slacks inequality_slacks(double x, double y, double p) {
    const double xp = std::max(x, 0.0), xm = std::max(-x, 0.0);
    const double yp = std::max(y, 0.0), ym = std::max(-y, 0.0);
    const double d = x - y;
    const double jd = jp(d, p);
    const double scale = 1.0 + abs_pow(x, p) + abs_pow(y, p);
    Slacks s{};
    s.v[0] = (jd * (ym - xm) - abs_pow(xm - ym, p)) / scale;
    s.v[1] = (jd * (xp - yp) - abs_pow(xp - yp, p)) / scale;
    s.v[2] = (std::pow(2.0, p - 1.0) * (abs_pow(xp - yp, p) + abs_pow(xm - ym, p)) - abs_pow(d, p)) / scale;
    s.v[3] = std::min(std::abs(d) - std::abs(xp - yp), std::abs(d) - std::abs(xm - ym)) / scale;
    return s;
}

}  // namespace

InequalityReport check_pointwise_inequalities(std::size_t n_samples, double p_lo, double p_hi, std::uint64_t seed) {
    if (n_samples < 1) throw ParameterError("n_samples", "must be >= 1");
    if (!(p_lo > 1.0 && p_lo <= p_hi && std::isfinite(p_hi))) throw ParameterError("p_range", "must lie in (1, inf)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uni = [&](double a, double b) { return a + (b - a) * unit(rng); };
    auto sign = [&] { return unit(rng) < 0.5 ? -1.0 : 1.0; };

    InequalityReport rep;
    rep.worst_slack.fill(0.0);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double p = uni(p_lo, p_hi);
        double x = 0.0, y = 0.0;
        if (i % 2 == 0) {
            x = uni(-10.0, 10.0);
            y = uni(-10.0, 10.0);
        } else {
            ++rep.adversarial;
            switch ((i / 2) % 5) {
                case 0:
                    x = y = sign() * std::pow(10.0, uni(-3.0, 3.0));
                    break;
                case 1:
                    x = sign() * std::pow(10.0, uni(-3.0, 3.0));
                    y = -x;
                    break;
                case 2:
                    x = sign() * std::pow(10.0, uni(2.0, 6.0));
                    y = -std::copysign(std::pow(10.0, uni(-6.0, 0.0)), x);
                    if (unit(rng) < 0.5) std::swap(x, y);
                    break;
                case 3:
                    x = 0.0;
                    y = sign() * std::pow(10.0, uni(-6.0, 6.0));
                    if (unit(rng) < 0.5) std::swap(x, y);
                    break;
                default:
                    x = sign() * std::pow(10.0, uni(3.0, 6.0));
                    y = sign() * std::pow(10.0, uni(3.0, 6.0));
                    break;
            }
        }
        const Slacks s = inequality_slacks(x, y, p);
        for (std::size_t k = 0; k < 4; ++k) {
            rep.worst_slack[k] = std::min(rep.worst_slack[k], s.v[k]);
            if (s.v[k] < -1e-12) {
                ++rep.violations[k];
                if (rep.first_violations.size() < 20) rep.first_violations.push_back({x, y, p, k, s.v[k]});
            }
        }
        ++rep.samples;
    }
    return rep;
}

// ---------------------------------------------------------------- growth

const char* to_string(HypothesisSet set) {
    switch (set) {
        case HypothesisSet::G: return "G_SET";
        case HypothesisSet::F: return "F_SET";
        case HypothesisSet::Linear: return "LINEAR_SET";
    }
    return "?";
}

const char* to_string(CheckFlag flag) {
    switch (flag) {
        case CheckFlag::Pass: return "PASS";
        case CheckFlag::Warn: return "WARN";
        case CheckFlag::Fail: return "FAIL";
    }
    return "?";
}

bool GrowthReport::failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.flag == CheckFlag::Fail; });
}

double critical_exponent(double p, double s) {
    if (p * s < 1.0) return p / (1.0 - p * s);
    return std::numeric_limits<double>::infinity();
}

std::vector<double> log_t_grid(std::size_t per_decade) {
    if (per_decade < 1) throw ParameterError("per_decade", "must be >= 1");
    std::vector<double> pos;
    const std::size_t n = 12 * per_decade;
    for (std::size_t i = 0; i <= n; ++i)
        pos.push_back(std::pow(10.0, -6.0 + 12.0 * static_cast<double>(i) / static_cast<double>(n)));
    std::vector<double> grid;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
    grid.push_back(0.0);
    grid.insert(grid.end(), pos.begin(), pos.end());
    return grid;
}

namespace {

bool within(double lhs, double rhs) { return lhs <= rhs + 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs)); }

// Pointwise check over x_samples x t_grid.
template <typename Pred>
HypothesisCheck pointwise(std::string name, const std::vector<double>& xs, const std::vector<double>& ts, Pred&& ok) {
    HypothesisCheck c;
    c.name = std::move(name);
    for (double x : xs)
        for (double t : ts) {
            bool applies = true;
            const bool good = ok(x, t, applies);
            if (!applies) continue;
            ++c.points;
            if (!good) ++c.violations;
        }
    c.flag = c.violations ? CheckFlag::Fail : CheckFlag::Pass;
    return c;
}

HypothesisCheck constant_check(std::string name, bool ok, std::string note) {
    HypothesisCheck c;
    c.name = std::move(name);
    c.points = 1;
    c.violations = ok ? 0 : 1;
    c.flag = ok ? CheckFlag::Pass : CheckFlag::Fail;
    c.note = std::move(note);
    return c;
}

std::vector<double> positive_magnitudes(const std::vector<double>& ts) {
    std::vector<double> m;
    for (double t : ts)
        if (t > 0.0) m.push_back(t);
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

enum class Trend { ToZero, ToInfinity, AtMost };

// Limit-type hypothesis judged on the five extreme magnitudes of the grid, both
// signs, every x. ToZero looks at the smallest |t|, the others at the largest.
template <typename Ratio, typename Bound>
HypothesisCheck trend(std::string name, Trend kind, const std::vector<double>& xs, const std::vector<double>& ts,
                      Ratio&& ratio, Bound&& bound) {
    HypothesisCheck c;
    c.name = std::move(name);
    const auto mags = positive_magnitudes(ts);
    if (mags.size() < 5) {
        c.flag = CheckFlag::Warn;
        c.note = "grid too short for a trend";
        return c;
    }
    std::vector<double> tail;
    if (kind == Trend::ToZero) tail.assign(mags.begin(), mags.begin() + 5);   // ascending: t -> 0 reads backwards
    else tail.assign(mags.end() - 5, mags.end());
    for (double x : xs)
        for (double sgn : {1.0, -1.0}) {
            std::vector<double> r;
            for (double t : tail) r.push_back(ratio(x, sgn * t));
            ++c.points;
            bool good = true;
            switch (kind) {
                case Trend::ToZero:
                    for (std::size_t i = 0; i + 1 < r.size(); ++i)
                        good = good && std::abs(r[i]) <= std::abs(r[i + 1]) * (1.0 + 1e-9) + 1e-300;
                    good = good && std::abs(r.front()) <= 1e-3;
                    break;
                case Trend::ToInfinity:
                    for (std::size_t i = 0; i + 1 < r.size(); ++i) good = good && r[i + 1] >= r[i] * (1.0 - 1e-9);
                    good = good && r.back() >= 1e3;
                    break;
                case Trend::AtMost: {
                    const double b = bound(x);
                    for (double v : r) good = good && v <= b + 1e-3 * (1.0 + std::abs(b));
                    break;
                }
            }
            if (!good) ++c.violations;
        }
    c.flag = c.violations ? CheckFlag::Warn : CheckFlag::Pass;
    return c;
}

auto no_bound = [](double) { return 0.0; };

}  // namespace

GrowthReport check_growth(const Nonlinearity& nl, HypothesisSet set, const std::vector<double>& t_grid,
                          const std::vector<double>& x_samples, std::optional<double> s) {
    GrowthReport rep{nl.name, set, {}};
    const double p = nl.p;
    const auto& xs = x_samples;
    const auto& ts = t_grid;
    if (xs.empty() || ts.empty()) throw ParameterError("t_grid/x_samples", "must be nonempty");
    const double pstar = s ? critical_exponent(p, *s) : std::numeric_limits<double>::infinity();
    auto& out = rep.checks;

    switch (set) {
        case HypothesisSet::G: {
            if (!nl.superlinear) throw ConfigError("nonlinearity '" + nl.name + "': no G_SET metadata declared");
            const auto& m = *nl.superlinear;
            out.push_back(constant_check("exponents", m.q > p && m.q < pstar && m.mu > p && m.mu_tilde > p,
                                         "p < q < p*_s, mu > p, mu_tilde > p"));
            out.push_back(constant_check("constants", m.a1 >= 0.0 && m.a2 > 0.0 && m.a3 > 0.0 && m.r_ar >= 0.0,
                                         "a1 >= 0, a2 > 0, a3 > 0, R >= 0"));
            out.push_back(pointwise("subcritical_bound", xs, ts, [&](double x, double t, bool&) {
                return within(std::abs(nl.g(x, t)), m.a1 + m.a2 * std::pow(std::abs(t), m.q - 1.0));
            }));
            out.push_back(trend(
                "o_small_at_zero", Trend::ToZero, xs, ts,
                [&](double x, double t) { return nl.g(x, t) / std::pow(std::abs(t), p - 1.0); }, no_bound));
            out.push_back(pointwise("ambrosetti_rabinowitz", xs, ts, [&](double x, double t, bool& applies) {
                applies = std::abs(t) > m.r_ar && t != 0.0;
                const double big_g = nl.primitive(x, t);
                return m.mu * big_g > 0.0 && within(m.mu * big_g, nl.g(x, t) * t);
            }));
            out.push_back(pointwise("primitive_lower_bound", xs, ts, [&](double x, double t, bool&) {
                return within(m.a3 * std::pow(std::abs(t), m.mu_tilde) - m.a4(x), nl.primitive(x, t));
            }));
            if (m.r_ar > 0.0)
                out.push_back(pointwise("primitive_nonnegative", xs, ts,
                                        [&](double x, double t, bool&) { return within(0.0, nl.primitive(x, t)); }));
            break;
        }
        case HypothesisSet::F: {
            if (!nl.no_ar) throw ConfigError("nonlinearity '" + nl.name + "': no F_SET metadata declared");
            const auto& m = *nl.no_ar;
            out.push_back(constant_check("exponents", m.r > p && m.r < pstar, "p < r < p*_s"));
            out.push_back(constant_check("constants", m.c > 0.0 && m.theta >= 1.0, "c > 0, theta >= 1"));
            out.push_back(pointwise("vanishes_at_zero", xs, {0.0}, [&](double x, double, bool&) { return nl.g(x, 0.0) == 0.0; }));
            out.push_back(pointwise("subcritical_bound", xs, ts, [&](double x, double t, bool&) {
                return m.a(x) >= 0.0 && within(std::abs(nl.g(x, t)), m.a(x) + m.c * std::pow(std::abs(t), m.r - 1.0));
            }));
            out.push_back(trend(
                "p_superlinear_primitive", Trend::ToInfinity, xs, ts,
                [&](double x, double t) { return nl.primitive(x, t) / std::pow(std::abs(t), p); }, no_bound));
            {
                HypothesisCheck c;
    c.name = "sigma_quasi_monotone";
                const auto mags = positive_magnitudes(ts);
                std::vector<double> pos{0.0};
                pos.insert(pos.end(), mags.begin(), mags.end());
                for (double x : xs) {
                    auto sigma = [&](double t) { return nl.g(x, t) * t - p * nl.primitive(x, t); };
                    const double beta = m.beta_star(x);
                    for (double sgn : {1.0, -1.0})
                        for (std::size_t i = 0; i < pos.size(); ++i)
                            for (std::size_t j = i; j < pos.size(); ++j) {
                                // 0 <= t1 <= t2, or t2 <= t1 <= 0
                                const double s1 = sigma(sgn * pos[i]);
                                const double s2 = sigma(sgn * pos[j]);
                                ++c.points;
                                if (!(beta >= 0.0) || !within(s1, m.theta * s2 + beta)) ++c.violations;
                            }
                }
                c.flag = c.violations ? CheckFlag::Fail : CheckFlag::Pass;
                out.push_back(std::move(c));
            }
            out.push_back(trend(
                "o_small_at_zero", Trend::ToZero, xs, ts,
                [&](double x, double t) { return nl.g(x, t) / jp(t, p); }, no_bound));
            break;
        }
        case HypothesisSet::Linear: {
            if (!nl.linear) throw ConfigError("nonlinearity '" + nl.name + "': no LINEAR_SET metadata declared");
            const auto& m = *nl.linear;
            out.push_back(pointwise("p_linear_bound", xs, ts, [&](double x, double t, bool&) {
                return m.a(x) >= 0.0 && within(std::abs(nl.g(x, t)), m.a(x) + m.b * std::pow(std::abs(t), p - 1.0));
            }));
            out.push_back(trend(
                "alpha_bar_limsup", Trend::AtMost, xs, ts, [&](double x, double t) { return nl.g(x, t) / jp(t, p); },
                [&](double x) { return m.alpha_bar(x); }));
            out.push_back(trend(
                "primitive_limsup", Trend::AtMost, xs, ts,
                [&](double x, double t) { return nl.primitive(x, t) / std::pow(std::abs(t), p); },
                [&](double x) { return m.alpha_bar(x) / p; }));
            {
                HypothesisCheck c;
    c.name = "alpha_bar_below_lambda1";
                for (double x : xs) {
                    ++c.points;
                    if (!(m.alpha_bar(x) < 0.0)) ++c.violations;
                }
                c.flag = c.violations ? CheckFlag::Warn : CheckFlag::Pass;
                c.note = "needed for coercivity of I";
                out.push_back(std::move(c));
            }
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- gradient

GradientCheck check_gradient_fd(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg, double h) {
    if (!(h > 0.0)) throw ParameterError("h", "must be > 0");
    const auto& mesh = cfg.grid();
    const auto& w = cfg.kernel();
    const Evaluation ev = evaluate(kind, u, cfg);
    double gmax = 0.0;
    for (double g : ev.gradient.values()) gmax = std::max(gmax, std::abs(g));
    const bool local_kink = cfg.p < 2.0 || kind != FunctionalKind::I;

    GradientCheck out;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double hk = h * (1.0 + std::abs(u[k]));
        bool skip = false;
        if (cfg.p < 2.0)
            for (std::size_t j = 0; j < u.size() && !skip; ++j)
                skip = j != k && w.coupling(k, j) != 0.0 && std::abs(u[k] - u[j]) <= hk;
        if (mesh.is_interior(k) && local_kink && std::abs(u[k]) <= hk) skip = true;
        if (skip) {
            out.excluded.push_back(k);
            continue;
        }
        GridFunction up = u, dn = u;
        up[k] += hk;
        dn[k] -= hk;
        const double fd = (energy_increment(kind, u, up, cfg) - energy_increment(kind, u, dn, cfg)) / (2.0 * hk);
        const double g = ev.gradient[k];
        const double rel = std::abs(fd - g) / std::max({std::abs(g), 1e-8 * gmax, 1e-300});
        out.max_rel_error = std::max(out.max_rel_error, rel);
        ++out.compared;
    }
    return out;
}

// ---------------------------------------------------------------- monotonicity

MonotonicityReport check_monotonicity(const KernelWeights& w, double p, std::size_t n_pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::size_t n = w.n_cells();
    std::vector<double> u(n), v(n), gu(n), gv(n);
    MonotonicityReport rep;
    rep.min_pairing = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_pairs; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = unif(rng);
            v[i] = unif(rng);
        }
        kernels::gradient(w, u, p, gu);
        kernels::gradient(w, v, p, gv);
        double pairing = 0.0;
        for (std::size_t i = 0; i < n; ++i) pairing += (gu[i] - gv[i]) * (u[i] - v[i]);
        rep.min_pairing = std::min(rep.min_pairing, pairing);
        if (pairing < -1e-12) ++rep.violations;
        ++rep.pairs;
    }
    return rep;
}

// ---------------------------------------------------------------- neumann

NeumannInvariantReport check_neumann_invariants(std::size_t n_cases, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uni = [&](double a, double b) { return a + (b - a) * unit(rng); };
    auto count = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(unit(rng) * static_cast<double>(hi - lo + 1)) % (hi - lo + 1); };

    NeumannInvariantReport rep;
    for (std::size_t c = 0; c < n_cases; ++c) {
        const double hi = uni(0.5, 2.0);
        const std::size_t n_int = count(4, 12);
        const std::size_t n_ext = count(1, 3);
        const double radius = uni(0.2, 1.5);
        const Grading grading = c % 2 ? Grading::geometric(uni(0.7, 0.95)) : Grading::uniform();
        const double s = uni(0.1, 0.9);
        const double p = c % 3 == 0 ? 2.0 : uni(1.2, 4.0);
        const DomainMesh mesh = build_mesh(0.0, hi, n_int, n_ext, radius, grading);
        const KernelWeights w = assemble_weights(mesh, p, s);
        const double amp = std::pow(10.0, uni(-2.0, 2.0));

        GridFunction u = GridFunction::zeros(mesh);
        for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) u[k] = amp * uni(-1.0, 1.0);
        double lo_v = u[mesh.first_interior()], hi_v = lo_v;
        for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) {
            lo_v = std::min(lo_v, u[k]);
            hi_v = std::max(hi_v, u[k]);
        }
        const double spread = hi_v - lo_v;
        const double shift = amp * uni(-3.0, 3.0);
        const double tol = 1e-12 * (1.0 + spread + std::abs(shift) + std::max(std::abs(lo_v), std::abs(hi_v)));
        const GridFunction ext = exterior_extend(u, mesh, w, p);

        if (p == 2.0) {
            bool bad = false;
            for (std::size_t k = 0; k < mesh.size(); ++k) {
                if (mesh.is_interior(k)) continue;
                double num = 0.0, den = 0.0;
                for (std::size_t j = mesh.first_interior(); j < mesh.end_interior(); ++j) {
                    num += w.coupling(k, j) * u[j];
                    den += w.coupling(k, j);
                }
                const double err = std::abs(ext[k] - num / den) / (1.0 + spread);
                rep.worst_weighted_mean_error = std::max(rep.worst_weighted_mean_error, err);
                bad = bad || err > 1e-12;
            }
            if (bad) ++rep.weighted_mean_failures;
        }

        {
            const double cval = uni(-5.0, 5.0);
            const GridFunction e = exterior_extend(GridFunction::constant(mesh, cval), mesh, w, p);
            bool bad = false;
            for (double v : e.values()) bad = bad || v != cval;
            if (bad) ++rep.constant_failures;
        }

        {
            GridFunction v = u;
            for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) v[k] += amp * uni(0.0, 1.0);
            const GridFunction ev = exterior_extend(v, mesh, w, p);
            bool bad = false;
            for (std::size_t k = 0; k < mesh.size(); ++k)
                if (!mesh.is_interior(k)) bad = bad || ext[k] > ev[k] + 2.0 * tol;
            if (bad) ++rep.comparison_failures;
        }

        {
            GridFunction shifted = u, neg = u;
            for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k) {
                shifted[k] += shift;
                neg[k] = -u[k];
            }
            const GridFunction es = exterior_extend(shifted, mesh, w, p);
            const GridFunction en = exterior_extend(neg, mesh, w, p);
            bool bad = false;
            for (std::size_t k = 0; k < mesh.size(); ++k) {
                if (mesh.is_interior(k)) continue;
                bad = bad || std::abs(es[k] - (ext[k] + shift)) > tol || std::abs(en[k] + ext[k]) > tol;
            }
            if (bad) ++rep.equivariance_failures;
        }
        ++rep.cases;
    }
    return rep;
}

// ---------------------------------------------------------------- verify suite

namespace {

using nlohmann::json;

json flag_json(const GrowthReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"flag", to_string(c.flag)},
                          {"points", c.points},
                          {"violations", c.violations},
                          {"note", c.note}});
    return {{"nonlinearity", r.nonlinearity}, {"set", to_string(r.set)}, {"passed", !r.failed()}, {"checks", checks}};
}

json inequality_suite(const VerifyOptions& o) {
    const InequalityReport r = check_pointwise_inequalities(o.inequality_samples, o.p_lo, o.p_hi, o.seed);
    json counts, worst;
    for (std::size_t k = 0; k < 4; ++k) {
        counts[InequalityReport::names[k]] = r.violations[k];
        worst[InequalityReport::names[k]] = r.worst_slack[k];
    }
    return {{"passed", r.total_violations() == 0},
            {"samples", r.samples},
            {"adversarial", r.adversarial},
            {"violations", counts},
            {"worst_normalized_slack", worst}};
}

json growth_suite() {
    const auto grid = log_t_grid();
    const std::vector<double> xs{0.1, 0.5, 0.9};
    std::vector<GrowthReport> reports;
    reports.push_back(check_growth(pure_power(2.0, 1.0, 4.0), HypothesisSet::G, grid, xs, 0.4));
    reports.push_back(check_growth(pure_power(2.0, 1.0, 4.0), HypothesisSet::F, grid, xs, 0.4));
    reports.push_back(check_growth(perturbed_power(3.0, 1.0, 5.0, 0.5, 4.0), HypothesisSet::F, grid, xs, 0.5));
    reports.push_back(check_growth(affine_decay(2.0, 1.0, [](double x) { return std::cos(3.0 * x); }),
                                   HypothesisSet::Linear, grid, xs));
    json arr = json::array();
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && !r.failed();
        arr.push_back(flag_json(r));
    }
    return {{"passed", ok}, {"reports", arr}};
}

ProblemConfig small_problem(double p, double s, double lambda, std::size_t n, Nonlinearity nl) {
    return make_problem(build_mesh(0.0, 1.0, n, 2, 0.5), p, s, lambda, std::move(nl));
}

GridFunction random_function(const DomainMesh& mesh, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(mesh.size());
    for (auto& x : v) x = d(rng);
    return GridFunction(mesh, std::move(v));
}

json gradient_suite(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed + 1);
    json runs = json::array();
    bool ok = true;
    for (double p : {1.5, 2.0, 3.0}) {
        const ProblemConfig cfg = small_problem(p, 0.4, 0.3, o.n_interior, pure_power(p, 1.0, p + 2.0));
        const GridFunction u = random_function(cfg.grid(), rng, -1.0, 1.0);
        for (FunctionalKind kind : {FunctionalKind::I, FunctionalKind::EPlus, FunctionalKind::EMinus}) {
            const GradientCheck g = check_gradient_fd(kind, u, cfg, 1e-6);
            const bool pass = g.max_rel_error < 1e-6 && g.compared > 0;
            ok = ok && pass;
            runs.push_back({{"p", p},
                            {"kind", to_string(kind)},
                            {"max_rel_error", g.max_rel_error},
                            {"compared", g.compared},
                            {"excluded", g.excluded},
                            {"passed", pass}});
        }
    }
    return {{"passed", ok}, {"runs", runs}};
}

json monotone_suite(const VerifyOptions& o) {
    json runs = json::array();
    bool ok = true;
    for (double p : {1.5, 2.0, 3.0}) {
        const DomainMesh mesh = build_mesh(0.0, 1.0, o.n_interior, 2, 0.5);
        const KernelWeights w = assemble_weights(mesh, p, 0.5);
        const MonotonicityReport r = check_monotonicity(w, p, o.monotone_pairs, o.seed + 2);
        ok = ok && r.violations == 0;
        runs.push_back({{"p", p}, {"pairs", r.pairs}, {"violations", r.violations}, {"min_pairing", r.min_pairing}});
    }
    return {{"passed", ok}, {"runs", runs}};
}

json neumann_suite(const VerifyOptions& o) {
    const NeumannInvariantReport r = check_neumann_invariants(o.neumann_cases, o.seed + 3);
    return {{"passed", r.failures() == 0},
            {"cases", r.cases},
            {"weighted_mean_failures", r.weighted_mean_failures},
            {"constant_failures", r.constant_failures},
            {"comparison_failures", r.comparison_failures},
            {"equivariance_failures", r.equivariance_failures},
            {"worst_weighted_mean_error", r.worst_weighted_mean_error}};
}

json quadrature_suite(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed + 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t sym = 0, add = 0, mono = 0, cases = 0;
    for (double alpha : {1.3, 1.5, 2.0, 2.5}) {
        for (int k = 0; k < 100; ++k) {
            const double a0 = unit(rng), la = 0.05 + unit(rng);
            const double gap = 0.01 + unit(rng);
            const double lb = 0.05 + unit(rng);
            const Interval a{a0, a0 + la}, b{a0 + la + gap, a0 + la + gap + lb};
            const double wab = pair_weight(a, b, alpha);
            if (wab != pair_weight(b, a, alpha)) ++sym;
            const double cut = a.lo + unit(rng) * la;
            const double split = pair_weight({a.lo, cut}, b, alpha) + pair_weight({cut, a.hi}, b, alpha);
            if (std::abs(split - wab) > 1e-12 * wab) ++add;
            const double shift = 0.01 + unit(rng);
            if (!(pair_weight(a, {b.lo + shift, b.hi + shift}, alpha) < wab)) ++mono;
            ++cases;
        }
    }
    return {{"passed", sym + add + mono == 0},
            {"cases", cases},
            {"symmetry_failures", sym},
            {"additivity_failures", add},
            {"separation_monotonicity_failures", mono}};
}

json q_restriction_suite(const VerifyOptions& o) {
    const DomainMesh mesh = build_mesh(0.0, 1.0, o.n_interior, 3, 1.0);
    const KernelWeights w = assemble_weights(mesh, 2.0, 0.5);
    double ext_sum = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i)
        for (std::size_t j = 0; j < mesh.size(); ++j)
            if (!mesh.is_interior(i) && !mesh.is_interior(j)) ext_sum += w.coupling(i, j);
    return {{"passed", ext_sum == 0.0}, {"exterior_exterior_sum", ext_sum}, {"tail_fraction", w.tail_fraction()}};
}

json energy_suite(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed + 5);
    std::size_t trunc = 0, odd = 0, weak = 0, jp_odd = 0, cases = 0;
    for (double p : {1.5, 2.0, 3.0}) {
        const ProblemConfig cfg = small_problem(p, 0.5, 0.3, o.n_interior, pure_power(p, 1.0, p + 1.5));
        for (int k = 0; k < 20; ++k) {
            const GridFunction pos = random_function(cfg.grid(), rng, 0.0, 2.0);
            GridFunction neg = pos;
            for (auto& v : neg.values()) v = -v;
            const double ip = energy(FunctionalKind::I, pos, cfg);
            const double in = energy(FunctionalKind::I, neg, cfg);
            const double ep = energy(FunctionalKind::EPlus, pos, cfg);
            const double em = energy(FunctionalKind::EMinus, neg, cfg);
            if (std::abs(ep - ip) > 1e-12 * (1.0 + std::abs(ip)) || std::abs(em - in) > 1e-12 * (1.0 + std::abs(in)))
                ++trunc;

            const GridFunction u = random_function(cfg.grid(), rng, -1.0, 1.0);
            GridFunction mu = u;
            for (auto& v : mu.values()) v = -v;
            const double a = energy(FunctionalKind::EPlus, u, cfg), b = energy(FunctionalKind::EMinus, mu, cfg);
            if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) ++odd;

            const GridFunction v = random_function(cfg.grid(), rng, -1.0, 1.0);
            const Evaluation ev = evaluate(FunctionalKind::I, u, cfg);
            double dot = 0.0, mag = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                dot += ev.gradient[i] * v[i];
                mag += std::abs(ev.gradient[i] * v[i]);
            }
            if (std::abs(weak_residual(u, v, cfg) - dot) > 1e-12 * (1.0 + mag)) ++weak;

            const GridFunction g1 = kernel_gradient(cfg.kernel(), u, p);
            const GridFunction g2 = kernel_gradient(cfg.kernel(), mu, p);
            for (std::size_t i = 0; i < u.size(); ++i)
                if (g1[i] != -g2[i]) {
                    ++jp_odd;
                    break;
                }
            ++cases;
        }
    }
    return {{"passed", trunc + odd + weak + jp_odd == 0},
            {"cases", cases},
            {"truncation_identity_failures", trunc},
            {"odd_symmetry_failures", odd},
            {"weak_form_failures", weak},
            {"jp_oddness_failures", jp_odd}};
}

json spectrum_suite(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed + 6);
    json runs = json::array();
    bool ok = true;
    for (double s : {0.25, 0.5, 0.75}) {
        const DomainMesh mesh = build_mesh(0.0, 1.0, 2 * o.n_interior, 4, 1.0);
        const KernelWeights w = assemble_weights(mesh, 2.0, s);
        const auto pairs = eig_p2(mesh, w, 6);
        double lo = pairs[0].phi[mesh.first_interior()], hi = lo;
        for (double v : pairs[0].phi.values()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double variation = (hi - lo) / std::max(std::abs(hi), std::abs(lo));
        double orth = 0.0;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) {
                double d = 0.0;
                for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
                    d += mesh.cell_measure(k) * pairs[i].phi[k] * pairs[j].phi[k];
                orth = std::max(orth, std::abs(d));
            }
        bool ascending = true;
        for (std::size_t i = 1; i < pairs.size(); ++i) ascending = ascending && pairs[i].lambda >= pairs[i - 1].lambda;
        std::size_t both = 0;
        for (int k = 0; k < 200; ++k) {
            const GridFunction u = exterior_extend(random_function(mesh, rng, -1.0, 1.0), mesh, w, 2.0);
            const double semi = gagliardo_p(w, u, 2.0), mass = lp_interior(u, mesh, 2.0);
            for (std::size_t m = 0; m + 1 < pairs.size(); ++m)
                if (semi <= pairs[m].lambda * mass && semi >= pairs[m + 1].lambda * mass) ++both;
        }
        const bool pass = std::abs(pairs[0].lambda) <= 1e-9 && variation <= 1e-8 && orth <= 1e-8 && ascending &&
                          pairs[0].lambda >= -1e-10 && both == 0;
        ok = ok && pass;
        runs.push_back({{"s", s},
                        {"lambda1", pairs[0].lambda},
                        {"lambda2", pairs[1].lambda},
                        {"phi1_variation", variation},
                        {"max_mass_inner_product", orth},
                        {"cone_overlaps", both},
                        {"passed", pass}});
    }
    return {{"passed", ok}, {"runs", runs}};
}

}  // namespace

nlohmann::json run_verify_suite(const VerifyOptions& o) {
    json suites;
    suites["inequalities"] = inequality_suite(o);
    suites["growth"] = growth_suite();
    suites["gradient"] = gradient_suite(o);
    suites["monotone_operator"] = monotone_suite(o);
    suites["neumann"] = neumann_suite(o);
    suites["quadrature"] = quadrature_suite(o);
    suites["q_restriction"] = q_restriction_suite(o);
    suites["energy"] = energy_suite(o);
    suites["spectrum"] = spectrum_suite(o);
    bool ok = true;
    for (const auto& [name, suite] : suites.items()) ok = ok && suite.at("passed").get<bool>();
    return {{"passed", ok}, {"seed", o.seed}, {"suites", suites}};
}

}  // namespace fracneum
