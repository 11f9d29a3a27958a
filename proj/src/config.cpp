#include "fracneum/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "fracneum/errors.hpp"
#include "fracneum/io.hpp"
#include "fracneum/neumann.hpp"

namespace fracneum {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double real(const std::string& key, const std::string& v) {
    try {
        return parse_double(v, key);
    } catch (const InputError&) {
        throw ConfigError(key + ": '" + v + "' is not a number");
    }
}

std::uint64_t unsigned_value(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) throw ConfigError(key + ": '" + v + "' is not a nonnegative integer");
    return out;
}

std::size_t count(const std::string& key, const std::string& v) { return static_cast<std::size_t>(unsigned_value(key, v)); }

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"problem.p", [](RunConfig& c, const std::string& k, const std::string& v) { c.p = real(k, v); }},
        {"problem.s", [](RunConfig& c, const std::string& k, const std::string& v) { c.s = real(k, v); }},
        {"problem.lambda", [](RunConfig& c, const std::string& k, const std::string& v) { c.lambda = real(k, v); }},
        {"domain.lo", [](RunConfig& c, const std::string& k, const std::string& v) { c.domain_lo = real(k, v); }},
        {"domain.hi", [](RunConfig& c, const std::string& k, const std::string& v) { c.domain_hi = real(k, v); }},
        {"mesh.n_interior", [](RunConfig& c, const std::string& k, const std::string& v) { c.n_interior = count(k, v); }},
        {"mesh.n_exterior_per_side",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.n_exterior = count(k, v); }},
        {"mesh.collar_radius",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.collar_radius = real(k, v); }},
        {"mesh.grading",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v == "uniform") c.grading.kind = Grading::Kind::Uniform;
             else if (v == "geometric") c.grading.kind = Grading::Kind::Geometric;
             else throw ConfigError(k + ": expected 'uniform' or 'geometric', got '" + v + "'");
         }},
        {"mesh.ratio", [](RunConfig& c, const std::string& k, const std::string& v) { c.grading.ratio = real(k, v); }},
        {"nonlinearity.name", [](RunConfig& c, const std::string&, const std::string& v) { c.nonlinearity = v; }},
        {"nonlinearity.kappa", [](RunConfig& c, const std::string& k, const std::string& v) { c.kappa = real(k, v); }},
        {"nonlinearity.q", [](RunConfig& c, const std::string& k, const std::string& v) { c.q = real(k, v); }},
        {"nonlinearity.epsilon", [](RunConfig& c, const std::string& k, const std::string& v) { c.epsilon = real(k, v); }},
        {"nonlinearity.q_low", [](RunConfig& c, const std::string& k, const std::string& v) { c.q_low = real(k, v); }},
        {"nonlinearity.gamma", [](RunConfig& c, const std::string& k, const std::string& v) { c.gamma = real(k, v); }},
        {"nonlinearity.f0_mean", [](RunConfig& c, const std::string& k, const std::string& v) { c.f0_mean = real(k, v); }},
        {"nonlinearity.f0_amplitude",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.f0_amplitude = real(k, v); }},
        {"solver.tol",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.descent.tol = c.mountain.descent.tol = real(k, v); }},
        {"solver.max_iter", [](RunConfig& c, const std::string& k, const std::string& v) { c.descent.max_iter = count(k, v); }},
        {"solver.armijo",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.descent.armijo = c.mountain.descent.armijo = real(k, v);
         }},
        {"solver.shrink",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.descent.shrink = c.mountain.descent.shrink = real(k, v);
         }},
        {"solver.initial_step",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.descent.initial_step = c.mountain.descent.initial_step = real(k, v);
         }},
        {"solver.nodes", [](RunConfig& c, const std::string& k, const std::string& v) { c.mountain.nodes = count(k, v); }},
        {"solver.max_sweeps",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.mountain.max_sweeps = count(k, v); }},
        {"solver.sweeps_per_round",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.mountain.sweeps_per_round = count(k, v); }},
        {"solver.newton_iters",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.mountain.newton_iters = count(k, v); }},
        {"solver.precheck_directions",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.mountain.precheck_directions = count(k, v); }},
        {"eigs.count", [](RunConfig& c, const std::string& k, const std::string& v) { c.eig_count = count(k, v); }},
        {"endpoint.amplitude",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.endpoint_amplitude = real(k, v); }},
        {"endpoint.modulation",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.endpoint_modulation = real(k, v); }},
        {"verify.samples",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.verify.inequality_samples = count(k, v); }},
        {"verify.p_lo", [](RunConfig& c, const std::string& k, const std::string& v) { c.verify.p_lo = real(k, v); }},
        {"verify.p_hi", [](RunConfig& c, const std::string& k, const std::string& v) { c.verify.p_hi = real(k, v); }},
        {"verify.monotone_pairs",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.verify.monotone_pairs = count(k, v); }},
        {"verify.neumann_cases",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.verify.neumann_cases = count(k, v); }},
        {"verify.n_interior",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.verify.n_interior = count(k, v); }},
        {"seed", [](RunConfig& c, const std::string& k, const std::string& v) { apply_seed(c, unsigned_value(k, v)); }},
    };
    return table;
}

}  // namespace

void apply_seed(RunConfig& cfg, std::uint64_t seed) {
    cfg.seed = seed;
    cfg.mountain.seed = seed;
    cfg.verify.seed = seed;
}

RunConfig parse_config(std::istream& is) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::string line;
    for (std::size_t lineno = 1; std::getline(is, line); ++lineno) {
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'section.key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(key + ": unknown key (line " + std::to_string(lineno) + ")");
        if (!seen.insert(key).second) throw ConfigError(key + ": given twice (line " + std::to_string(lineno) + ")");
        if (value.empty()) throw ConfigError(key + ": missing value (line " + std::to_string(lineno) + ")");
        it->second(cfg, key, value);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

SpaceFunction source_term(const RunConfig& cfg) {
    const double lo = cfg.domain_lo, len = cfg.domain_hi - cfg.domain_lo;
    const double mean = cfg.f0_mean, amp = cfg.f0_amplitude;
    return [=](double x) { return mean + amp * std::cos(std::numbers::pi * (x - lo) / len); };
}

Nonlinearity build_nonlinearity(const RunConfig& cfg) {
    if (cfg.nonlinearity == "zero") return zero_nonlinearity(cfg.p);
    if (cfg.nonlinearity == "pure_power") return pure_power(cfg.p, cfg.kappa, cfg.q);
    if (cfg.nonlinearity == "perturbed_power") return perturbed_power(cfg.p, cfg.kappa, cfg.q, cfg.epsilon, cfg.q_low);
    if (cfg.nonlinearity == "affine_decay") return affine_decay(cfg.p, cfg.gamma, source_term(cfg));
    throw ConfigError("nonlinearity.name: unknown built-in '" + cfg.nonlinearity +
                      "' (zero, pure_power, perturbed_power, affine_decay)");
}

DomainMesh build_domain_mesh(const RunConfig& cfg) {
    return build_mesh(cfg.domain_lo, cfg.domain_hi, cfg.n_interior, cfg.n_exterior, cfg.collar_radius, cfg.grading);
}

ProblemConfig build_problem(const RunConfig& cfg) {
    return make_problem(build_domain_mesh(cfg), cfg.p, cfg.s, cfg.lambda, build_nonlinearity(cfg));
}

GridFunction build_endpoint(const RunConfig& cfg, const ProblemConfig& problem) {
    const auto& mesh = problem.grid();
    GridFunction e = GridFunction::zeros(mesh);
    const double lo = cfg.domain_lo, len = cfg.domain_hi - cfg.domain_lo;
    for (std::size_t k = mesh.first_interior(); k < mesh.end_interior(); ++k)
        e[k] = cfg.endpoint_amplitude *
               (1.0 + cfg.endpoint_modulation * std::cos(std::numbers::pi * (mesh.cell_center(k) - lo) / len));
    return exterior_extend(e, mesh, problem.kernel(), problem.p);
}

}  // namespace fracneum
