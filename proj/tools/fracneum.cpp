#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracneum/config.hpp"
#include "fracneum/critical.hpp"
#include "fracneum/errors.hpp"
#include "fracneum/io.hpp"
#include "fracneum/parallel.hpp"
#include "fracneum/propcheck.hpp"
#include "fracneum/spectrum.hpp"
#include "fracneum/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fracneum;

namespace {

enum Exit : int { Ok = 0, BadConfig = 1, BadGeometry = 2, Unconverged = 3 };

struct Flags {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "config file (section.key = value)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--seed", f.seed, "overrides the config seed");
    cmd->add_option("--threads", f.threads, "OpenMP threads (else FRACNEUM_THREADS)");
}

std::ofstream open_out(const Flags& f, const std::string& name) {
    std::ofstream os(fs::path(f.out) / name);
    if (!os) throw ConfigError("--out: cannot write '" + (fs::path(f.out) / name).string() + "'");
    return os;
}

RunConfig prepare(const Flags& f) {
    RunConfig cfg = load_config(f.config);
    if (f.seed) apply_seed(cfg, *f.seed);
    configure_threads(f.threads);
    fs::create_directories(f.out);
    return cfg;
}

json report_json(const CriticalPointReport& r, const ProblemConfig& problem) {
    json j;
    j["kind"] = to_string(r.kind);
    j["p"] = problem.p;
    j["s"] = problem.s;
    j["lambda"] = problem.lambda;
    j["n_interior"] = problem.grid().n_interior();
    j["energy"] = r.energy;
    j["grad_norm"] = r.grad_norm;
    j["cerami_measure"] = r.cerami_measure;
    j["neumann_residual"] = r.neumann_residual;
    j["sign_class"] = to_string(r.sign_class);
    j["min_value"] = r.min_value;
    j["max_value"] = r.max_value;
    j["cone_bracket"] = r.cone_bracket ? json(*r.cone_bracket) : json(nullptr);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["message"] = r.message;
    if (!r.energy_history.empty()) j["energy_history"] = r.energy_history;
    if (!r.path_max_history.empty()) {
        j["path_max_history"] = r.path_max_history;
        j["precheck_radius"] = r.precheck_radius;
        j["precheck_ring_min"] = r.precheck_ring_min;
    }
    return j;
}

void write_report(const Flags& f, const std::string& stem, const CriticalPointReport& r, const ProblemConfig& problem) {
    open_out(f, "report" + stem + ".json") << report_json(r, problem).dump(2) << '\n';
    auto csv = open_out(f, "solution" + stem + ".csv");
    write_grid_function(csv, problem.grid(), r.u);
}

int cmd_mesh(const Flags& f) {
    const RunConfig cfg = prepare(f);
    const DomainMesh mesh = build_domain_mesh(cfg);
    const KernelWeights w = assemble_weights(mesh, cfg.p, cfg.s);
    auto os = open_out(f, "mesh.txt");
    write_mesh(os, mesh, w);
    std::cout << "cells " << mesh.size() << ", alpha " << format_double(w.alpha()) << ", tail fraction "
              << format_double(w.tail_fraction()) << '\n';
    return Ok;
}

int cmd_eigs(const Flags& f) {
    const RunConfig cfg = prepare(f);
    if (cfg.p != 2.0) throw UnsupportedModeError("problem.p: eigs needs p = 2");
    const DomainMesh mesh = build_domain_mesh(cfg);
    const KernelWeights w = assemble_weights(mesh, cfg.p, cfg.s);
    const auto pairs = eig_p2(mesh, w, cfg.eig_count);
    auto os = open_out(f, "eigenvalues.csv");
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        os << m + 1 << ", " << format_double(pairs[m].lambda) << '\n';
        char name[32];
        std::snprintf(name, sizeof name, "eigvec_%03zu.csv", m + 1);
        auto vs = open_out(f, name);
        write_grid_function(vs, mesh, pairs[m].phi);
    }
    return Ok;
}

int cmd_solve(const Flags& f) {
    const RunConfig cfg = prepare(f);
    const ProblemConfig problem = build_problem(cfg);
    const GridFunction e = build_endpoint(cfg, problem);
    GridFunction minus_e = e;
    for (auto& v : minus_e.values()) v = -v;
    const CriticalPointReport plus = mountain_pass(e, FunctionalKind::EPlus, problem, cfg.mountain);
    write_report(f, "_plus", plus, problem);
    const CriticalPointReport minus = mountain_pass(minus_e, FunctionalKind::EMinus, problem, cfg.mountain);
    write_report(f, "_minus", minus, problem);
    std::cout << "E_PLUS  " << to_string(plus.sign_class) << " energy " << format_double(plus.energy) << " grad_norm "
              << format_double(plus.grad_norm) << (plus.converged ? "" : " (unconverged)") << '\n';
    std::cout << "E_MINUS " << to_string(minus.sign_class) << " energy " << format_double(minus.energy)
              << " grad_norm " << format_double(minus.grad_norm) << (minus.converged ? "" : " (unconverged)") << '\n';
    return plus.converged && minus.converged ? Ok : Unconverged;
}

int cmd_minimize(const Flags& f) {
    const RunConfig cfg = prepare(f);
    const ProblemConfig problem = build_problem(cfg);
    const CriticalPointReport r =
        minimize(GridFunction::zeros(problem.grid()), FunctionalKind::I, problem, cfg.descent);
    write_report(f, "", r, problem);
    std::cout << "I energy " << format_double(r.energy) << " grad_norm " << format_double(r.grad_norm)
              << (r.converged ? "" : " (unconverged)") << '\n';
    return r.converged ? Ok : Unconverged;
}

int cmd_verify(const Flags& f) {
    const RunConfig cfg = prepare(f);
    const json result = run_verify_suite(cfg.verify);
    open_out(f, "verify.json") << result.dump(2) << '\n';
    for (const auto& [name, suite] : result.at("suites").items())
        std::cout << (suite.at("passed").get<bool>() ? "[PASS] " : "[FAIL] ") << name << '\n';
    return result.at("passed").get<bool>() ? Ok : Unconverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional p-Laplacian with nonlocal Neumann conditions on 1-D domains"};
    app.require_subcommand(1);
    Flags flags;
    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Flags&);
    };
    const Command commands[] = {
        {"mesh", "write the mesh and pair weights", cmd_mesh},
        {"eigs", "p = 2 eigenpairs", cmd_eigs},
        {"solve", "mountain-pass search on E_PLUS and E_MINUS", cmd_solve},
        {"minimize", "descent on I from u = 0", cmd_minimize},
        {"verify", "property and invariant suites", cmd_verify},
    };
    for (const auto& c : commands) add_flags(app.add_subcommand(c.name, c.help), flags);
    CLI11_PARSE(app, argc, argv);

    const Command* chosen = nullptr;
    for (const auto& c : commands)
        if (app.got_subcommand(c.name)) chosen = &c;
    try {
        return chosen->run(flags);
    } catch (const GeometryError& e) {
        std::cerr << "critical: " << e.what() << '\n';
        for (std::size_t i = 0; i < e.radii().size(); ++i)
            std::cerr << "  radius " << format_double(e.radii()[i]) << " ring min "
                      << format_double(e.ring_minima()[i]) << '\n';
        return BadGeometry;
    } catch (const ConnectivityError& e) {
        std::cerr << "neumann: " << e.what() << '\n';
        return BadGeometry;
    } catch (const DivergenceError& e) {
        std::cerr << "critical: " << e.what() << '\n';
        return Unconverged;
    } catch (const ParameterError& e) {
        std::cerr << "config: " << e.what() << '\n';
        return BadConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadConfig;
    }
}
