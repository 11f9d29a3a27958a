#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "fracneum/critical.hpp"
#include "fracneum/energy.hpp"
#include "fracneum/mesh.hpp"
#include "fracneum/propcheck.hpp"

namespace fracneum {

/// Everything a CLI run reads from its config file. Keys are `section.key`;
/// see FORMATS.md for the full list and defaults.
struct RunConfig {
    double p = 2.0;
    double s = 0.5;
    double lambda = 0.0;

    double domain_lo = 0.0;
    double domain_hi = 1.0;

    std::size_t n_interior = 100;
    std::size_t n_exterior = 20;
    double collar_radius = 1.0;
    Grading grading = Grading::uniform();

    std::string nonlinearity = "pure_power";
    double kappa = 1.0;
    double q = 4.0;
    double epsilon = 0.0;
    double q_low = 3.0;
    double gamma = 1.0;
    double f0_mean = 0.0;
    double f0_amplitude = 1.0;

    DescentOptions descent{};
    MountainPassOptions mountain{};

    std::size_t eig_count = 10;

    /// Mountain-pass endpoint e(x) = amplitude (1 + modulation cos(pi (x - lo) / (hi - lo))).
    double endpoint_amplitude = 3.0;
    double endpoint_modulation = 0.3;

    VerifyOptions verify{};

    std::uint64_t seed = 42;
};

/// Parses `section.key = value` lines; `#` starts a comment. Unknown keys,
/// duplicate keys and malformed values throw ConfigError naming the key.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);

/// Applies a seed to every seeded component.
void apply_seed(RunConfig& cfg, std::uint64_t seed);

/// f0(x) = f0_mean + f0_amplitude cos(pi (x - lo) / (hi - lo)).
SpaceFunction source_term(const RunConfig& cfg);

Nonlinearity build_nonlinearity(const RunConfig& cfg);
DomainMesh build_domain_mesh(const RunConfig& cfg);
ProblemConfig build_problem(const RunConfig& cfg);

/// The mountain-pass endpoint on the problem mesh, exterior-extended.
GridFunction build_endpoint(const RunConfig& cfg, const ProblemConfig& problem);

}  // namespace fracneum
