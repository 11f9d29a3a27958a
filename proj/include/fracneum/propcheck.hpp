#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracneum/energy.hpp"
#include "fracneum/nonlinearity.hpp"

namespace fracneum {

/// Inequalities on the positive/negative parts x+ = max(x,0), x- = max(-x,0):
///   0 negative_part:  |x- - y-|^p <= J_p(x - y) (y- - x-)
///   1 positive_part:  |x+ - y+|^p <= J_p(x - y) (x+ - y+)
///   2 split:          |x - y|^p <= 2^(p-1) (|x+ - y+|^p + |x- - y-|^p)
///   3 contraction:    |x+ - y+| <= |x - y| and |x- - y-| <= |x - y|
/// A sample violates one when rhs - lhs < -1e-12 (1 + |x|^p + |y|^p).
struct InequalitySample {
    double x, y, p;
    std::size_t inequality;
    double slack;
};

struct InequalityReport {
    static constexpr std::array<const char*, 4> names{"negative_part", "positive_part", "split", "contraction"};
    std::size_t samples = 0;
    std::size_t adversarial = 0;
    std::array<std::size_t, 4> violations{};
    std::array<double, 4> worst_slack{};  // most negative normalized slack seen
    std::vector<InequalitySample> first_violations;  // at most 20
    std::size_t total_violations() const { return violations[0] + violations[1] + violations[2] + violations[3]; }
};

/// Half of the samples are uniform (x, y in [-10, 10]); the rest cycle through
/// x = y, x = -y, opposite signs with |x| >> |y|, a zero argument, and
/// magnitudes up to 1e6. p is uniform in [p_lo, p_hi].
InequalityReport check_pointwise_inequalities(std::size_t n_samples, double p_lo, double p_hi, std::uint64_t seed);

enum class HypothesisSet { G, F, Linear };
enum class CheckFlag { Pass, Warn, Fail };

const char* to_string(HypothesisSet set);
const char* to_string(CheckFlag flag);

struct HypothesisCheck {
    std::string name;
    CheckFlag flag = CheckFlag::Pass;
    std::size_t points = 0;
    std::size_t violations = 0;
    std::string note;
};

struct GrowthReport {
    std::string nonlinearity;
    HypothesisSet set = HypothesisSet::G;
    std::vector<HypothesisCheck> checks;
    bool failed() const;
};

/// p*_s in dimension 1: p / (1 - p s) when p s < 1, infinite otherwise.
double critical_exponent(double p, double s);

/// 0 and +-10^k on a logarithmic grid, k in [-6, 6], `per_decade` points per decade.
std::vector<double> log_t_grid(std::size_t per_decade = 8);

/// Pointwise hypotheses are asserted on the grid with the declared constants
/// (slack 1e-12 of the magnitudes involved) and FAIL on a violation. Limit
/// hypotheses are judged by the sampled trend and at worst WARN. With `s`, the
/// growth exponent is also compared against p*_s. Missing metadata throws
/// ConfigError.
GrowthReport check_growth(const Nonlinearity& nl, HypothesisSet set, const std::vector<double>& t_grid,
                          const std::vector<double>& x_samples, std::optional<double> s = std::nullopt);

struct GradientCheck {
    double max_rel_error = 0.0;
    std::size_t compared = 0;
    std::vector<std::size_t> excluded;  // cell indices left out of the comparison
};

/// Central differences against evaluate(kind, .).gradient with step
/// h (1 + |u_k|) in cell k. The two one-sided changes of the value are taken
/// with energy_increment so the difference quotient does not lose digits to
/// the size of the energy. Relative error per component:
/// |fd - g| / max(|g|, 1e-8 max|g|, 1e-300).
/// Excluded: cells whose step crosses a zero of some coupled difference
/// u_k - u_j when p < 2, and interior cells whose step crosses 0 when the
/// local terms have a kink there (p < 2, or E_PLUS / E_MINUS).
GradientCheck check_gradient_fd(FunctionalKind kind, const GridFunction& u, const ProblemConfig& cfg, double h);

struct MonotonicityReport {
    std::size_t pairs = 0;
    std::size_t violations = 0;  // pairing < -1e-12
    double min_pairing = 0.0;
};

/// <A'(u) - A'(v), u - v> with A' the kernel part of the gradient, for random
/// u, v in [-1, 1]^n on the given weights.
MonotonicityReport check_monotonicity(const KernelWeights& w, double p, std::size_t n_pairs, std::uint64_t seed);

struct NeumannInvariantReport {
    std::size_t cases = 0;
    std::size_t weighted_mean_failures = 0;  // p = 2 closed form, 1e-12 (1 + spread)
    std::size_t constant_failures = 0;
    std::size_t comparison_failures = 0;
    std::size_t equivariance_failures = 0;
    double worst_weighted_mean_error = 0.0;
    std::size_t failures() const {
        return weighted_mean_failures + constant_failures + comparison_failures + equivariance_failures;
    }
};

/// Random meshes (4-12 interior cells, 1-3 exterior per side), random p in
/// [1.2, 4] (every third case p = 2), random data.
NeumannInvariantReport check_neumann_invariants(std::size_t n_cases, std::uint64_t seed);

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::size_t inequality_samples = 100000;
    double p_lo = 1.01;
    double p_hi = 10.0;
    std::size_t monotone_pairs = 10000;
    std::size_t neumann_cases = 1000;
    std::size_t n_interior = 12;
};

/// Runs every suite and returns {"passed": bool, "suites": {...}}.
nlohmann::json run_verify_suite(const VerifyOptions& opts);

}  // namespace fracneum
