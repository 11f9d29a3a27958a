#include "fracneum/kernels.hpp"

#include <cstddef>
#include <vector>

#include "fracneum/errors.hpp"

namespace fracneum::kernels {

double pow_increment(double a, double d, double p) {
    if (d == 0.0) return 0.0;
    if (p == 2.0) return 0.5 * d * (2.0 * a + d);
    const double b = a + d;
    if ((a > 0.0 && b > 0.0) || (a < 0.0 && b < 0.0)) {
        const double rel = (a > 0.0 ? d : -d) / std::abs(a);
        return std::pow(std::abs(a), p) * std::expm1(p * std::log1p(rel)) / p;
    }
    return (std::pow(std::abs(b), p) - std::pow(std::abs(a), p)) / p;
}

namespace {

void check(const KernelWeights& w, std::size_t size) {
    if (size != w.n_cells()) throw BindingError("kernel: vector length does not match the weights");
}

// Row partials of the upper triangle; identical loop bodies for both variants.
inline double seminorm_row(const KernelWeights& w, std::span<const double> u, double p, std::size_t i) {
    const auto row = w.coupling_row(i);
    double s = 0.0;
    for (std::size_t j = i + 1; j < row.size(); ++j)
        if (row[j] != 0.0) s += row[j] * abs_pow(u[i] - u[j], p);
    return s;
}

inline double gradient_row(const KernelWeights& w, std::span<const double> u, double p, std::size_t k) {
    const auto row = w.coupling_row(k);
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0.0) s += row[j] * jp(u[k] - u[j], p);
    return s;
}

inline double pairing_row(const KernelWeights& w, std::span<const double> u, std::span<const double> v, double p,
                          std::size_t i) {
    const auto row = w.coupling_row(i);
    double s = 0.0;
    for (std::size_t j = i + 1; j < row.size(); ++j)
        if (row[j] != 0.0) s += row[j] * jp(u[i] - u[j], p) * (v[i] - v[j]);
    return s;
}

inline double increment_row(const KernelWeights& w, std::span<const double> u, std::span<const double> step,
                            double p, std::size_t i) {
    const auto row = w.coupling_row(i);
    double s = 0.0;
    for (std::size_t j = i + 1; j < row.size(); ++j)
        if (row[j] != 0.0) s += row[j] * pow_increment(u[i] - u[j], step[i] - step[j], p);
    return s;
}

double ordered_sum(const std::vector<double>& partial) {
    double total = 0.0;
    for (double x : partial) total += x;
    return total;
}

}  // namespace

namespace serial {

double seminorm(const KernelWeights& w, std::span<const double> u, double p) {
    check(w, u.size());
    std::vector<double> partial(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) partial[i] = seminorm_row(w, u, p, i);
    return 2.0 * ordered_sum(partial);
}

void gradient(const KernelWeights& w, std::span<const double> u, double p, std::span<double> out) {
    check(w, u.size());
    check(w, out.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = gradient_row(w, u, p, k);
}

double pairing(const KernelWeights& w, std::span<const double> u, std::span<const double> v, double p) {
    check(w, u.size());
    check(w, v.size());
    std::vector<double> partial(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) partial[i] = pairing_row(w, u, v, p, i);
    return ordered_sum(partial);
}

double increment(const KernelWeights& w, std::span<const double> u, std::span<const double> step, double p) {
    check(w, u.size());
    check(w, step.size());
    std::vector<double> partial(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) partial[i] = increment_row(w, u, step, p, i);
    return ordered_sum(partial);
}

}  // namespace serial

namespace parallel {

double seminorm(const KernelWeights& w, std::span<const double> u, double p) {
    check(w, u.size());
    std::vector<double> partial(u.size());
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) partial[i] = seminorm_row(w, u, p, static_cast<std::size_t>(i));
    return 2.0 * ordered_sum(partial);
}

void gradient(const KernelWeights& w, std::span<const double> u, double p, std::span<double> out) {
    check(w, u.size());
    check(w, out.size());
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = gradient_row(w, u, p, static_cast<std::size_t>(k));
}

double pairing(const KernelWeights& w, std::span<const double> u, std::span<const double> v, double p) {
    check(w, u.size());
    check(w, v.size());
    std::vector<double> partial(u.size());
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) partial[i] = pairing_row(w, u, v, p, static_cast<std::size_t>(i));
    return ordered_sum(partial);
}

double increment(const KernelWeights& w, std::span<const double> u, std::span<const double> step, double p) {
    check(w, u.size());
    check(w, step.size());
    std::vector<double> partial(u.size());
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) partial[i] = increment_row(w, u, step, p, static_cast<std::size_t>(i));
    return ordered_sum(partial);
}

}  // namespace parallel

}  // namespace fracneum::kernels
