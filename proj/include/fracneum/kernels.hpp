#pragma once

#include <cmath>
#include <span>

#include "fracneum/weights.hpp"

/// Pair-sum kernels over the dense coupling matrix.
///
/// Each kernel exists twice: `serial::` is the reference loop nest and
/// `parallel::` splits rows across OpenMP threads. Both accumulate every row in
/// the same order into a per-row partial and reduce the partials in index
/// order, so the two agree bit for bit at any thread count.
namespace fracneum::kernels {

/// J_p(t) = |t|^(p-2) t, with J_p(0) = 0.
inline double jp(double t, double p) {
    if (t == 0.0) return 0.0;
    if (p == 2.0) return t;
    return std::copysign(std::pow(std::abs(t), p - 1.0), t);
}

inline double abs_pow(double t, double p) {
    if (p == 2.0) return t * t;
    return std::pow(std::abs(t), p);
}

/// (|a + d|^p - |a|^p) / p, accurate relative to the result when |d| << |a|.
double pow_increment(double a, double d, double p);

namespace serial {
/// [u]^p_h = 2 sum_{i<j} K_ij |u_i - u_j|^p
double seminorm(const KernelWeights& w, std::span<const double> u, double p);
/// out_k = sum_j K_kj J_p(u_k - u_j)
void gradient(const KernelWeights& w, std::span<const double> u, double p, std::span<double> out);
/// sum_{i<j} K_ij J_p(u_i - u_j) (v_i - v_j)
double pairing(const KernelWeights& w, std::span<const double> u, std::span<const double> v, double p);
/// sum_{i<j} K_ij (|D'_ij|^p - |D_ij|^p) / p for D = differences of u, D' of u + step
double increment(const KernelWeights& w, std::span<const double> u, std::span<const double> step, double p);
}  // namespace serial

namespace parallel {
double seminorm(const KernelWeights& w, std::span<const double> u, double p);
void gradient(const KernelWeights& w, std::span<const double> u, double p, std::span<double> out);
double pairing(const KernelWeights& w, std::span<const double> u, std::span<const double> v, double p);
double increment(const KernelWeights& w, std::span<const double> u, std::span<const double> step, double p);
}  // namespace parallel

using parallel::gradient;
using parallel::increment;
using parallel::pairing;
using parallel::seminorm;

}  // namespace fracneum::kernels
