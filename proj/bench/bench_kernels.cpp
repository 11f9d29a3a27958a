#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fracneum/kernels.hpp"
#include "fracneum/mesh.hpp"
#include "fracneum/weights.hpp"

using namespace fracneum;

namespace {

struct Fixture {
    DomainMesh mesh;
    KernelWeights w;
    std::vector<double> u;
};

const Fixture& fixture(std::size_t n) {
    static std::vector<std::pair<std::size_t, Fixture>> cache;
    for (const auto& [k, f] : cache)
        if (k == n) return f;
    DomainMesh mesh = build_mesh(0.0, 1.0, n, n / 4, 1.0);
    KernelWeights w = assemble_weights(mesh, 2.5, 0.5);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> u(mesh.size());
    for (auto& x : u) x = d(rng);
    cache.emplace_back(n, Fixture{std::move(mesh), std::move(w), std::move(u)});
    return cache.back().second;
}

template <bool Parallel>
void seminorm(benchmark::State& st) {
    const auto& f = fixture(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) {
        const double v = Parallel ? kernels::parallel::seminorm(f.w, f.u, 2.5) : kernels::serial::seminorm(f.w, f.u, 2.5);
        benchmark::DoNotOptimize(v);
    }
}

template <bool Parallel>
void gradient(benchmark::State& st) {
    const auto& f = fixture(static_cast<std::size_t>(st.range(0)));
    std::vector<double> out(f.u.size());
    for (auto _ : st) {
        if (Parallel) kernels::parallel::gradient(f.w, f.u, 2.5, out);
        else kernels::serial::gradient(f.w, f.u, 2.5, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void assembly(benchmark::State& st) {
    const DomainMesh mesh = build_mesh(0.0, 1.0, static_cast<std::size_t>(st.range(0)), 8, 1.0);
    for (auto _ : st) {
        KernelWeights w = Parallel ? assemble_weights(mesh, 2.0, 0.4) : serial::assemble_weights(mesh, 2.0, 0.4);
        benchmark::DoNotOptimize(w.coupling(0, 1));
    }
}

}  // namespace

BENCHMARK(seminorm<false>)->Name("seminorm/serial")->Arg(200)->Arg(800);
BENCHMARK(seminorm<true>)->Name("seminorm/parallel")->Arg(200)->Arg(800);
BENCHMARK(gradient<false>)->Name("gradient/serial")->Arg(200)->Arg(800);
BENCHMARK(gradient<true>)->Name("gradient/parallel")->Arg(200)->Arg(800);
BENCHMARK(assembly<false>)->Name("assembly/serial")->Arg(100)->Arg(200);
BENCHMARK(assembly<true>)->Name("assembly/parallel")->Arg(100)->Arg(200);

BENCHMARK_MAIN();
