#include <benchmark/benchmark.h>

#include <memory>

#include "ridgekit/harness.hpp"

using namespace ridgekit;

namespace {

std::shared_ptr<RidgeletProfile> profile() {
    static auto pr = std::make_shared<RidgeletProfile>(1.0, 2.0);
    return pr;
}

void bm_psi_eval(benchmark::State& state) {
    auto pr = profile();
    double s = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pr->psi(s));
        s += 0.37;
        if (s > 150.0) s -= 150.0;
    }
}
BENCHMARK(bm_psi_eval);

void bm_slice_coefficient(benchmark::State& state) {
    auto pr = profile();
    const TargetFunction g = gaussian_target(1);
    const double b = static_cast<double>(state.range(0));
    const double a[1] = {1.3};
    std::complex<double> out;
    for (auto _ : state) {
        ridgelet_coefficient(*pr, g, a, b, &out);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(bm_slice_coefficient)->Arg(0)->Arg(20)->Arg(200);

void bm_direct_transform(benchmark::State& state) {
    auto pr = profile();
    const TargetFunction g = gaussian_target(1);
    const double a[1] = {1.3};
    std::complex<double> out;
    for (auto _ : state) {
        ridgelet_transform_direct(*pr, g, a, 0.4, &out);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(bm_direct_transform);

void bm_network_eval(benchmark::State& state) {
    auto pr = profile();
    const AdmissiblePair pair = make_admissible_pair(pr, Activation::tanh, 1);
    const TargetFunction g = gaussian_target(1);
    StudentTSampler sampler(1, 1u);
    const Network net =
        build_network(pair, g, static_cast<int>(state.range(0)), sampler);
    const double u[1] = {0.5};
    for (auto _ : state) benchmark::DoNotOptimize(network_eval(net, u));
}
BENCHMARK(bm_network_eval)->Arg(64)->Arg(1024)->Arg(4096);

void bm_draw_neuron(benchmark::State& state) {
    auto pr = profile();
    const AdmissiblePair pair = make_admissible_pair(pr, Activation::tanh, 1);
    const TargetFunction g = gaussian_target(1);
    StudentTSampler sampler(1, 2u);
    for (auto _ : state) benchmark::DoNotOptimize(draw_neuron(pair, g, sampler));
}
BENCHMARK(bm_draw_neuron);

void bm_pairing_check(benchmark::State& state) {
    const TestFunction t = bump_test(1.0, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(pairing_check(activation(Activation::tanh), t));
}
BENCHMARK(bm_pairing_check)->Unit(benchmark::kMillisecond);

void bm_weighted_sobolev_norm(benchmark::State& state) {
    const TargetFunction g = gaussian_target(1);
    const Domain U = Domain::truncated(1, 8.0);
    const WeightSpec w = WeightSpec::gaussian_w(0.0, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(weighted_sobolev_norm(g, U, w, 1));
}
BENCHMARK(bm_weighted_sobolev_norm);

} // namespace

BENCHMARK_MAIN();
