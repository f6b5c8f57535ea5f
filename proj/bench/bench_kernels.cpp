#include <random>

#include <benchmark/benchmark.h>

#include "mcesr/kernels.h"

namespace {

using namespace mcesr;

MarketModel bench_market(int n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> z(0.0, 1.0);
    MatrixXd f(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) f(i, j) = z(rng);
    }
    MatrixXd sigma = 0.002 * (f * f.transpose() / n + MatrixXd::Identity(n, n));
    VectorXd mu(n);
    for (int i = 0; i < n; ++i) mu(i) = 0.01 + 0.004 * z(rng);
    return MarketModel::from_moments(mu, sigma);
}

struct Setup {
    MarketModel model = bench_market(10);
    RateInterval interval{0.0, 0.9 * std::max(model.gmv_return(), 1e-4)};
};

const Setup& setup() {
    static const Setup s;
    return s;
}

template <auto Kernel>
void ce_grid(benchmark::State& state) {
    const auto& s = setup();
    const auto rates = kernels::linspace(s.interval.r1(), s.interval.r2(), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(s.model, s.interval, rates));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void qp_grid(benchmark::State& state) {
    const auto& s = setup();
    const auto rates = kernels::linspace(s.interval.r1(), s.interval.r2(), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(s.model, rates));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void discrete_ce(benchmark::State& state) {
    const auto& s = setup();
    const auto rates = kernels::linspace(s.interval.r1(), s.interval.r2(), static_cast<int>(state.range(0)));
    const auto portfolios = kernels::solve_no_short_grid(s.model, rates);
    std::vector<double> returns, risks;
    for (const auto& p : portfolios) {
        returns.push_back(p.expected_return);
        risks.push_back(p.risk);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(returns, risks, rates));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(ce_grid<kernels::reference::average_cross_efficiency_grid>)->Name("ce_grid/serial")->Arg(100000);
BENCHMARK(ce_grid<kernels::average_cross_efficiency_grid>)->Name("ce_grid/parallel")->Arg(100000);
BENCHMARK(qp_grid<kernels::reference::solve_no_short_grid>)->Name("qp_grid/serial")->Arg(1001);
BENCHMARK(qp_grid<kernels::solve_no_short_grid>)->Name("qp_grid/parallel")->Arg(1001);
BENCHMARK(discrete_ce<kernels::reference::discrete_cross_efficiency>)->Name("discrete_ce/serial")->Arg(2001);
BENCHMARK(discrete_ce<kernels::discrete_cross_efficiency>)->Name("discrete_ce/parallel")->Arg(2001);

BENCHMARK_MAIN();
