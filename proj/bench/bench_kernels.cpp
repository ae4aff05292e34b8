#include <benchmark/benchmark.h>

#include "icisim/equilibrium.hpp"
#include "icisim/sampling.hpp"

using namespace icisim;

namespace {

NetworkModel ring_model() {
    const double w = 2.0 * kPi * 50.0;
    const double c[] = {1.0e-3, 1.2e-3, 1.1e-3, 2.5e-3, 4.4e-3};
    const double g[] = {0.10, 0.09, 0.12, 0.12, 0.18};
    const double v[] = {1000.0, 900.0, 800.0, 1200.0, 1500.0};
    std::vector<InverterParams> inverters;
    for (int i = 0; i < 5; ++i) inverters.push_back({c[i], g[i], v[i], w});
    GridTopology grid(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {0.08, 0.15, 0.08, 0.13, 0.10},
                      {300.7, 298.8, 299.7, 301.0, 300.3});
    return NetworkModel(std::move(grid), inverters, w);
}

struct Fixture {
    NetworkModel model = ring_model();
    ShiftedEnergy energy = make_energy(model);
    std::vector<Vec> draws = draw_perturbations(energy.anchor(), Neighborhood{}, 100000, 20180101);

    static ShiftedEnergy make_energy(const NetworkModel& m) {
        Vec loads(5), cost(5);
        loads << 11e3, 12.5e3, 14.85e3, 16e3, 27.5e3;
        cost << 0.056, 0.028, 0.019, 0.014, 0.011;
        return ShiftedEnergy::secondary(equilibrium_secondary(loads, cost, m), m);
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

template <PositivityReport (*Kernel)(const ShiftedEnergy&, std::span<const Vec>)>
void positivity(benchmark::State& state) {
    const Fixture& f = fixture();
    const std::span<const Vec> draws(f.draws.data(), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(f.energy, draws));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(positivity<certify_positive_serial>)->Name("positivity/serial")->RangeMultiplier(10)->Range(100, 100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(positivity<certify_positive_parallel>)->Name("positivity/parallel")->RangeMultiplier(10)->Range(100, 100000)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
