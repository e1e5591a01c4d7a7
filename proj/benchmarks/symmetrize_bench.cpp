#include <sphsym/symmetrize.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

using namespace sphsym;

namespace
{
CapFieldSet tilted()
{
        auto p = std::make_shared<const Profile>(sampled_profile(Dimension(3), RadialGrid(0.2, 0.9, 129),
                                                                 [](double r) { return 1.0 + 0.3 * std::sin(4 * r); }));
        return CapFieldSet(p, DirectionField::constant(3, 0.2, 0.9, normalized(Vec3{0.3, -0.5, 0.8})));
}

void rasterize_set(benchmark::State& state)
{
        const CapFieldSet e = tilted();
        const double h = 1.0 / static_cast<double>(state.range(0));
        for (auto _ : state)
        {
                benchmark::DoNotOptimize(rasterize(e, h).occupied_count());
        }
}
BENCHMARK(rasterize_set)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void spherical(benchmark::State& state)
{
        const VoxelSet v = rasterize(tilted(), 1.0 / static_cast<double>(state.range(0)));
        for (auto _ : state)
        {
                benchmark::DoNotOptimize(spherical_symmetrize(v, 4096).profile.get());
        }
}
BENCHMARK(spherical)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void iterated_circular(benchmark::State& state)
{
        const CapFieldSet e = tilted();
        const double h = 1.0 / static_cast<double>(state.range(0));
        for (auto _ : state)
        {
                benchmark::DoNotOptimize(iterate_circular(e, h, 1024).occupied_count());
        }
}
BENCHMARK(iterated_circular)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
}
