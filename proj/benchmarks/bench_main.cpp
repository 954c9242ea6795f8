#include <benchmark/benchmark.h>

#include <spdc/filters.hpp>
#include <spdc/metrics.hpp>
#include <spdc/schmidt.hpp>
#include <spdc/setup.hpp>
#include <spdc/units.hpp>

namespace {

const spdc::Source& source() {
  static const spdc::Source src = [] {
    spdc::SourceParameters p;
    p.cut_detuning = spdc::units::deg(1.5);
    return spdc::make_source(spdc::load_crystal("bbo"), p);
  }();
  return src;
}

spdc::MetricsOptions options(std::size_t n) {
  spdc::MetricsOptions o;
  o.grid_resolution = n;
  o.check_convergence = false;
  return o;
}

void BM_JsaGrid(benchmark::State& state) {
  const auto& src = source();
  const auto spec = spdc::filter_grid(src.filters, src.geometry, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spdc::jsa_grid(spec, src.geometry, src.crystal));
}
BENCHMARK(BM_JsaGrid)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_SchmidtPurity(benchmark::State& state) {
  const auto& src = source();
  const auto grid = spdc::jsa_grid(
      spdc::filter_grid(src.filters, src.geometry, static_cast<std::size_t>(state.range(0))), src.geometry,
      src.crystal);
  for (auto _ : state) benchmark::DoNotOptimize(spdc::schmidt_purity(grid));
}
BENCHMARK(BM_SchmidtPurity)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_PairRate(benchmark::State& state) {
  const auto& src = source();
  const auto opts = options(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spdc::pair_rate(src.geometry, src.crystal, src.filters, opts));
}
BENCHMARK(BM_PairRate)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_SinglesRate(benchmark::State& state) {
  const auto& src = source();
  auto opts = options(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(spdc::singles_rate(spdc::Photon::signal, src.geometry, src.crystal, src.filters, opts));
}
BENCHMARK(BM_SinglesRate)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_SinglesRateWalkOff(benchmark::State& state) {
  const auto& src = source();
  auto opts = options(201);
  opts.jsa.walk_off = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(spdc::singles_rate(spdc::Photon::signal, src.geometry, src.crystal, src.filters, opts));
}
BENCHMARK(BM_SinglesRateWalkOff)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
