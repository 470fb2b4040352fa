// Serial reference vs OpenMP assembly, plus the dense solve, on registry cases.
#include <benchmark/benchmark.h>

#include "gffpielm/app.hpp"
#include "gffpielm/lstsq.hpp"

using namespace gffpielm;

namespace {

struct Setup {
  CaseSpec spec;
  CollocationSet colloc;
  FeatureLayer layer;
};

Setup make_setup(const char* name, int neurons, int interior) {
  CaseSpec spec = get_case(name);
  spec.plan.interior = interior;
  spec.plan.per_boundary = interior / 10;
  spec.plan.per_initial = spec.problem.domain.has_time() ? interior / 10 : 0;
  auto colloc = sample_collocation(spec.problem, spec.plan);
  auto layer = FeatureLayer::gff(neurons, spec.problem.domain.input_dim(), spec.delta_min,
                                 spec.delta_max, 1);
  return {std::move(spec), std::move(colloc), std::move(layer)};
}

const char* const kCases[] = {"poisson1d_demo", "wave_multifreq", "advdiff_2d_pacman"};

void BM_Assemble(benchmark::State& state, AssemblyMode mode) {
  const Setup s = make_setup(kCases[state.range(0)], static_cast<int>(state.range(1)),
                             static_cast<int>(2 * state.range(1)));
  for (auto _ : state) {
    auto sys = assemble_system(s.spec.problem, s.layer, s.colloc, mode);
    benchmark::DoNotOptimize(sys.H.data());
  }
  state.SetLabel(kCases[state.range(0)]);
  state.counters["rows"] = static_cast<double>(s.colloc.interior.size());
}

void BM_AssembleSerial(benchmark::State& state) { BM_Assemble(state, AssemblyMode::Serial); }
void BM_AssembleParallel(benchmark::State& state) { BM_Assemble(state, AssemblyMode::Parallel); }

void BM_Solve(benchmark::State& state) {
  const Setup s = make_setup("wave_multifreq", static_cast<int>(state.range(0)),
                             static_cast<int>(2 * state.range(0)));
  const auto sys = assemble_system(s.spec.problem, s.layer, s.colloc);
  for (auto _ : state) {
    auto sol = solve_least_squares(sys.H, sys.Y);
    benchmark::DoNotOptimize(sol.beta.data());
  }
}

void assembly_args(benchmark::internal::Benchmark* b) {
  for (int c = 0; c < 3; ++c)
    for (int m : {200, 800}) b->Args({c, m});
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->Apply(assembly_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->Apply(assembly_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
