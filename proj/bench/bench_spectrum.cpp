// OpenMP full_spectrum against the serial reference.

#include "cyclap/spectrum.hpp"

#include <benchmark/benchmark.h>

using namespace cyclap;

namespace {

template <bool Parallel>
void BM_full_spectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PrecisionContext ctx(static_cast<int>(state.range(1)));
  const ProblemInstance inst(AlphaParam::parse("1/3", ctx), n);
  const auto method = static_cast<SpectrumMethod>(state.range(2));
  for (auto _ : state) {
    SpectrumResult r = Parallel ? full_spectrum(inst, method, ctx, ctx.default_tol())
                                : full_spectrum_serial(inst, method, ctx, ctx.default_tol());
    benchmark::DoNotOptimize(r.lambdas.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void args(benchmark::internal::Benchmark* b) {
  for (int method : {static_cast<int>(SpectrumMethod::newton),
                     static_cast<int>(SpectrumMethod::bisection)}) {
    for (int bits : {256, 3322}) {
      for (int n : {64, 512}) b->Args({n, bits, method});
    }
  }
  b->ArgNames({"n", "bits", "method"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_full_spectrum<true>)->Name("full_spectrum/parallel")->Apply(args);
BENCHMARK(BM_full_spectrum<false>)->Name("full_spectrum/serial")->Apply(args);

BENCHMARK_MAIN();
