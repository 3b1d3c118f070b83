#include "fixtures.hpp"

#include "qdm/entangle.hpp"
#include "qdm/numeric.hpp"
#include "qdm/rabi.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qdm;
using namespace qdm::testing;

namespace {

void BM_Rhs(benchmark::State& state) {
  const auto c = compile(dipole_config(static_cast<int>(state.range(0))));
  std::mt19937_64 rng(1);
  const auto phi = random_state(rng, c.basis.size());
  AmplitudeVector out(phi.size());
  double t = 0.0;
  for (auto _ : state) {
    rhs(c.system, t, phi, out);
    benchmark::DoNotOptimize(out.data());
    t += 1e-18;
  }
  state.counters["basis"] = static_cast<double>(c.basis.size());
  state.counters["terms"] = static_cast<double>(c.system.terms.size());
}
BENCHMARK(BM_Rhs)->Arg(2)->Arg(4)->Arg(8);

void BM_Integrate(benchmark::State& state) {
  const auto c = compile(dipole_config(4));
  AmplitudeVector phi0(c.basis.size());
  phi0[c.basis.index_of(label_a(1, 1))] = 1.0;
  const Method method = state.range(0) == 0 ? Method::euler : Method::rk4;
  const IntegratorSpec spec{method, 5e-18, 1e-14, 100};
  for (auto _ : state) benchmark::DoNotOptimize(integrate(c.system, phi0, spec));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * spec.step_count()));
  state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_Integrate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ImageHamiltonian(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto c = compile(random_config(rng, {3, 3}, 2, 3, false));
  for (auto _ : state) benchmark::DoNotOptimize(image_hamiltonian_matrix(c.config, c.basis, 0.5, false));
}
BENCHMARK(BM_ImageHamiltonian)->Unit(benchmark::kMillisecond);

void BM_ConcurrenceRun(benchmark::State& state) {
  ConcurrenceParams params;
  params.config = concurrence_config();
  params.integrator = IntegratorSpec{Method::rk4, 5e-18, 2e-14, 20};
  params.n_max = 4;
  params.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_run(params));
}
BENCHMARK(BM_ConcurrenceRun)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

// The distribution ships benchmark_main only as an LTO archive built by a
// different compiler release, so the entry point is provided here.
BENCHMARK_MAIN();
