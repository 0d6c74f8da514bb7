#include <benchmark/benchmark.h>

#include "stagfv/dualflux.hpp"
#include "stagfv/generators.hpp"
#include "stagfv/verify.hpp"

using namespace stagfv;

namespace {

struct TubeFixture {
  ShockTubeCase c;
  Discretization d;
  Solver solver;
  State s;

  explicit TubeFixture(TubeKind kind, int n)
      : c(shock_tube_case(shock_tube_setup(), kind, n)),
        d(c.mesh),
        solver(d, c.config, c.bcs),
        s(solver.initialize(c.init)) {
    // leave the initial discontinuity so that every kernel branch is live
    for (int i = 0; i < 20; ++i) solver.step(s, solver.stable_dt(s));
  }
};

TubeKind kind_of(int64_t i) {
  return i == 0 ? TubeKind::Prism : i == 1 ? TubeKind::Pyramid : TubeKind::Hybrid;
}

void set_labels(benchmark::State& st, const TubeFixture& f) {
  st.SetLabel(std::string(to_string(kind_of(st.range(0)))));
  st.counters["cells"] = static_cast<double>(f.d.num_cells());
  st.SetItemsProcessed(st.iterations() * f.d.num_cells());
}

}  // namespace

static void BM_DualReconstruction(benchmark::State& st) {
  const CellKind k = static_cast<CellKind>(st.range(0));
  std::vector<double> f(static_cast<std::size_t>(face_count(k)));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 0.1 * static_cast<double>(i) - 0.2;
  for (auto _ : st) {
    CellFluxes c = reconstruct_dual_fluxes(k, f);
    benchmark::DoNotOptimize(c.dual.data());
  }
  st.SetLabel(std::string(to_string(k)));
}
BENCHMARK(BM_DualReconstruction)->DenseRange(0, 5);

static void BM_MassFluxes(benchmark::State& st) {
  TubeFixture f(kind_of(st.range(0)), 5);
  FluxField fl;
  for (auto _ : st) {
    fl = primal_mass_fluxes(f.d, f.s, FaceScheme::MusclMinmod, &f.solver.closure());
    reconstruct_dual_fluxes(f.d, fl);
    benchmark::DoNotOptimize(fl.dual.data());
  }
  set_labels(st, f);
}
BENCHMARK(BM_MassFluxes)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_MomentumTerms(benchmark::State& st) {
  TubeFixture f(kind_of(st.range(0)), 5);
  const FluxField& fl = f.solver.last_fluxes();
  MomentumTerms out;
  for (auto _ : st) {
    momentum_terms(f.d, fl, f.s.u, FaceScheme::Upwind, f.s.p, &f.solver.closure(), f.c.config.nu, out);
    benchmark::DoNotOptimize(out.convection.data());
  }
  set_labels(st, f);
}
BENCHMARK(BM_MomentumTerms)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_SolverStep(benchmark::State& st) {
  TubeFixture f(kind_of(st.range(0)), 5);
  const double dt = f.solver.stable_dt(f.s);
  for (auto _ : st) {
    State s = f.s;
    f.solver.step(s, dt);
    benchmark::DoNotOptimize(s.rho.data());
  }
  set_labels(st, f);
}
BENCHMARK(BM_SolverStep)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
