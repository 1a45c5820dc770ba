#include <benchmark/benchmark.h>

#include "hycoalg/lyapunov.hpp"
#include "hycoalg/simulator.hpp"
#include "hycoalg/systems.hpp"

using namespace hycoalg;

static void BM_SimulateBallToZeno(benchmark::State& state) {
  const BouncingBall ball(10.0, 0.5);
  const SimConfig cfg{.dt_max = 1e-3, .max_jumps = 10000, .horizon = 100.0};
  for (auto _ : state) {
    auto res = simulate(*ball.coalgebra(), {BouncingBall::kMode, make_vec({1.0, 0.0})}, cfg);
    benchmark::DoNotOptimize(res.execution.intervals.size());
  }
}
BENCHMARK(BM_SimulateBallToZeno)->Unit(benchmark::kMillisecond);

static void BM_SimulateBowl(benchmark::State& state) {
  const LagrangianImpactSystem bowl = make_bowl(1.0, 10.0, 0.5);
  const SimConfig cfg{.dt_max = 1e-3, .max_jumps = 10000, .horizon = 100.0};
  for (auto _ : state) {
    auto res = simulate(*bowl.coalgebra(), {LagrangianImpactSystem::kMode, make_vec({0.5, 1.0, 0.0, 0.0})}, cfg);
    benchmark::DoNotOptimize(res.execution.intervals.size());
  }
}
BENCHMARK(BM_SimulateBowl)->Unit(benchmark::kMillisecond);

static void BM_BallCertificateCheck(benchmark::State& state) {
  const BouncingBall ball(10.0, 0.5);
  CertificateConfig cfg = ball.certificate_config();
  cfg.run_empirical = state.range(0) != 0;
  for (auto _ : state) {
    auto r = check_certificate(*ball.coalgebra(), ball.certificate(), cfg);
    benchmark::DoNotOptimize(r.pass);
  }
}
BENCHMARK(BM_BallCertificateCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_LocateEvent(benchmark::State& state) {
  const BouncingBall ball(10.0, 0.5);
  const Guard& guard = ball.hybrid()->edges().front().guard;
  // Ballistic segment from height 1 at rest, crossing the floor near t = 0.447.
  const double t0 = 0.4, t1 = 0.5, g = 10.0;
  auto at = [&](double t) { return make_vec({1.0 - 0.5 * g * t * t, -g * t}); };
  const numeric::HermiteSegment seg{t0, t1, at(t0), at(t1), make_vec({-g * t0, -g}), make_vec({-g * t1, -g})};
  const SimConfig cfg;
  for (auto _ : state) {
    auto loc = locate_event(seg, guard, cfg);
    benchmark::DoNotOptimize(loc.t);
  }
}
BENCHMARK(BM_LocateEvent);
BENCHMARK_MAIN();
