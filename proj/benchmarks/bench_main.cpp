#include <benchmark/benchmark.h>

#include <pigd/pigd.hpp>

namespace {

pigd::InstanceSpec lasso(pigd::Index n, std::size_t blocks) {
  pigd::InstanceSpec s;
  s.kind = pigd::InstanceKind::lasso;
  s.n = n;
  s.reg_lambda = 0.1;
  s.blocks = blocks;
  s.seed = 1;
  return s;
}

void BM_PigdStep(benchmark::State& state) {
  const auto n = static_cast<pigd::Index>(state.range(0));
  const pigd::CompositeProblem p = pigd::make_instance(lasso(n, 1));
  pigd::Rng rng(2);
  const pigd::IterateState s{pigd::gaussian_vector(n, rng), pigd::gaussian_vector(n, rng), 0};
  const double gamma = pigd::gamma_full(0.5, 0.9, p.lipschitz());
  for (auto _ : state) benchmark::DoNotOptimize(pigd::pigd_step(p, s, gamma, 0.5));
}
BENCHMARK(BM_PigdStep)->Arg(50)->Arg(200);

void BM_CyclicEpoch(benchmark::State& state) {
  const pigd::CompositeProblem p = pigd::make_instance(lasso(64, static_cast<std::size_t>(state.range(0))));
  pigd::Rng rng(3);
  const pigd::IterateState s{pigd::gaussian_vector(64, rng), pigd::gaussian_vector(64, rng), 0};
  const auto m = static_cast<pigd::Index>(p.block_count());
  const pigd::Vector gammas = pigd::Vector::Constant(m, 0.5 / p.lipschitz());
  const pigd::Vector betas = pigd::Vector::Constant(m, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(pigd::cyclic_pigd_epoch(p, s, gammas, betas));
}
BENCHMARK(BM_CyclicEpoch)->Arg(1)->Arg(4)->Arg(16);

void BM_SoftThreshold(benchmark::State& state) {
  pigd::Rng rng(4);
  const pigd::Vector v = pigd::gaussian_vector(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(pigd::soft_threshold(v, 0.3));
}
BENCHMARK(BM_SoftThreshold)->Arg(64)->Arg(4096);

void BM_RunPigd(benchmark::State& state) {
  const pigd::CompositeProblem p = pigd::make_instance(lasso(50, 1));
  pigd::ParamSchedule s;
  pigd::RunConfig cfg;
  cfg.max_iters = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(pigd::run_pigd(p, s, pigd::Vector::Zero(50), cfg));
}
BENCHMARK(BM_RunPigd)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
