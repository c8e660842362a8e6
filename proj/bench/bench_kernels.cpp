// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "cansym/catalog.hpp"
#include "cansym/geodesics.hpp"
#include "cansym/numeric_residual.hpp"
#include "cansym/solver.hpp"
#include "cansym/sweep.hpp"

using namespace cansym;

namespace {

std::vector<ParamMap> a45_grid() {
  std::vector<Rational> values;
  for (long k = -4; k <= 4; ++k)
    if (k != 0) values.push_back(make_rational(k, 4));
  return grid_product({{"a", values}, {"b", values}});
}

RatMatrix a45(const ParamMap& p) {
  return RatMatrix::diagonal({p.at("a"), p.at("b"), make_rational(1)});
}

template <class Sweep>
void run_sweep(benchmark::State& state, Sweep fn) {
  const auto grid = a45_grid();
  for (auto _ : state) benchmark::DoNotOptimize(fn(a45, grid));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid.size()));
}

void BM_sweep(benchmark::State& s) { run_sweep(s, sweep); }
void BM_sweep_serial(benchmark::State& s) { run_sweep(s, sweep_serial); }

struct ResidualFixture {
  GeodesicSystem sys;
  std::vector<VectorField> fields;
};

const ResidualFixture& residual_fixture() {
  static const ResidualFixture f = [] {
    const RatMatrix a = RatMatrix::diagonal({make_rational(1), make_rational(-1), make_rational(1)});
    return ResidualFixture{GeodesicSystem::codim_one(a), solve(a).fields()};
  }();
  return f;
}

template <class Residual>
void run_residual(benchmark::State& state, Residual fn) {
  const auto& f = residual_fixture();
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    for (const auto& x : f.fields) benchmark::DoNotOptimize(fn(x, f.sys, samples, kDefaultSeed));
}

void BM_numeric_residual(benchmark::State& s) { run_residual(s, numeric_residual); }
void BM_numeric_residual_serial(benchmark::State& s) { run_residual(s, numeric_residual_serial); }

template <class Batch>
void run_batch(benchmark::State& state, Batch fn) {
  const auto& f = residual_fixture();
  std::vector<ScalarExpr> exprs;
  for (const auto& x : f.fields) {
    exprs.push_back(x.xi);
    for (const auto& e : x.eta) exprs.push_back(e);
  }
  const auto points = sample_points(f.sys, static_cast<std::size_t>(state.range(0)), kDefaultSeed);
  for (auto _ : state) benchmark::DoNotOptimize(fn(exprs, points));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * points.size()));
}

void BM_evaluate_batch(benchmark::State& s) { run_batch(s, evaluate_batch); }
void BM_evaluate_batch_serial(benchmark::State& s) { run_batch(s, evaluate_batch_serial); }

template <class Batch>
void run_rk4(benchmark::State& state, Batch fn) {
  const RatMatrix a{{make_rational(1), make_rational(1), 0}, {0, make_rational(1, 2), 0}, {0, 0, make_rational(-1)}};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  std::vector<GeodesicState> inits(static_cast<std::size_t>(state.range(0)));
  for (auto& s : inits) {
    s.x = Eigen::Vector3d(box(rng), box(rng), box(rng));
    s.u = Eigen::Vector3d(box(rng), box(rng), box(rng));
    s.w = box(rng);
    s.q = box(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fn(a, inits, 2.0, 2000));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * inits.size()));
}

void BM_rk4_batch(benchmark::State& s) { run_rk4(s, rk4_batch); }
void BM_rk4_batch_serial(benchmark::State& s) { run_rk4(s, rk4_batch_serial); }

template <class Verify>
void run_catalog(benchmark::State& state, Verify fn) {
  for (auto _ : state) benchmark::DoNotOptimize(fn(VerifyOptions{}));
}

void BM_verify_catalog(benchmark::State& s) { run_catalog(s, verify_catalog); }
void BM_verify_catalog_serial(benchmark::State& s) { run_catalog(s, verify_catalog_serial); }

}  // namespace

BENCHMARK(BM_sweep)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_numeric_residual)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_numeric_residual_serial)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_batch)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_batch_serial)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rk4_batch)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rk4_batch_serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_catalog)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_catalog_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
