#include "rtc/canonical.hpp"
#include "rtc/forward.hpp"
#include "rtc/generators.hpp"
#include "rtc/map_dsl.hpp"
#include "rtc/reverse.hpp"
#include "rtc/standard_manifolds.hpp"
#include "rtc/suites.hpp"

#include <benchmark/benchmark.h>

using namespace rtc;

namespace {

const SmoothMap& damped() {
  static const SmoothMap f = parse_map("(map 3 1 (* (exp (neg (* x0 x0))) (cos (+ x1 (* 2 x2)))))");
  return f;
}

void BM_ParseMap(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_map("(map 2 2 (* (sin x0) (cos x1)) (exp (* x0 x1)))"));
}
BENCHMARK(BM_ParseMap);

void BM_Eval(benchmark::State& state) {
  std::vector<double> x{0.3, -0.2, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(damped().eval(x));
}
BENCHMARK(BM_Eval);

void BM_BuildD(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(d_combinator(damped()));
}
BENCHMARK(BM_BuildD);

void BM_EvalJvp(benchmark::State& state) {
  SmoothMap d = d_combinator(damped());
  std::vector<double> x{0.3, -0.2, 0.9, 1.0, 0.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(d.eval(x));
}
BENCHMARK(BM_EvalJvp);

void BM_EvalVjp(benchmark::State& state) {
  SmoothMap r = r_combinator(damped());
  std::vector<double> x{0.3, -0.2, 0.9, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(r.eval(x));
}
BENCHMARK(BM_EvalVjp);

void BM_SecondTangent(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tangent2_map(damped()));
}
BENCHMARK(BM_SecondTangent);

void BM_Canonicalize(benchmark::State& state) {
  SmoothMap t = tangent2_map(parse_map("(map 2 3 (* x0 x0) (* x0 x1) (+ x1 (* x1 x1 x1)))"));
  for (auto _ : state) benchmark::DoNotOptimize(to_polynomials(t));
}
BENCHMARK(BM_Canonicalize);

void BM_EtaleDoubleCover(benchmark::State& state) {
  ManifoldMap f = circle_double_cover(circle_atlas());
  for (auto _ : state) benchmark::DoNotOptimize(is_etale(f, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EtaleDoubleCover)->Arg(64)->Arg(512);

void BM_SphereDescent(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sphere_descent_demo());
}
BENCHMARK(BM_SphereDescent)->Unit(benchmark::kMillisecond);

void BM_Suite(benchmark::State& state, const char* name) {
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(name));
}
BENCHMARK_CAPTURE(BM_Suite, forward, "forward")->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK_CAPTURE(BM_Suite, algebra, "algebra")->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
