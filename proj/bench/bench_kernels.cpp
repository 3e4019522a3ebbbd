// Serial reference vs OpenMP kernels on the kite at k = 1.

#include <benchmark/benchmark.h>

#include "fbm/field_eval.hpp"

namespace {

fbm::WaveProblem kite_problem(int N) { return fbm::make_wave_problem(1.0, fbm::BoundaryCurve::kite(), 2.29, N); }

void BM_AssembleSerial(benchmark::State& state) {
  const fbm::WaveProblem p = kite_problem(static_cast<int>(state.range(0)));
  const fbm::QuadratureRule rule = fbm::build_quadrature(p.curve, fbm::default_quadrature_size(p.N));
  for (auto _ : state) benchmark::DoNotOptimize(fbm::assemble_operator_serial(p, rule).matrix.data());
}

void BM_AssembleParallel(benchmark::State& state) {
  const fbm::WaveProblem p = kite_problem(static_cast<int>(state.range(0)));
  const fbm::QuadratureRule rule = fbm::build_quadrature(p.curve, fbm::default_quadrature_size(p.N));
  for (auto _ : state) benchmark::DoNotOptimize(fbm::assemble_operator(p, rule).matrix.data());
}

struct ReportFixture {
  fbm::WaveProblem problem = kite_problem(19);
  fbm::QuadratureRule rule = fbm::build_quadrature(problem.curve, fbm::default_quadrature_size(19));
  fbm::InteriorGrid grid = fbm::build_interior_grid(problem.curve, problem.radii, 100);
  fbm::CoefficientVector c{Eigen::VectorXcd::Ones(problem.num_coefficients())};
  fbm::ExactSolution exact = fbm::plane_wave(1.0, fbm::Point2(0.6, 0.8));
};

void BM_ErrorReportSerial(benchmark::State& state) {
  const ReportFixture f;
  for (auto _ : state) benchmark::DoNotOptimize(fbm::error_report_serial(f.problem, f.c, f.exact, f.grid, f.rule));
}

void BM_ErrorReportParallel(benchmark::State& state) {
  const ReportFixture f;
  for (auto _ : state) benchmark::DoNotOptimize(fbm::error_report(f.problem, f.c, f.exact, f.grid, f.rule));
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->Arg(8)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->Arg(8)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErrorReportSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErrorReportParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
