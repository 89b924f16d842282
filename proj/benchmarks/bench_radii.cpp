#include <benchmark/benchmark.h>

#include "bohr/extremal.hpp"
#include "bohr/functionals.hpp"
#include "bohr/radii.hpp"
#include "bohr/series.hpp"
#include "bohr/verify.hpp"

namespace {

void BM_SolveClassical(benchmark::State& state) {
  const bohr::AnalyticInstance inst(1.0, bohr::WeightSeq::Monomial(),
                                    bohr::WeightSeq::Zero());
  const auto spec = bohr::make_generalized_residual(inst);
  for (auto _ : state) {
    auto res = bohr::solve_min_root(spec);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_SolveClassical);

void BM_SolveRefined(benchmark::State& state) {
  const bohr::AnalyticInstance inst(1.0, bohr::WeightSeq::Monomial(),
                                    bohr::WeightSeq::RefinedWeight(0.5));
  const auto spec = bohr::make_generalized_residual(inst);
  for (auto _ : state) {
    auto res = bohr::solve_min_root(spec);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_SolveRefined);

void BM_SolveHarmonic(benchmark::State& state) {
  const auto spec = bohr::make_harmonic_residual(
      bohr::HarmonicInstance(0.3, 2, 3, 1.0, 1.0));
  for (auto _ : state) {
    auto res = bohr::solve_min_root(spec);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_SolveHarmonic);

void BM_Table1(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? bohr::SumMode::kPaperPrinted
                                        : bohr::SumMode::kVerifiedSeries;
  for (auto _ : state) {
    auto table = bohr::table1(mode);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_Table1)->Arg(0)->Arg(1);

void BM_EvalCfProduct(benchmark::State& state) {
  const auto coeffs =
      bohr::CoeffSeq::BlaschkeProduct({0.5, -0.3, 0.7, 0.85, -0.6});
  const bohr::AnalyticInstance inst(1.0, bohr::WeightSeq::Monomial(),
                                    bohr::WeightSeq::RefinedWeight(0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bohr::eval_Cf(coeffs, inst, 0.3));
  }
}
BENCHMARK(BM_EvalCfProduct);

void BM_SumWeights(benchmark::State& state) {
  const auto seq = bohr::WeightSeq::PowerWeighted(3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bohr::sum_weights(seq, 0.9, 2, 1e-14));
  }
}
BENCHMARK(BM_SumWeights);

void BM_BlaschkeExpansion(benchmark::State& state) {
  const std::vector<double> zeros{0.5, -0.3, 0.7, 0.85, -0.6, 0.2, -0.9, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bohr::blaschke_series(zeros,
                                                   bohr::kBlaschkeHorizon));
  }
}
BENCHMARK(BM_BlaschkeExpansion);

void BM_SharpnessProbe(benchmark::State& state) {
  const auto probe = bohr::classical_probe();
  for (auto _ : state) {
    auto rep = bohr::sharpness_probe(probe, 1.0 / 3.0, 1e-3,
                                     probe.default_grid);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_SharpnessProbe);

void BM_VerifySuite(benchmark::State& state) {
  for (auto _ : state) {
    auto suite = bohr::run_suite(42, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(suite);
  }
}
BENCHMARK(BM_VerifySuite)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
