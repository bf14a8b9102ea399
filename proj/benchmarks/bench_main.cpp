#include <benchmark/benchmark.h>

#include <fc/calculus.hpp>
#include <fc/catalogue.hpp>
#include <fc/cosine.hpp>
#include <fc/measures.hpp>
#include <fc/operator_core.hpp>
#include <fc/symbol_norms.hpp>
#include <fc/transference.hpp>

#include <cmath>

namespace {

void BM_ContourStrip(benchmark::State& st) {
  const auto A = fc::random_diagonalizable(static_cast<int>(st.range(0)), 3);
  const auto f = fc::cosh_pair(2.0, 1.5);
  const double wp = fc::default_omega_prime(A, f);
  for (auto _ : st) benchmark::DoNotOptimize(fc::contour_fc_strip(A, f, wp));
}
BENCHMARK(BM_ContourStrip)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SpectralFc(benchmark::State& st) {
  const auto A = fc::random_diagonalizable(static_cast<int>(st.range(0)), 3);
  const auto sd = fc::spectral_data(A);
  const auto f = fc::cosh_pair(2.0, 1.5);
  for (auto _ : st) benchmark::DoNotOptimize(fc::spectral_fc(sd, f));
}
BENCHMARK(BM_SpectralFc)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_Phillips(benchmark::State& st) {
  const fc::GroupModel g(fc::random_diagonalizable(static_cast<int>(st.range(0)), 5));
  const double w = g.bounds().omega0 + 1.0;
  const auto mu = fc::ExpWeightedMeasure::from_density([](double s) { return std::exp(-s * s); }, w);
  for (auto _ : st) benchmark::DoNotOptimize(fc::phillips_fc(g, mu));
}
BENCHMARK(BM_Phillips)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PvFc(benchmark::State& st) {
  const fc::GroupModel g(fc::random_diagonalizable(4, 7));
  const auto gfun = fc::BVFunction::even_steps({0.0, 0.5, 1.0}, {1.0, 0.25});
  for (auto _ : st) benchmark::DoNotOptimize(fc::pv_fc(g, gfun));
}
BENCHMARK(BM_PvFc)->Unit(benchmark::kMillisecond);

void BM_ConvNorm(benchmark::State& st) {
  const auto mu = fc::ExpWeightedMeasure::from_density([](double s) { return std::exp(-std::abs(s)); }, 0.5);
  auto space = fc::DiscretizedLpSpace::standard(0.5, st.range(0) == 2 ? 2.0 : 4.0);
  for (auto _ : st) benchmark::DoNotOptimize(fc::conv_norm(mu, space));
}
BENCHMARK(BM_ConvNorm)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Hinf1Norm(benchmark::State& st) {
  const auto f = fc::cosh_pair(2.0, 1.5);
  const fc::SampleGrid grid{static_cast<int>(st.range(0)), true};
  for (auto _ : st) benchmark::DoNotOptimize(fc::hinf1_norm(f, grid));
}
BENCHMARK(BM_Hinf1Norm)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_CosineAt(benchmark::State& st) {
  const fc::CosineModel c(fc::random_cosine_generator(static_cast<int>(st.range(0)), 3));
  double t = 0.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(fc::cosine_at(c, t));
    t += 0.01;
  }
}
BENCHMARK(BM_CosineAt)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_GroupBounds(benchmark::State& st) {
  const fc::GroupModel g(fc::random_diagonalizable(8, 9));
  for (auto _ : st) benchmark::DoNotOptimize(fc::estimate_group_bounds(g, 8.0, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_GroupBounds)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
