#include <benchmark/benchmark.h>

#include <vector>

#include "hfee/evaluate.hpp"
#include "hfee/features.hpp"
#include "hfee/regress.hpp"
#include "hfee/rng.hpp"
#include "hfee/synth.hpp"

using namespace hfee;

namespace {

CohortSpec small_spec(int subjects) {
  CohortSpec spec;
  spec.n_subjects = subjects;
  spec.seed = 42;
  return spec;
}

void bm_window_median(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Sample> samples(n);
  Rng rng(1);
  for (std::size_t i = 0; i < n; ++i)
    samples[i] = {static_cast<double>(i) / 20.0, rng.normal(30.0, 2.0)};
  const double end = static_cast<double>(n) / 20.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(window_median(samples, end, kLongLagStart, kLongLagEnd));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}

void bm_build_feature_table(benchmark::State& state) {
  const SubjectData subject = generate_subject(small_spec(3), 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_feature_table(subject.recording));
}

void bm_fit_ols(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Eigen::MatrixXd h(n, 9);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < 9; ++j) h(i, j) = rng.normal(0.0, 1.0);
    y(i) = rng.normal(200.0, 40.0);
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_ols(h, y, Scenario::HrHf));
}

void bm_run_loocv(benchmark::State& state) {
  const CohortSpec spec = small_spec(static_cast<int>(state.range(0)));
  std::vector<SubjectProfile> profiles;
  std::vector<FeatureTable> tables;
  for (int i = 0; i < spec.n_subjects; ++i) {
    const SubjectData subject = generate_subject(spec, i);
    profiles.push_back(subject.profile);
    tables.push_back(build_feature_table(subject.recording));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(run_loocv(tables, profiles, {Scenario::HrHf, Subset::All}));
}

void bm_box_stats(benchmark::State& state) {
  Rng rng(3);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (double& v : values) v = rng.normal(0.8, 0.1);
  for (auto _ : state) {
    auto copy = values;
    benchmark::DoNotOptimize(box_stats(std::move(copy)));
  }
}

}  // namespace

BENCHMARK(bm_window_median)->Arg(6000)->Arg(120000);
BENCHMARK(bm_build_feature_table)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fit_ols)->Arg(500)->Arg(4000);
BENCHMARK(bm_run_loocv)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_box_stats)->Arg(15)->Arg(1000);

BENCHMARK_MAIN();
