// Microbenchmarks for the hot paths: row construction, Gram/determinant
// assembly, the full single-trail solve, histogram voting, and one
// simulator trial end to end.

#include <benchmark/benchmark.h>

#include <vector>

#include "rotvel/rng.hpp"
#include "rotvel/robust.hpp"
#include "rotvel/sim.hpp"
#include "rotvel/solver.hpp"

namespace {

rotvel::ExpansionOrder order_from(int64_t idx) {
  switch (idx) {
    case 0: return rotvel::ExpansionOrder::S3C2;
    case 1: return rotvel::ExpansionOrder::S5C4;
    default: return rotvel::ExpansionOrder::S7C6;
  }
}

std::vector<rotvel::BearingSample> make_samples(int n, double omega, double tau) {
  rotvel::Rng rng(7);
  rotvel::WorldPoint2D landmark{0.8, 6.0};
  std::vector<rotvel::BearingSample> samples;
  for (int i = 0; i < n; ++i) {
    const double tau_i = tau * static_cast<double>(i) / (n - 1);
    const auto pose = rotvel::relative_pose({omega, tau, 1.0}, tau_i);
    const auto x = rotvel::project_bearing(landmark, pose);
    samples.push_back({x.value() + rng.normal(1.0) / 700.0, tau_i});
  }
  return samples;
}

void BM_TaylorRow(benchmark::State& state) {
  const auto order = order_from(state.range(0));
  const rotvel::BearingSample sample{0.21, 0.17};
  for (auto _ : state) {
    auto row = rotvel::taylor_row(sample, order, 0.3);
    benchmark::DoNotOptimize(row);
  }
}
BENCHMARK(BM_TaylorRow)->Arg(0)->Arg(1)->Arg(2);

void BM_GramDet(benchmark::State& state) {
  const auto order = order_from(state.range(0));
  const auto samples = make_samples(30, 0.3, 0.3);
  const auto matrix = rotvel::build_matrix(samples, order, 0.3).value();
  for (auto _ : state) {
    auto det = rotvel::det_poly(rotvel::gram(matrix));
    benchmark::DoNotOptimize(det);
  }
}
BENCHMARK(BM_GramDet)->Arg(0)->Arg(1)->Arg(2);

void BM_SolveOmega(benchmark::State& state) {
  const auto order = order_from(state.range(0));
  const auto samples = make_samples(30, 0.3, 0.3);
  for (auto _ : state) {
    auto est = rotvel::solve_omega(samples, order, 0.3);
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_SolveOmega)->Arg(0)->Arg(1)->Arg(2);

void BM_HistogramVote(benchmark::State& state) {
  const auto samples = make_samples(30, 0.3, 0.3);
  std::vector<rotvel::OmegaEstimate> estimates;
  rotvel::Rng rng(11);
  for (int i = 0; i < 15; ++i) {
    auto est = rotvel::solve_omega(samples, rotvel::ExpansionOrder::S7C6, 0.3).value();
    est.omega += rng.normal(0.01);
    estimates.push_back(est);
  }
  for (auto _ : state) {
    auto vote = rotvel::histogram_vote(estimates, {});
    benchmark::DoNotOptimize(vote);
  }
}
BENCHMARK(BM_HistogramVote);

void BM_SceneTrial(benchmark::State& state) {
  rotvel::SceneConfig config;
  config.omega_true = 0.3;
  uint64_t trial = 0;
  for (auto _ : state) {
    rotvel::Rng rng(rotvel::Rng::mix(config.seed, 0, trial++));
    auto scene = rotvel::generate_scene(config, rng);
    benchmark::DoNotOptimize(scene);
    if (!scene) continue;
    std::vector<rotvel::OmegaEstimate> estimates;
    for (const auto& track : scene.value()) {
      auto est = rotvel::solve_omega(track.samples, rotvel::ExpansionOrder::S7C6, config.window);
      if (est) estimates.push_back(est.value());
    }
    auto vote = rotvel::histogram_vote(estimates, {});
    benchmark::DoNotOptimize(vote);
  }
}
BENCHMARK(BM_SceneTrial);

}  // namespace
