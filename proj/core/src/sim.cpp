#include "rotvel/sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace rotvel {

namespace {

constexpr int kMaxRejections = 1000;

// One landmark's noisy track, or no value if the landmark cannot be kept
// in view.
Result<SyntheticTrack> generate_track(const SceneConfig& config, double omega_true, Rng& rng,
                                      int index) {
  const double cone = 0.5 * config.image_width / config.focal;
  const AckermannParams params{omega_true, config.tau, config.d};
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double depth = rng.uniform(config.depth_mean - config.depth_halfwidth,
                                     config.depth_mean + config.depth_halfwidth);
    const double x0 = rng.uniform(-cone, cone);
    const WorldPoint2D landmark{x0 * depth, depth};

    std::vector<double> times(config.events_per_track);
    for (double& t : times) t = rng.uniform(0.0, config.window);
    std::sort(times.begin(), times.end());
    bool ok = true;
    for (size_t i = 1; i < times.size(); ++i) {
      if (times[i] - times[i - 1] < 1e-9) {
        ok = false;  // strictly increasing timestamps required downstream
        break;
      }
    }
    if (!ok) continue;

    SyntheticTrack track;
    track.id = "lm" + std::to_string(index);
    track.landmark = landmark;
    track.omega_true = omega_true;
    track.samples.reserve(times.size());
    // In-view at the window endpoints as well as at every sample time.
    for (double probe : {0.0, config.window}) {
      auto x = project_bearing(landmark, relative_pose(params, probe));
      if (!x || std::abs(x.value()) > cone) {
        ok = false;
        break;
      }
    }
    for (size_t i = 0; ok && i < times.size(); ++i) {
      auto x = project_bearing(landmark, relative_pose(params, times[i]));
      if (!x || std::abs(x.value()) > cone) {
        ok = false;
        break;
      }
      track.samples.push_back(BearingSample{x.value(), times[i]});
    }
    if (!ok) continue;
    // Pixel-space noise on u = focal * x + principal_x, re-normalized; the
    // principal point cancels.
    for (auto& sample : track.samples) sample.x += rng.normal(config.noise_sigma) / config.focal;
    return track;
  }
  return make_error(ErrorCode::RejectionExhausted,
                    "generate_scene: landmark " + std::to_string(index) + " stayed out of view " +
                        std::to_string(kMaxRejections) + " times (impossible cone?)");
}

SceneConfig apply_factor(SceneConfig base, SweepFactor factor, double value) {
  switch (factor) {
    case SweepFactor::Tau:
      base.tau = value;
      break;
    case SweepFactor::Noise:
      base.noise_sigma = value;
      break;
    case SweepFactor::Interval:
      base.window = value;
      base.tau = value;  // the scale constant tracks the window unless swept itself
      break;
    case SweepFactor::Landmarks:
      base.n_landmarks = static_cast<int>(value);
      break;
    case SweepFactor::Focal:
      base.focal = value;
      break;
    case SweepFactor::Depth:
      base.depth_mean = value;
      break;
  }
  return base;
}

}  // namespace

const char* to_string(SweepFactor factor) {
  switch (factor) {
    case SweepFactor::Tau: return "tau";
    case SweepFactor::Noise: return "noise";
    case SweepFactor::Interval: return "interval";
    case SweepFactor::Landmarks: return "landmarks";
    case SweepFactor::Focal: return "focal";
    case SweepFactor::Depth: return "depth";
  }
  return "?";
}

Result<SweepFactor> parse_factor(const std::string& name) {
  for (SweepFactor f : {SweepFactor::Tau, SweepFactor::Noise, SweepFactor::Interval,
                        SweepFactor::Landmarks, SweepFactor::Focal, SweepFactor::Depth}) {
    if (name == to_string(f)) return f;
  }
  return make_error(ErrorCode::ParseError,
                    "unknown sweep factor '" + name +
                        "' (expected tau, noise, interval, landmarks, focal or depth)");
}

std::vector<double> default_factor_values(SweepFactor factor) {
  switch (factor) {
    case SweepFactor::Tau:
    case SweepFactor::Interval:
      return {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
    case SweepFactor::Noise:
      return {0, 1, 2, 3, 4, 5, 6, 7, 8};
    case SweepFactor::Landmarks:
      return {5, 10, 15, 20, 25, 30, 40, 50};
    case SweepFactor::Focal:
      return {100, 300, 500, 700, 900, 1100};
    case SweepFactor::Depth:
      return {10, 15, 20, 25, 30, 35, 40};
  }
  return {};
}

Result<std::vector<SyntheticTrack>> generate_scene(const SceneConfig& config, Rng& rng) {
  std::vector<SyntheticTrack> tracks;
  tracks.reserve(config.n_landmarks);
  for (int i = 0; i < config.n_landmarks; ++i) {
    auto track = generate_track(config, config.omega_true, rng, i);
    if (!track) return track.error();
    tracks.push_back(std::move(track).value());
  }
  return tracks;
}

double omega_error(double omega_rec, double omega_gt) { return std::abs(omega_rec - omega_gt); }

SweepResult run_sweep(SweepFactor factor, const std::vector<double>& values,
                      const SceneConfig& base, const std::vector<ExpansionOrder>& orders,
                      int n_threads) {
  SweepResult result;
  result.factor = factor;
  result.values = values;
  result.orders = orders;

  const int n_orders = static_cast<int>(orders.size());
  const int trials = base.trials;
  // eps[value][order][trial]; NaN marks a failed trial.
  std::vector<std::vector<std::vector<double>>> eps(
      values.size(), std::vector<std::vector<double>>(
                         n_orders, std::vector<double>(trials, std::nan(""))));

  const auto run_trial = [&](size_t vi, int trial) {
    SceneConfig config = apply_factor(base, factor, values[vi]);
    Rng rng(Rng::mix(base.seed, static_cast<uint64_t>(vi), static_cast<uint64_t>(trial)));
    config.omega_true = rng.uniform(-0.5, 0.5);
    auto scene = generate_scene(config, rng);
    if (!scene) return;  // all orders keep NaN -> counted as failures
    for (int oi = 0; oi < n_orders; ++oi) {
      std::vector<OmegaEstimate> estimates;
      estimates.reserve(scene.value().size());
      for (const auto& track : scene.value()) {
        auto estimate = solve_omega(track.samples, orders[oi], config.tau);
        if (estimate) {
          estimate.value().track_id = track.id;
          estimates.push_back(std::move(estimate).value());
        }
      }
      VoteConfig vote_config;
      auto vote = histogram_vote(estimates, vote_config);
      if (vote) eps[vi][oi][trial] = omega_error(vote.value().omega_consensus, config.omega_true);
    }
  };

  const int total = static_cast<int>(values.size()) * trials;
  const int workers = std::max(1, n_threads);
  if (workers == 1) {
    for (size_t vi = 0; vi < values.size(); ++vi) {
      for (int t = 0; t < trials; ++t) run_trial(vi, t);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (int k = w; k < total; k += workers) {
          run_trial(static_cast<size_t>(k) / trials, k % trials);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (size_t vi = 0; vi < values.size(); ++vi) {
    for (int oi = 0; oi < n_orders; ++oi) {
      SweepCell cell;
      cell.factor_value = values[vi];
      cell.order = orders[oi];
      double sum = 0.0;
      for (double e : eps[vi][oi]) {
        if (std::isnan(e)) {
          ++cell.failures;
        } else {
          sum += e;
          ++cell.trials;
        }
      }
      cell.mean_eps = cell.trials > 0 ? sum / cell.trials : std::nan("");
      result.cells.push_back(cell);
    }
  }
  return result;
}

}  // namespace rotvel
