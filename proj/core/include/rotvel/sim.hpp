#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotvel/errors.hpp"
#include "rotvel/geometry.hpp"
#include "rotvel/rng.hpp"
#include "rotvel/robust.hpp"
#include "rotvel/solver.hpp"

namespace rotvel {

// Monte-Carlo scene description. Numeric defaults follow the reference
// experiment configuration (1 px noise, 0.3 s window, 15 landmarks, depths
// uniform in [2, 18], focal 700 px, 1000 trials); image_width fixes the
// in-view bearing cone at +-0.5 * image_width / focal and is an
// implementation-level addition.
struct SceneConfig {
  int n_landmarks = 15;
  double depth_mean = 10.0;      // scene units
  double depth_halfwidth = 8.0;  // depths drawn uniform in mean +- halfwidth
  double noise_sigma = 1.0;      // px, applied to the horizontal pixel coordinate
  double window = 0.3;           // s
  double focal = 700.0;          // px
  int events_per_track = 30;
  double omega_true = 0.0;  // rad/s, set per trial by sweeps
  double tau = 0.3;         // s, scale constant; defaults to the window length
  double d = 1.0;           // forward displacement over tau
  int trials = 1000;
  uint64_t seed = 0;
  double image_width = 608.0;   // px, bounds the bearing cone
  double principal_x = 304.0;   // px, used when exporting pixel-space fixtures
};

struct SyntheticTrack {
  std::string id;
  WorldPoint2D landmark;
  double omega_true = 0.0;
  std::vector<BearingSample> samples;  // noisy bearings, strictly increasing tau_i
};

enum class SweepFactor { Tau, Noise, Interval, Landmarks, Focal, Depth };

const char* to_string(SweepFactor factor);
Result<SweepFactor> parse_factor(const std::string& name);
// Default value grid per factor; entries beyond quoted ranges are read off
// the reference plots and flagged figure-derived in emitted metadata.
std::vector<double> default_factor_values(SweepFactor factor);

struct SweepCell {
  double factor_value = 0.0;
  ExpansionOrder order = ExpansionOrder::S7C6;
  double mean_eps = 0.0;  // mean |omega_rec - omega_gt| over successful trials, rad/s
  int trials = 0;         // successful trials aggregated into mean_eps
  int failures = 0;       // trials that produced no consensus for this order
};

struct SweepResult {
  SweepFactor factor = SweepFactor::Noise;
  std::vector<double> values;
  std::vector<ExpansionOrder> orders;
  std::vector<SweepCell> cells;  // value-major, order-minor
};

// Draws one scene: depths uniform in mean +- halfwidth, lateral position such
// that the landmark's exact bearing stays inside the cone at every sampled
// time (rejection sampling, 1000 attempts per landmark), timestamps uniform
// over the window, pixel noise added to u = focal * x and re-normalized.
// Errors: RejectionExhausted when the config implies an impossible cone.
Result<std::vector<SyntheticTrack>> generate_scene(const SceneConfig& config, Rng& rng);

// eps = |omega_rec - omega_gt|.
double omega_error(double omega_rec, double omega_gt);

// Runs `base.trials` scenes per factor value, solving every track with every
// order and fusing via histogram_vote. One scene (including its noise and
// omega_true ~ U[-0.5, 0.5]) is shared by all orders of a trial, so order
// comparisons are paired. Per-trial RNG streams depend only on (seed, value
// index, trial index): results are bit-identical for any n_threads.
SweepResult run_sweep(SweepFactor factor, const std::vector<double>& values,
                      const SceneConfig& base, const std::vector<ExpansionOrder>& orders,
                      int n_threads = 1);

}  // namespace rotvel
