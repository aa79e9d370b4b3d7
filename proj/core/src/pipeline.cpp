#include "rotvel/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "rotvel/geometry.hpp"

namespace rotvel {

namespace {

constexpr double kDegPerRad = 57.29577951308232087680;

double rms(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double e : v) acc += e * e;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Linear interpolation of the ground-truth pose track at time t; callers
// guarantee coverage.
TimedPose interpolate(const std::vector<TimedPose>& gt, double t) {
  auto it = std::lower_bound(gt.begin(), gt.end(), t,
                             [](const TimedPose& p, double value) { return p.t < value; });
  if (it == gt.begin()) return gt.front();
  if (it == gt.end()) return gt.back();
  const TimedPose& hi = *it;
  const TimedPose& lo = *(it - 1);
  const double span = hi.t - lo.t;
  const double f = span > 0.0 ? (t - lo.t) / span : 0.0;
  return TimedPose{t, lo.x + f * (hi.x - lo.x), lo.y + f * (hi.y - lo.y),
                   lo.yaw + f * (hi.yaw - lo.yaw)};
}

}  // namespace

TrackIngest ingest_tracks(const std::vector<std::pair<std::string, Event>>& rows,
                          const TrackValidity& validity) {
  std::map<std::string, EventTrack> by_id;
  for (const auto& [id, event] : rows) {
    auto& track = by_id[id];
    track.track_id = id;
    track.events.push_back(event);
  }
  TrackIngest out;
  out.input_tracks = static_cast<int>(by_id.size());
  for (auto& [id, track] : by_id) {
    std::stable_sort(track.events.begin(), track.events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
    // Exactly coincident timestamps cannot enter the solver; keep the first.
    auto last = std::unique(track.events.begin(), track.events.end(),
                            [](const Event& a, const Event& b) { return a.t == b.t; });
    track.events.erase(last, track.events.end());
    const int n = static_cast<int>(track.events.size());
    const double duration = n >= 2 ? track.events.back().t - track.events.front().t : 0.0;
    if (n < validity.min_events) {
      out.dropped.push_back({id, "events " + std::to_string(n) + " < " +
                                     std::to_string(validity.min_events)});
    } else if (duration < validity.min_duration || duration > validity.max_duration) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "duration %.6g outside [%g, %g]", duration,
                    validity.min_duration, validity.max_duration);
      out.dropped.push_back({id, buf});
    } else {
      out.tracks.push_back(std::move(track));
    }
  }
  return out;
}

std::vector<BearingSample> normalize(const EventTrack& track,
                                     const CameraIntrinsics& intrinsics) {
  std::vector<BearingSample> samples;
  if (track.events.empty()) return samples;
  samples.reserve(track.events.size());
  const double t0 = track.events.front().t;
  for (const Event& e : track.events) {
    samples.push_back(BearingSample{(e.u - intrinsics.principal_x) / intrinsics.focal, e.t - t0});
  }
  return samples;
}

void translation_direction(double omega, double dt, double& dir_x, double& dir_y) {
  const double theta = omega * dt;
  if (std::abs(theta) < kOmegaSwitch) {
    dir_x = 0.0;
    dir_y = 1.0;
    return;
  }
  // (1 - cos, sin) / sin keeps the forward component positive for either
  // turning direction.
  const double tx = (1.0 - std::cos(theta)) / std::sin(theta);
  const double norm = std::sqrt(tx * tx + 1.0);
  dir_x = tx / norm;
  dir_y = 1.0 / norm;
}

WindowRun estimate_windows(const std::vector<EventTrack>& tracks,
                           const CameraIntrinsics& intrinsics, const WindowConfig& window_cfg,
                           ExpansionOrder order, const SolveConfig& solver_cfg,
                           const VoteConfig& vote_cfg) {
  WindowRun run;
  if (tracks.empty()) return run;
  double t_min = tracks.front().events.front().t;
  double t_max = tracks.front().events.back().t;
  for (const auto& track : tracks) {
    t_min = std::min(t_min, track.events.front().t);
    t_max = std::max(t_max, track.events.back().t);
  }
  // Epoch-aligned grid: boundaries never depend on the data, only which
  // windows are emitted does.
  const long k_lo = static_cast<long>(std::floor((t_min - window_cfg.epoch) / window_cfg.stride));
  for (long k = k_lo;; ++k) {
    const double start = window_cfg.epoch + static_cast<double>(k) * window_cfg.stride;
    if (start >= t_max) break;
    const double end = start + window_cfg.length;
    if (end <= t_min) continue;

    std::vector<OmegaEstimate> estimates;
    for (const auto& track : tracks) {
      std::vector<BearingSample> segment;
      for (const Event& e : track.events) {
        if (e.t >= start && e.t < end) {
          segment.push_back(
              BearingSample{(e.u - intrinsics.principal_x) / intrinsics.focal, e.t - start});
        }
      }
      if (static_cast<int>(segment.size()) < std::max(window_cfg.min_events, 3)) continue;
      auto estimate = solve_omega(segment, order, window_cfg.length, solver_cfg);
      if (estimate) {
        estimate.value().track_id = track.track_id;
        estimates.push_back(std::move(estimate).value());
      }
    }
    if (estimates.empty()) {
      run.gaps.push_back({start, end, "no-valid-tracks"});
      continue;
    }
    auto vote = histogram_vote(estimates, vote_cfg);
    if (!vote) {
      run.gaps.push_back({start, end, to_string(vote.error().code)});
      continue;
    }
    WindowEstimate we;
    we.t_start = start;
    we.t_end = end;
    we.omega = vote.value().omega_consensus;
    we.inliers = static_cast<int>(vote.value().inlier_ids.size());
    translation_direction(we.omega, end - start, we.dir_x, we.dir_y);
    run.estimates.push_back(we);
  }
  return run;
}

Result<std::vector<TimedPose>> integrate_trajectory(const std::vector<WindowEstimate>& estimates,
                                                    const std::vector<ScaleEntry>& scales) {
  std::vector<WindowEstimate> ordered(estimates);
  std::sort(ordered.begin(), ordered.end(),
            [](const WindowEstimate& a, const WindowEstimate& b) { return a.t_start < b.t_start; });
  std::vector<TimedPose> poses;
  if (ordered.empty()) return poses;
  poses.push_back(TimedPose{ordered.front().t_start, 0.0, 0.0, 0.0});
  for (const auto& est : ordered) {
    const ScaleEntry* scale = nullptr;
    for (const auto& s : scales) {
      if (std::abs(s.t_start - est.t_start) < 1e-9) {
        scale = &s;
        break;
      }
    }
    if (scale == nullptr) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "no scale entry for window at t=%.6f", est.t_start);
      return make_error(ErrorCode::MissingScale, buf);
    }
    const double dt = est.t_end - est.t_start;
    const PlanarPose inc = relative_pose(AckermannParams{est.omega, dt, scale->d}, dt);
    const TimedPose& prev = poses.back();
    const double c = std::cos(prev.yaw);
    const double s = std::sin(prev.yaw);
    // World chaining with R(yaw) = [[c, s], [-s, c]], matching the pose
    // convention p_0 = R * p_i + t.
    poses.push_back(TimedPose{est.t_end, prev.x + c * inc.tx + s * inc.ty,
                              prev.y - s * inc.tx + c * inc.ty, prev.yaw + inc.rotation});
  }
  return poses;
}

Result<ErrorStats> evaluate(const std::vector<WindowEstimate>& estimates,
                            const std::vector<TimedPose>& ground_truth) {
  if (ground_truth.size() < 2) {
    return make_error(ErrorCode::CoverageGap, "evaluate: ground truth has fewer than 2 poses");
  }
  std::vector<TimedPose> gt(ground_truth);
  std::sort(gt.begin(), gt.end(),
            [](const TimedPose& a, const TimedPose& b) { return a.t < b.t; });
  ErrorStats stats;
  std::vector<double> eps;
  std::vector<double> phi;
  for (const auto& est : estimates) {
    if (est.t_start < gt.front().t - 1e-9 || est.t_end > gt.back().t + 1e-9) {
      ++stats.gaps;
      continue;
    }
    const TimedPose a = interpolate(gt, est.t_start);
    const TimedPose b = interpolate(gt, est.t_end);
    const double theta_hat = est.omega * (est.t_end - est.t_start);
    eps.push_back(std::abs(theta_hat - (b.yaw - a.yaw)) * kDegPerRad);

    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double norm = std::hypot(dx, dy);
    if (norm < 1e-12) continue;  // direction undefined for a stationary window
    // Rotate the world displacement into the window-start vehicle frame;
    // world_R(yaw) = [[c, s], [-s, c]], so the inverse is its transpose.
    const double c = std::cos(a.yaw);
    const double s = std::sin(a.yaw);
    const double vx = (c * dx - s * dy) / norm;
    const double vy = (s * dx + c * dy) / norm;
    const double dot = std::clamp(vx * est.dir_x + vy * est.dir_y, -1.0, 1.0);
    phi.push_back(std::acos(dot) * kDegPerRad);
  }
  stats.windows = static_cast<int>(eps.size());
  if (eps.empty()) {
    return make_error(ErrorCode::CoverageGap, "evaluate: ground truth covers no window");
  }
  stats.mu_eps = rms(eps);
  stats.nu_eps = median(eps);
  stats.mu_phi = rms(phi);
  stats.nu_phi = median(phi);
  return stats;
}

}  // namespace rotvel
