#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rotvel/errors.hpp"
#include "rotvel/pipeline.hpp"
#include "rotvel/sim.hpp"

namespace rotvel {

// All files are plain CSV with fixed headers, except intrinsics and metadata
// sidecars which use a flat TOML subset (key = value, '#' comments; no
// tables or arrays). Floating-point values are written with %.17g so that
// read-back is exact and seeded outputs are byte-stable.

// tracks CSV: header `track_id,t,u,v,polarity`.
Result<std::vector<std::pair<std::string, Event>>> read_tracks_csv(const std::string& path);
Result<bool> write_tracks_csv(const std::string& path,
                              const std::vector<std::pair<std::string, Event>>& rows);

// read_tracks_csv followed by the ingest gate, as one call.
Result<TrackIngest> parse_tracks(const std::string& path,
                                 const TrackValidity& validity = TrackValidity{});

// Pixel-space export of synthetic tracks (u = focal * x + principal_x,
// v = height / 2, alternating polarity), offset to absolute time t0.
std::vector<std::pair<std::string, Event>> tracks_to_rows(
    const std::vector<SyntheticTrack>& tracks, const CameraIntrinsics& intrinsics, double t0);

// intrinsics TOML: keys focal, cx, width, height, mount.
Result<CameraIntrinsics> read_intrinsics_toml(const std::string& path);
Result<bool> write_intrinsics_toml(const std::string& path, const CameraIntrinsics& intrinsics);

// omega CSV: header `t_start,t_end,omega,inliers,dir_x,dir_y`.
Result<bool> write_omega_csv(const std::string& path,
                             const std::vector<WindowEstimate>& estimates);
Result<std::vector<WindowEstimate>> read_omega_csv(const std::string& path);

// ground-truth / trajectory CSV: header `t,x,y,yaw` (yaw rad).
Result<std::vector<TimedPose>> read_poses_csv(const std::string& path);
Result<bool> write_poses_csv(const std::string& path, const std::vector<TimedPose>& poses);

// scale CSV: header `t_start,t_end,d`.
Result<std::vector<ScaleEntry>> read_scale_csv(const std::string& path);
Result<bool> write_scale_csv(const std::string& path, const std::vector<ScaleEntry>& scales);

// stats CSV: header `mu_eps,nu_eps,mu_phi,nu_phi,windows,gaps`, one row.
Result<bool> write_stats_csv(const std::string& path, const ErrorStats& stats);

// sweep CSV: header `factor_value,order,mean_eps,trials,failures`.
Result<bool> write_sweep_csv(const std::string& path, const SweepResult& sweep);
struct SweepRow {
  double factor_value;
  std::string order;
  double mean_eps;
  int trials;
  int failures;
};
Result<std::vector<SweepRow>> read_sweep_csv(const std::string& path);

// TOML sidecar with the full scene config and provenance flags.
Result<bool> write_sweep_meta_toml(const std::string& path, const SweepResult& sweep,
                                   const SceneConfig& base);

// Solve report sidecar: dropped tracks, gap windows, reconciliation totals.
Result<bool> write_solve_report_toml(const std::string& path, const TrackIngest& ingest,
                                     const WindowRun& run);

}  // namespace rotvel
