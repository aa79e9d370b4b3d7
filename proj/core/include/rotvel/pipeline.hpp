#pragma once

#include <string>
#include <vector>

#include "rotvel/errors.hpp"
#include "rotvel/robust.hpp"
#include "rotvel/solver.hpp"

namespace rotvel {

struct CameraIntrinsics {
  double focal = 0.0;        // px
  double principal_x = 0.0;  // px
  int width = 0;             // px
  int height = 0;            // px
  // The library's native frame is x right / y forward. A forward-facing
  // camera in the usual optical convention (z forward, x right) produces the
  // same horizontal bearing, so both tags normalize identically; the tag
  // exists to make the convention explicit in config files.
  enum class Mount { VehicleNative, OpticalZForward } mount = Mount::VehicleNative;
};

struct Event {
  double u = 0.0;    // px
  double v = 0.0;    // px
  double t = 0.0;    // s
  int polarity = 1;  // +-1; carried through but never consumed by the solver
};

struct EventTrack {
  std::string track_id;
  std::vector<Event> events;  // strictly increasing t
};

// Tracks outside these bounds are dropped on ingest (tracker output quality
// gate). The duration range matches the tracker's reported trail lifetimes;
// the event floor keeps the measurement matrix comfortably over-determined.
struct TrackValidity {
  double min_duration = 0.15;  // s
  double max_duration = 0.25;  // s
  int min_events = 8;
};

struct DroppedTrack {
  std::string track_id;
  std::string reason;
};

struct TrackIngest {
  std::vector<EventTrack> tracks;
  std::vector<DroppedTrack> dropped;
  int input_tracks = 0;  // tracks.size() + dropped.size() reconciles with this
};

// Fixed-epoch window grid: starts at epoch + k * stride, length `length`.
struct WindowConfig {
  double length = 0.2;  // s
  double stride = 0.1;  // s
  double epoch = 0.0;   // s, grid origin
  int min_events = 8;   // events a clipped segment needs to enter the solve
};

struct WindowEstimate {
  double t_start = 0.0;
  double t_end = 0.0;
  double omega = 0.0;  // rad/s
  int inliers = 0;
  double dir_x = 0.0;  // unit translation direction in the window-start frame
  double dir_y = 0.0;
};

struct GapWindow {
  double t_start = 0.0;
  double t_end = 0.0;
  std::string reason;
};

struct WindowRun {
  std::vector<WindowEstimate> estimates;  // sorted by t_start
  std::vector<GapWindow> gaps;            // windows with no consensus
};

struct ScaleEntry {
  double t_start = 0.0;
  double t_end = 0.0;
  double d = 0.0;  // forward displacement over the window, scene units
};

struct TimedPose {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;  // rad, accumulated window rotations
};

// Errors eps (relative rotation angle) and phi (translation direction), both
// in degrees; mu = RMS, nu = median over the evaluated windows.
struct ErrorStats {
  double mu_eps = 0.0;
  double nu_eps = 0.0;
  double mu_phi = 0.0;
  double nu_phi = 0.0;
  int windows = 0;  // windows evaluated
  int gaps = 0;     // windows skipped for missing ground-truth coverage
};

// Groups raw events by track, sorts by time, applies the validity gate.
// Every dropped track lands in the report with its reason.
TrackIngest ingest_tracks(const std::vector<std::pair<std::string, Event>>& rows,
                          const TrackValidity& validity = TrackValidity{});

// x = (u - principal_x) / focal, tau rebased to the first event. The row
// coordinate is dropped by the planar model.
std::vector<BearingSample> normalize(const EventTrack& track, const CameraIntrinsics& intrinsics);

// Unit translation direction implied by turning rate omega over dt:
// proportional to (1 - cos(omega*dt), sin(omega*dt)) with the forward
// component kept positive; (0, 1) in the straight-line limit.
void translation_direction(double omega, double dt, double& dir_x, double& dir_y);

// Splits the tracks' time span into epoch-aligned windows, clips each track
// to each window (tau rebased to the window start), solves per track, and
// fuses with histogram_vote. Windows without consensus become gap records,
// never interpolations.
WindowRun estimate_windows(const std::vector<EventTrack>& tracks,
                           const CameraIntrinsics& intrinsics, const WindowConfig& window_cfg,
                           ExpansionOrder order, const SolveConfig& solver_cfg = SolveConfig{},
                           const VoteConfig& vote_cfg = VoteConfig{});

// Chains one arc increment per window estimate: theta = omega * (t_end -
// t_start) and the translation from the arc model with d = the window's scale
// entry. Scale entries are matched by t_start. The first output row is the
// starting pose (t of the first window start, origin, zero yaw).
// Errors: MissingScale when a window has no scale entry.
Result<std::vector<TimedPose>> integrate_trajectory(const std::vector<WindowEstimate>& estimates,
                                                    const std::vector<ScaleEntry>& scales);

// Per window: eps = |omega * dt - gt yaw change| in degrees (ground truth
// interpolated linearly in t); phi = angle between the estimated translation
// direction and the ground-truth displacement rotated into the window-start
// frame, in degrees. Windows not fully covered by ground truth are counted as
// gaps and skipped.
// Errors: CoverageGap when no window is covered at all.
Result<ErrorStats> evaluate(const std::vector<WindowEstimate>& estimates,
                            const std::vector<TimedPose>& ground_truth);

}  // namespace rotvel
