#pragma once

#include <array>

#include "rotvel/errors.hpp"

namespace rotvel {

// Below this |omega * tau| the trigonometric pose form is replaced by its
// small-angle limit; the trig form's relative error exceeds double-precision
// noise underneath this scale.
inline constexpr double kOmegaSwitch = 1e-7;

// Arc motion of a non-holonomic ground vehicle: omega is the turning rate
// (omega > 0 <=> forward right turn), and the pair (tau, d) fixes the arc's
// scale as "d units of forward displacement over tau seconds".
struct AckermannParams {
  double omega = 0.0;  // rad/s
  double tau = 0.0;    // s, > 0
  double d = 1.0;      // scene units, > 0; the solve is scale-invariant in omega
};

// In-plane block of the relative pose at some time offset: rotation angle and
// the 2-vector translation. The vertical row is identically (0, 0, 1)/0 and is
// never stored.
struct PlanarPose {
  double rotation = 0.0;  // rad
  double tx = 0.0;        // scene units, lateral (x right)
  double ty = 0.0;        // scene units, forward (y forward)
};

// Planar landmark in the frame at window start.
struct WorldPoint2D {
  double p0x = 0.0;  // lateral
  double p0y = 0.0;  // forward depth; > 0 when visible in a forward camera
};

// Pose of the vehicle frame at time offset tau_i relative to the frame at the
// window start: theta_i = omega * tau_i and
//   t_i = d / sin(omega * tau) * (1 - cos(omega * tau_i), sin(omega * tau_i)).
// For |omega * tau| < kOmegaSwitch the limit form
//   t_i = (d * omega * tau_i^2 / (2 * tau), d * tau_i / tau)
// is used; it reduces to (0, d * tau_i / tau) at omega = 0 and keeps the
// branch switch continuous to well below 1e-9.
PlanarPose relative_pose(const AckermannParams& params, double tau_i);

// Transforms the landmark into the frame at pose (p_i = R_i^T (p_0 - t_i))
// and returns the normalized horizontal bearing x = p_i^x / p_i^y. The row
// coordinate of the image is dropped by the planar model.
// Errors: PointBehindCamera when the transformed forward coordinate is <= 0.
Result<double> project_bearing(const WorldPoint2D& point, const PlanarPose& pose);

// Exact trigonometric coefficients (a1, a2, a3) of the incidence constraint
//   (a1, a2, a3) . (p0x, p0y, d) = 0
// relating one bearing sample to the motion. Ground-truth oracle for the
// Taylor rows in the solver.
// Errors: DegenerateScale when omega * tau is a nonzero multiple of pi (the
// scale denominator sin(omega * tau) vanishes).
Result<std::array<double, 3>> exact_incidence_row(double x_i, double tau_i,
                                                  const AckermannParams& params);

}  // namespace rotvel
