#include "rotvel/geometry.hpp"

#include <cmath>

namespace rotvel {

PlanarPose relative_pose(const AckermannParams& params, double tau_i) {
  const double theta_i = params.omega * tau_i;
  const double theta_tau = params.omega * params.tau;
  PlanarPose pose;
  pose.rotation = theta_i;
  if (std::abs(theta_tau) < kOmegaSwitch) {
    pose.tx = params.d * params.omega * tau_i * tau_i / (2.0 * params.tau);
    pose.ty = params.d * tau_i / params.tau;
  } else {
    const double r = params.d / std::sin(theta_tau);
    pose.tx = r * (1.0 - std::cos(theta_i));
    pose.ty = r * std::sin(theta_i);
  }
  return pose;
}

Result<double> project_bearing(const WorldPoint2D& point, const PlanarPose& pose) {
  const double c = std::cos(pose.rotation);
  const double s = std::sin(pose.rotation);
  const double dx = point.p0x - pose.tx;
  const double dy = point.p0y - pose.ty;
  // R_i = [[c, s], [-s, c]]; p_i = R_i^T (p_0 - t_i).
  const double px = c * dx - s * dy;
  const double py = s * dx + c * dy;
  if (py <= 0.0) {
    return make_error(ErrorCode::PointBehindCamera, "project_bearing: forward coordinate <= 0");
  }
  return px / py;
}

Result<std::array<double, 3>> exact_incidence_row(double x_i, double tau_i,
                                                  const AckermannParams& params) {
  const double theta_i = params.omega * tau_i;
  const double theta_tau = params.omega * params.tau;
  const double s = std::sin(theta_i);
  const double c = std::cos(theta_i);
  const double a1 = -x_i * s + c;
  const double a2 = -x_i * c - s;
  double a3;
  if (std::abs(theta_tau) < kOmegaSwitch) {
    // (x sin(w t_i) - cos(w t_i) + 1) / sin(w tau) to first order in omega.
    a3 = x_i * tau_i / params.tau + params.omega * tau_i * tau_i / (2.0 * params.tau);
  } else {
    const double denom = std::sin(theta_tau);
    if (std::abs(denom) < 1e-12) {
      return make_error(ErrorCode::DegenerateScale,
                        "exact_incidence_row: omega * tau is a nonzero multiple of pi");
    }
    a3 = (x_i * s - c + 1.0) / denom;
  }
  return std::array<double, 3>{a1, a2, a3};
}

}  // namespace rotvel
