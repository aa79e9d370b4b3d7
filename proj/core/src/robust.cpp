#include "rotvel/robust.hpp"

#include <algorithm>
#include <cmath>

namespace rotvel {

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

Result<VoteResult> histogram_vote(const std::vector<OmegaEstimate>& estimates,
                                  const VoteConfig& config) {
  if (estimates.empty()) {
    return make_error(ErrorCode::InsufficientConsensus, "histogram_vote: no estimates");
  }
  const int n_bins =
      std::max(1, static_cast<int>(std::ceil(2.0 * config.omega_max / config.bin_width)));

  VoteResult result;
  result.bin_edges.resize(n_bins + 1);
  for (int b = 0; b <= n_bins; ++b) result.bin_edges[b] = -config.omega_max + b * config.bin_width;
  result.counts.assign(n_bins, 0);

  std::vector<int> bin_of(estimates.size());
  for (size_t i = 0; i < estimates.size(); ++i) {
    int b = static_cast<int>(std::floor((estimates[i].omega + config.omega_max) /
                                        config.bin_width));
    b = std::clamp(b, 0, n_bins - 1);
    bin_of[i] = b;
    ++result.counts[b];
  }

  // Mode bin; ties resolved toward the bin center with smaller |omega| so
  // results are reproducible.
  int mode = 0;
  double mode_center = std::abs(result.bin_edges[0] + 0.5 * config.bin_width);
  for (int b = 1; b < n_bins; ++b) {
    const double center = std::abs(result.bin_edges[b] + 0.5 * config.bin_width);
    if (result.counts[b] > result.counts[mode] ||
        (result.counts[b] == result.counts[mode] && center < mode_center)) {
      mode = b;
      mode_center = center;
    }
  }

  std::vector<size_t> inliers;
  for (size_t i = 0; i < estimates.size(); ++i) {
    if (std::abs(bin_of[i] - mode) <= config.neighbor_span) inliers.push_back(i);
  }
  const size_t required =
      std::min<size_t>(static_cast<size_t>(std::max(config.min_inliers, 1)), estimates.size());
  if (inliers.size() < required) {
    return make_error(ErrorCode::InsufficientConsensus,
                      "histogram_vote: mode bin holds " + std::to_string(inliers.size()) +
                          " estimates, need " + std::to_string(required));
  }

  std::vector<double> inlier_omegas;
  inlier_omegas.reserve(inliers.size());
  for (size_t i : inliers) {
    inlier_omegas.push_back(estimates[i].omega);
    result.inlier_ids.push_back(estimates[i].track_id);
  }
  result.omega_consensus = median_of(inlier_omegas);

  const double span_lo = *std::min_element(inlier_omegas.begin(), inlier_omegas.end());
  const double span_hi = *std::max_element(inlier_omegas.begin(), inlier_omegas.end());
  if (config.refine && inliers.size() >= 2 && span_hi - span_lo > 1e-12) {
    // Joint objective: each inlier's determinant normalized by its sup over
    // the span, so tracks with more events (larger Gram magnitudes) cannot
    // dominate.
    std::vector<double> sup(inliers.size(), 1.0);
    for (size_t k = 0; k < inliers.size(); ++k) {
      const auto& est = estimates[inliers[k]];
      double m = 0.0;
      for (int g = 0; g <= 64; ++g) {
        const double w = span_lo + (span_hi - span_lo) * g / 64.0;
        m = std::max(m, std::abs(est.det_u(w * est.time_scale)));
      }
      if (m > 0.0) sup[k] = m;
    }
    const auto objective = [&](double w) {
      double acc = 0.0;
      for (size_t k = 0; k < inliers.size(); ++k) {
        const auto& est = estimates[inliers[k]];
        acc += est.det_u(w * est.time_scale) / sup[k];
      }
      return acc;
    };
    constexpr double kGolden = 0.6180339887498948482;
    double a = span_lo, b = span_hi;
    double c1 = b - kGolden * (b - a);
    double c2 = a + kGolden * (b - a);
    double f1 = objective(c1);
    double f2 = objective(c2);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
      if (f1 < f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - kGolden * (b - a);
        f1 = objective(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + kGolden * (b - a);
        f2 = objective(c2);
      }
    }
    result.omega_consensus = 0.5 * (a + b);
    result.refined = true;
  }
  return result;
}

}  // namespace rotvel
