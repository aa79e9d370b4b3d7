#pragma once

#include <string>
#include <vector>

#include "rotvel/errors.hpp"
#include "rotvel/solver.hpp"

namespace rotvel {

// Fusion knobs. The voting scheme itself (mode bin + neighbors as inliers,
// median consensus, optional joint refinement over the normalized per-track
// determinants) is a reconstruction: the source work defers to a citation and
// publishes no parameters, so every default here is a local choice.
struct VoteConfig {
  double bin_width = 0.01;  // rad/s
  int neighbor_span = 1;    // bins on each side of the mode counted as inliers
  int min_inliers = 3;      // capped at the estimate count, so one estimate still resolves
  bool refine = true;
  double omega_max = 3.14159265358979323846;  // histogram covers [-omega_max, omega_max]
};

struct VoteResult {
  double omega_consensus = 0.0;        // rad/s, within [min inlier, max inlier]
  std::vector<std::string> inlier_ids;
  std::vector<double> bin_edges;       // n_bins + 1 ascending edges
  std::vector<int> counts;             // n_bins entries
  bool refined = false;
};

// Bins the estimates over [-omega_max, omega_max]; the mode bin (ties broken
// toward the bin center with smaller |omega|) plus neighbor_span bins on each
// side define the inliers; consensus = median of inlier omegas, replaced by a
// golden-section minimization of
//   sum_j det_j(omega) / sup_span |det_j|
// over the inlier span when refine is set and the span is non-degenerate.
// Errors: InsufficientConsensus when the inlier count is below
// min(min_inliers, #estimates).
Result<VoteResult> histogram_vote(const std::vector<OmegaEstimate>& estimates,
                                  const VoteConfig& config = VoteConfig{});

}  // namespace rotvel
