#pragma once

#include <array>
#include <string>
#include <vector>

#include "rotvel/errors.hpp"
#include "rotvel/poly.hpp"

namespace rotvel {

// Truncation orders of the sine/cosine expansions inside the incidence rows,
// named sine-order then cosine-order. They fix the row polynomial degree
// (5 / 9 / 13), the Gram entry max degree (10 / 18 / 26) and the determinant
// degree (30 / 54 / 78).
enum class ExpansionOrder { S3C2, S5C4, S7C6 };

const char* to_string(ExpansionOrder order);
Result<ExpansionOrder> parse_order(const std::string& name);
int sine_order(ExpansionOrder order);    // 3 / 5 / 7
int cosine_order(ExpansionOrder order);  // 2 / 4 / 6
int row_degree(ExpansionOrder order);    // 5 / 9 / 13
int det_degree(ExpansionOrder order);    // 30 / 54 / 78

// One horizontal bearing measurement at its offset from the window start.
struct BearingSample {
  double x = 0.0;      // normalized horizontal bearing, dimensionless
  double tau_i = 0.0;  // s since window start; strictly increasing within a track
};

// Stacked n-linear measurement matrix: row i holds the polynomial triple
// (b_i1, b_i2, b_i3) multiplying the structure vector (p0x, p0y, d).
struct MeasurementMatrix {
  std::vector<std::array<Polynomial, 3>> rows;
  ExpansionOrder order = ExpansionOrder::S7C6;
  double tau = 0.0;
};

// Symmetric 3x3 polynomial Gram matrix.
struct PolyMatrix3 {
  std::array<std::array<Polynomial, 3>, 3> entries;
};

struct SolveConfig {
  double omega_max = 3.14159265358979323846;  // rad/s search bound
  double root_tol = 1e-10;                    // refinement tolerance in the rescaled variable
  double tie_rel = 1e-9;  // relative det spread under which candidates count as tied
};

// One track's solved turning rate. The determinant polynomial is kept in the
// rescaled variable u = omega * time_scale so that consensus refinement can
// re-evaluate this track's objective without re-solving.
struct OmegaEstimate {
  double omega = 0.0;     // rad/s
  double residual = 0.0;  // normalized det_u at the estimate; >= 0 up to roundoff
  int n_candidates = 0;   // critical points + endpoints examined
  std::string track_id;
  Polynomial det_u;         // normalized det in u = omega * time_scale
  double time_scale = 0.0;  // largest tau_i of the solved samples
};

// Structure vector recovered from the nullspace at a solved omega,
// normalized so the d component is +1 when it is nonzero.
struct StructureEstimate {
  double p0x = 0.0;
  double p0y = 0.0;
  double d = 0.0;
  bool scale_normalized = false;  // true when division by the d component was possible
};

// Taylor-expanded incidence row: the truncated-series coefficients
// (a~1, a~2, a~3) for the order, each multiplied by the order's polynomial
// c(omega) = K * sin_trunc(omega * tau) / omega with K = -6 / +120 / -5040.
// a~3's quotient by c is carried as a power series truncated at the sine
// order, keeping all three columns under one truncation discipline (this is
// what makes the determinant degrees come out 30 / 54 / 78).
std::array<Polynomial, 3> taylor_row(const BearingSample& sample, ExpansionOrder order,
                                     double tau);

// Stacks one taylor_row per sample, in sample order.
// Errors: TooFewSamples (< 3), DuplicateTimestamp (tau_i not strictly increasing).
Result<MeasurementMatrix> build_matrix(const std::vector<BearingSample>& samples,
                                       ExpansionOrder order, double tau);

// M(p, q) = sum_i b_ip * b_iq; symmetric and positive semidefinite at every
// real omega by construction.
PolyMatrix3 gram(const MeasurementMatrix& B);

// 3x3 determinant by cofactor expansion over the symmetric entries.
Polynomial det_poly(const PolyMatrix3& M);

// End-to-end single-track solve: build -> gram -> det -> rescale u = omega*T
// (T = largest tau_i; keeps degree-78 coefficients O(1)) -> critical points of
// det via square-free Sturm isolation on [-omega_max*T, omega_max*T] ->
// candidates = refined critical points + both endpoints -> smallest det wins,
// ties (within tie_rel) broken toward smaller |omega|.
// Errors: NoCandidates on degenerate data (det identically ~0); propagates
// NumericalBreakdown with a hint to shrink the window.
Result<OmegaEstimate> solve_omega(const std::vector<BearingSample>& samples,
                                  ExpansionOrder order, double tau,
                                  const SolveConfig& config = SolveConfig{});

// Right singular vector of the numeric B(omega) with smallest singular value.
// Errors: DegenerateNullspace when the two smallest singular values are within
// 1e-6 of each other relative to the largest (ambiguous structure).
Result<StructureEstimate> recover_structure(const std::vector<BearingSample>& samples,
                                            ExpansionOrder order, double tau, double omega);

}  // namespace rotvel
