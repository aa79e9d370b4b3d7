#include "rotvel/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace rotvel {

namespace {

// Ascending coefficients of the degree-s truncation of sin(w * t) in w.
template <typename Real>
std::vector<Real> sin_trunc(Real t, int s) {
  std::vector<Real> c(s + 1, Real(0));
  Real term = t;  // t^k / k! with alternating sign, odd k only
  for (int k = 1; k <= s; k += 2) {
    c[k] = term;
    term *= -t * t / static_cast<Real>((k + 1) * (k + 2));
  }
  return c;
}

// Ascending coefficients of the degree-co truncation of cos(w * t) in w.
template <typename Real>
std::vector<Real> cos_trunc(Real t, int co) {
  std::vector<Real> c(co + 1, Real(0));
  Real term = Real(1);
  for (int k = 0; k <= co; k += 2) {
    c[k] = term;
    term *= -t * t / static_cast<Real>((k + 1) * (k + 2));
  }
  return c;
}

double k_factor(int s) {
  double f = 1.0;
  for (int i = 2; i <= s; ++i) f *= i;
  return ((s - 1) / 2) % 2 == 1 ? -f : f;  // -6, +120, -5040 for s = 3, 5, 7
}

// Power series of num / den truncated at `order`; den must have a nonzero
// constant term.
template <typename Real>
std::vector<Real> series_divide(const std::vector<Real>& num, const std::vector<Real>& den,
                                int order) {
  std::vector<Real> q(order + 1, Real(0));
  for (int k = 0; k <= order; ++k) {
    Real acc = k < static_cast<int>(num.size()) ? num[k] : Real(0);
    for (int j = 1; j <= k; ++j) {
      if (j < static_cast<int>(den.size())) acc -= den[j] * q[k - j];
    }
    q[k] = acc / den[0];
  }
  return q;
}

// Row coefficients recomputed in extended precision, mirroring taylor_row.
// Used only to polish the winning minimum: the degree-30..78 determinant
// assembled from double coefficients carries enough representation roundoff
// near its (near-double) root to wobble the argmin by ~1e-8, while scalar
// 80-bit evaluation of the 3x3 determinant at a single omega does not.
std::array<std::vector<long double>, 3> row_ld(const BearingSample& sample, int s, double tau) {
  const long double x = sample.x;
  const long double K = k_factor(s);
  const std::vector<long double> S = sin_trunc<long double>(sample.tau_i, s);
  const std::vector<long double> C = cos_trunc<long double>(sample.tau_i, s - 1);
  const std::vector<long double> sin_tau = sin_trunc<long double>(tau, s);
  std::vector<long double> c_mult(sin_tau.begin() + 1, sin_tau.end());
  for (auto& v : c_mult) v *= K;

  std::vector<long double> a1(s + 1, 0.0L), a2(s + 1, 0.0L), N(s, 0.0L);
  for (int i = 0; i <= s; ++i) {
    const long double Si = i < static_cast<int>(S.size()) ? S[i] : 0.0L;
    const long double Ci = i < static_cast<int>(C.size()) ? C[i] : 0.0L;
    a1[i] = Ci - x * Si;
    a2[i] = -x * Ci - Si;
    if (i >= 1) N[i - 1] = K * (x * Si - Ci);
  }
  const std::vector<long double> a3 = series_divide(N, c_mult, s);

  auto convolve = [&](const std::vector<long double>& a) {
    std::vector<long double> out(c_mult.size() + a.size() - 1, 0.0L);
    for (size_t i = 0; i < c_mult.size(); ++i)
      for (size_t j = 0; j < a.size(); ++j) out[i + j] += c_mult[i] * a[j];
    return out;
  };
  return {convolve(a1), convolve(a2), convolve(a3)};
}

long double horner_ld(const std::vector<long double>& c, long double w) {
  long double acc = 0.0L;
  for (size_t i = c.size(); i-- > 0;) acc = acc * w + c[i];
  return acc;
}

// d/dw of det(Gram) of the extended-precision rows at scalar omega. The
// determinant's own value is cancellation-dominated near its near-double
// root, but its derivative crosses zero there with a steep, well-conditioned
// slope, so the root of this function pins the minimizer tightly.
long double det_slope_ld(const std::vector<std::array<std::vector<long double>, 3>>& rows,
                         long double w) {
  long double g[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  long double dg[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  for (const auto& row : rows) {
    long double b[3], db[3];
    for (int j = 0; j < 3; ++j) {
      b[j] = horner_ld(row[j], w);
      long double acc = 0.0L;  // Horner of the derivative coefficients
      for (size_t i = row[j].size(); i-- > 1;) acc = acc * w + static_cast<long double>(i) * row[j][i];
      db[j] = acc;
    }
    for (int p = 0; p < 3; ++p)
      for (int q = p; q < 3; ++q) {
        g[p][q] += b[p] * b[q];
        dg[p][q] += db[p] * b[q] + b[p] * db[q];
      }
  }
  const long double c00 = g[1][1] * g[2][2] - g[1][2] * g[1][2];
  const long double c01 = g[0][1] * g[2][2] - g[1][2] * g[0][2];
  const long double c02 = g[0][1] * g[1][2] - g[1][1] * g[0][2];
  return dg[0][0] * c00 +
         g[0][0] * (dg[1][1] * g[2][2] + g[1][1] * dg[2][2] - 2.0L * g[1][2] * dg[1][2]) -
         dg[0][1] * c01 -
         g[0][1] * (dg[0][1] * g[2][2] + g[0][1] * dg[2][2] - dg[1][2] * g[0][2] -
                    g[1][2] * dg[0][2]) +
         dg[0][2] * c02 +
         g[0][2] * (dg[0][1] * g[1][2] + g[0][1] * dg[1][2] - dg[1][1] * g[0][2] -
                    g[1][1] * dg[0][2]);
}

struct Candidate {
  double u;
  double value;
};

}  // namespace

const char* to_string(ExpansionOrder order) {
  switch (order) {
    case ExpansionOrder::S3C2: return "s3c2";
    case ExpansionOrder::S5C4: return "s5c4";
    case ExpansionOrder::S7C6: return "s7c6";
  }
  return "?";
}

Result<ExpansionOrder> parse_order(const std::string& name) {
  if (name == "s3c2") return ExpansionOrder::S3C2;
  if (name == "s5c4") return ExpansionOrder::S5C4;
  if (name == "s7c6") return ExpansionOrder::S7C6;
  return make_error(ErrorCode::ParseError, "unknown expansion order '" + name +
                                               "' (expected s3c2, s5c4 or s7c6)");
}

int sine_order(ExpansionOrder order) {
  switch (order) {
    case ExpansionOrder::S3C2: return 3;
    case ExpansionOrder::S5C4: return 5;
    case ExpansionOrder::S7C6: return 7;
  }
  return 0;
}

int cosine_order(ExpansionOrder order) { return sine_order(order) - 1; }

int row_degree(ExpansionOrder order) { return 2 * sine_order(order) - 1; }

int det_degree(ExpansionOrder order) { return 12 * sine_order(order) - 6; }

std::array<Polynomial, 3> taylor_row(const BearingSample& sample, ExpansionOrder order,
                                     double tau) {
  const int s = sine_order(order);
  const int co = cosine_order(order);
  const double x = sample.x;
  const double K = k_factor(s);

  const std::vector<double> S = sin_trunc(sample.tau_i, s);
  const std::vector<double> C = cos_trunc(sample.tau_i, co);

  // c(w) = K * sin_trunc(w * tau) / w: degree s - 1, constant term K * tau.
  const std::vector<double> sin_tau = sin_trunc(tau, s);
  std::vector<double> c_mult(sin_tau.begin() + 1, sin_tau.end());
  for (double& v : c_mult) v *= K;

  // a~1 = cos_trunc - x sin_trunc, a~2 = -x cos_trunc - sin_trunc.
  std::vector<double> a1(s + 1, 0.0);
  std::vector<double> a2(s + 1, 0.0);
  for (int i = 0; i <= s; ++i) {
    const double Si = i < static_cast<int>(S.size()) ? S[i] : 0.0;
    const double Ci = i < static_cast<int>(C.size()) ? C[i] : 0.0;
    a1[i] = Ci - x * Si;
    a2[i] = -x * Ci - Si;
  }

  // Numerator of a~3 scaled by K: N = K * (x sin_trunc - cos_trunc + 1) / w.
  // The parenthesized series has zero constant term, so the division by w is
  // a coefficient shift.
  std::vector<double> N(s, 0.0);
  for (int i = 1; i <= s; ++i) {
    const double Si = i < static_cast<int>(S.size()) ? S[i] : 0.0;
    const double Ci = i < static_cast<int>(C.size()) ? C[i] : 0.0;
    N[i - 1] = K * (x * Si - Ci);
  }

  const Polynomial c_poly{std::vector<double>(c_mult)};
  const Polynomial a3_series{series_divide(N, c_mult, s)};
  return {c_poly * Polynomial{std::move(a1)}, c_poly * Polynomial{std::move(a2)},
          c_poly * a3_series};
}

Result<MeasurementMatrix> build_matrix(const std::vector<BearingSample>& samples,
                                       ExpansionOrder order, double tau) {
  if (samples.size() < 3) {
    return make_error(ErrorCode::TooFewSamples,
                      "build_matrix: need at least 3 samples, got " +
                          std::to_string(samples.size()));
  }
  for (size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].tau_i <= samples[i - 1].tau_i) {
      return make_error(ErrorCode::DuplicateTimestamp,
                        "build_matrix: tau_i not strictly increasing at sample " +
                            std::to_string(i));
    }
  }
  MeasurementMatrix B;
  B.order = order;
  B.tau = tau;
  B.rows.reserve(samples.size());
  for (const auto& sample : samples) B.rows.push_back(taylor_row(sample, order, tau));
  return B;
}

PolyMatrix3 gram(const MeasurementMatrix& B) {
  PolyMatrix3 M;
  for (int p = 0; p < 3; ++p) {
    for (int q = p; q < 3; ++q) {
      Polynomial acc;
      for (const auto& row : B.rows) acc = acc + row[p] * row[q];
      M.entries[p][q] = acc;
      if (q != p) M.entries[q][p] = acc;
    }
  }
  return M;
}

Polynomial det_poly(const PolyMatrix3& M) {
  const auto& m = M.entries;
  const Polynomial c00 = m[1][1] * m[2][2] - m[1][2] * m[1][2];
  const Polynomial c01 = m[0][1] * m[2][2] - m[1][2] * m[0][2];
  const Polynomial c02 = m[0][1] * m[1][2] - m[1][1] * m[0][2];
  return m[0][0] * c00 - m[0][1] * c01 + m[0][2] * c02;
}

Result<OmegaEstimate> solve_omega(const std::vector<BearingSample>& samples,
                                  ExpansionOrder order, double tau, const SolveConfig& config) {
  auto B = build_matrix(samples, order, tau);
  if (!B) return B.error();
  const Polynomial det = det_poly(gram(B.value()));
  if (det.is_zero()) {
    return make_error(ErrorCode::NoCandidates,
                      "solve_omega: determinant vanished identically (degenerate data)");
  }

  // Rescale to u = omega * T so degree-78 coefficients stay O(1): raw
  // coefficients carry tau_i^13-scale factors spanning ~18 orders of
  // magnitude.
  const double T = samples.back().tau_i;
  std::vector<double> du_coeffs(det.coeffs());
  double scale = 1.0;
  for (auto& c : du_coeffs) {
    c /= scale;
    scale *= T;
  }
  // Leading coefficients below the trim tolerance are roundoff-dominated and
  // contribute nothing on the O(1)-sized u range; dropping them keeps the
  // Sturm cascade away from divisions by junk.
  const Polynomial du = Polynomial{std::move(du_coeffs)}.trimmed().normalized();
  const double u_max = config.omega_max * T;

  std::vector<Candidate> candidates;
  const Polynomial ddu = du.derivative();
  if (!ddu.is_zero() && ddu.degree() >= 1) {
    auto critical = find_real_roots(ddu, -u_max, u_max, config.root_tol);
    if (!critical) {
      Error e = critical.error();
      if (e.code == ErrorCode::NumericalBreakdown) {
        e.message += " (while solving det'; a smaller window may condition the problem better)";
      }
      return e;
    }
    for (double u : critical.value()) candidates.push_back({u, du(u)});
  }
  candidates.push_back({-u_max, du(-u_max)});
  candidates.push_back({u_max, du(u_max)});

  // Smallest det value wins; near-ties (relative spread under tie_rel) prefer
  // the gentler motion, i.e. smaller |omega|.
  const Candidate* best = &candidates[0];
  for (const auto& cand : candidates) {
    const double ref = std::max({std::abs(best->value), std::abs(cand.value), 1e-300});
    if (cand.value < best->value - config.tie_rel * ref) {
      best = &cand;
    } else if (std::abs(cand.value - best->value) <= config.tie_rel * ref &&
               std::abs(cand.u) < std::abs(best->u)) {
      best = &cand;
    }
  }

  OmegaEstimate estimate;
  estimate.omega = best->u / T;
  estimate.residual = best->value;
  estimate.n_candidates = static_cast<int>(candidates.size());
  estimate.det_u = du;
  estimate.time_scale = T;

  // Polish the winner by re-rooting the extended-precision determinant slope
  // in a tight bracket; see row_ld / det_slope_ld. The double-coefficient
  // polynomial pins the minimizer to ~1e-8 only, which is visible when the
  // same data is re-solved under a different expansion scale constant.
  {
    const int s = sine_order(order);
    std::vector<std::array<std::vector<long double>, 3>> rows;
    rows.reserve(samples.size());
    for (const auto& sample : samples) rows.push_back(row_ld(sample, s, tau));

    for (const long double half : {2e-7L, 2e-6L}) {
      long double a = std::max<long double>(-config.omega_max, estimate.omega - half);
      long double b = std::min<long double>(config.omega_max, estimate.omega + half);
      long double fa = det_slope_ld(rows, a);
      long double fb = det_slope_ld(rows, b);
      if (!(fa < 0.0L && fb > 0.0L)) continue;  // not bracketing a minimum
      while (b - a > 1e-13L) {
        const long double mid = 0.5L * (a + b);
        const long double fm = det_slope_ld(rows, mid);
        if (fm == 0.0L) {
          a = b = mid;
          break;
        }
        (fm < 0.0L ? a : b) = mid;
      }
      estimate.omega = static_cast<double>(0.5L * (a + b));
      estimate.residual = du(estimate.omega * T);
      break;
    }
  }
  return estimate;
}

Result<StructureEstimate> recover_structure(const std::vector<BearingSample>& samples,
                                            ExpansionOrder order, double tau, double omega) {
  auto B = build_matrix(samples, order, tau);
  if (!B) return B.error();
  Eigen::MatrixXd numeric(static_cast<Eigen::Index>(B.value().rows.size()), 3);
  for (size_t i = 0; i < B.value().rows.size(); ++i) {
    for (int j = 0; j < 3; ++j) {
      numeric(static_cast<Eigen::Index>(i), j) = B.value().rows[i][j](omega);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(numeric, Eigen::ComputeThinV);
  const Eigen::Vector3d sigma = svd.singularValues();
  if (sigma(0) <= 0.0 || (sigma(1) - sigma(2)) < 1e-6 * sigma(0)) {
    return make_error(ErrorCode::DegenerateNullspace,
                      "recover_structure: two smallest singular values coincide");
  }
  Eigen::Vector3d v = svd.matrixV().col(2);
  StructureEstimate out;
  if (std::abs(v(2)) > 1e-12) {
    v /= v(2);
    out.scale_normalized = true;
  } else if (v(1) < 0.0) {
    v = -v;  // keep the forward-depth component positive for reporting
  }
  out.p0x = v(0);
  out.p0y = v(1);
  out.d = v(2);
  return out;
}

}  // namespace rotvel
