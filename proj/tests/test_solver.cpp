#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "rotvel/geometry.hpp"
#include "rotvel/rng.hpp"
#include "rotvel/solver.hpp"

using rotvel::BearingSample;
using rotvel::ExpansionOrder;
using rotvel::Polynomial;
using rotvel::Rng;

namespace {

constexpr ExpansionOrder kOrders[] = {ExpansionOrder::S3C2, ExpansionOrder::S5C4,
                                      ExpansionOrder::S7C6};

// Test-side reconstruction of the per-order multiplier polynomial value
// c(omega) = K * sin_trunc(omega * tau) / omega, K = -s! alternating.
double sin_trunc_val(double z, int s) {
  double acc = 0.0, term = z;
  for (int k = 1; k <= s; k += 2) {
    acc += term;
    term *= -z * z / double((k + 1) * (k + 2));
  }
  return acc;
}

double k_factor(int s) {
  double f = 1.0;
  for (int i = 2; i <= s; ++i) f *= i;
  return ((s - 1) / 2) % 2 == 0 ? f : -f;  // s=3 -> -6, s=5 -> +120, s=7 -> -5040
}

double c_value(double omega, double tau, int s) {
  if (std::abs(omega) < 1e-12) return k_factor(s) * tau;
  return k_factor(s) * sin_trunc_val(omega * tau, s) / omega;
}

// Noise-free bearings of one landmark over a window.
std::vector<BearingSample> clean_track(double omega, double window, int n,
                                       rotvel::WorldPoint2D p0, Rng& rng) {
  std::vector<double> times;
  for (int i = 0; i < n; ++i) times.push_back(rng.uniform(0.0, window));
  std::sort(times.begin(), times.end());
  std::vector<BearingSample> samples;
  for (double t : times) {
    auto pose = rotvel::relative_pose({omega, window, 1.0}, t);
    auto x = rotvel::project_bearing(p0, pose);
    REQUIRE(x);
    samples.push_back({x.value(), t});
  }
  return samples;
}

Eigen::MatrixXd eval_matrix(const rotvel::MeasurementMatrix& B, double omega) {
  Eigen::MatrixXd M(B.rows.size(), 3);
  for (size_t i = 0; i < B.rows.size(); ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = B.rows[i][j](omega);
  return M;
}

}  // namespace

TEST_CASE("taylor rows: degree law") {
  Rng rng(21);
  for (auto order : kOrders) {
    const int want = rotvel::row_degree(order);
    for (int it = 0; it < 20; ++it) {
      BearingSample s{rng.uniform(-0.5, 0.5), rng.uniform(0.01, 0.3)};
      auto row = rotvel::taylor_row(s, order, 0.3);
      CHECK(row[0].degree() == want);
      CHECK(row[1].degree() == want);
      CHECK(std::max({row[0].degree(), row[1].degree(), row[2].degree()}) == want);
    }
  }
}

TEST_CASE("taylor rows: omega = 0 evaluation") {
  const double x = 0.2, tau_i = 0.1, tau = 0.3;
  for (auto order : kOrders) {
    auto row = rotvel::taylor_row({x, tau_i}, order, tau);
    const double c0 = c_value(0.0, tau, rotvel::sine_order(order));
    CHECK(row[0](0.0) == doctest::Approx(c0 * 1.0).epsilon(1e-12));
    CHECK(row[1](0.0) == doctest::Approx(c0 * -x).epsilon(1e-12));
    CHECK(row[2](0.0) == doctest::Approx(c0 * tau_i * x / tau).epsilon(1e-12));
  }
}

TEST_CASE("taylor rows: frozen coefficients") {
  // s3c2 coefficients at x=0.2, tau_i=0.1, tau=0.3, frozen from an external
  // computer-algebra session (ascending powers of omega).
  auto row = rotvel::taylor_row({0.2, 0.1}, ExpansionOrder::S3C2, 0.3);
  const std::vector<double> b1 = {-1.8, 0.036, 0.036, -6e-4, -1.35e-4, 9e-7};
  const std::vector<double> b2 = {0.36, 0.18, -0.0072, -0.003, 2.7e-5, 4.5e-6};
  const std::vector<double> b3 = {-0.12, -0.03, 2e-4, 0.0, 2.4e-5, 6.75e-6};
  for (size_t k = 0; k < b1.size(); ++k) {
    CHECK(row[0].coeff(k) == doctest::Approx(b1[k]).epsilon(1e-12));
    CHECK(row[1].coeff(k) == doctest::Approx(b2[k]).epsilon(1e-12));
    CHECK(row[2].coeff(k) == doctest::Approx(b3[k]).epsilon(1e-12));
  }
}

TEST_CASE("taylor rows: agree with the exact rows at small angles") {
  Rng rng(22);
  const double tau = 0.3;
  for (int it = 0; it < 60; ++it) {
    const double tau_i = rng.uniform(0.02, tau);
    // Keep |omega * tau| <= 0.1 so the series is inside its accuracy budget.
    const double omega = rng.uniform(-0.1, 0.1) / tau;
    const double x = rng.uniform(-0.4, 0.4);
    auto row = rotvel::taylor_row({x, tau_i}, ExpansionOrder::S7C6, tau);
    auto exact = rotvel::exact_incidence_row(x, tau_i, {omega, tau, 1.0});
    REQUIRE(exact);
    const double c = c_value(omega, tau, 7);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(row[j](omega) / c - exact.value()[j]) < 1e-8);
  }
}

TEST_CASE("measurement matrix assembly") {
  Rng rng(23);
  std::vector<BearingSample> three = {{0.1, 0.05}, {0.12, 0.1}, {0.13, 0.2}};
  auto B = rotvel::build_matrix(three, ExpansionOrder::S5C4, 0.3);
  REQUIRE(B);
  CHECK(B.value().rows.size() == 3);

  auto too_few = rotvel::build_matrix({{0.1, 0.05}, {0.2, 0.1}}, ExpansionOrder::S5C4, 0.3);
  REQUIRE_FALSE(too_few);
  CHECK(too_few.error().code == rotvel::ErrorCode::TooFewSamples);

  auto dup = rotvel::build_matrix({{0.1, 0.05}, {0.2, 0.05}, {0.3, 0.1}},
                                  ExpansionOrder::S5C4, 0.3);
  REQUIRE_FALSE(dup);
  CHECK(dup.error().code == rotvel::ErrorCode::DuplicateTimestamp);

  // Rank deficiency at the true omega on noise-free data.
  const double omega = 0.3, window = 0.25;
  auto samples = clean_track(omega, window, 30, {0.5, 4.0}, rng);
  auto Bm = rotvel::build_matrix(samples, ExpansionOrder::S7C6, window);
  REQUIRE(Bm);
  Eigen::MatrixXd M = eval_matrix(Bm.value(), omega);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  CHECK(svd.singularValues()(2) < 1e-6 * svd.singularValues()(0));
}

TEST_CASE("gram matrix") {
  Rng rng(24);
  // Single row: rank one at every omega.
  std::vector<BearingSample> one = {{0.2, 0.05}, {0.25, 0.12}, {0.3, 0.21}};
  auto B = rotvel::build_matrix(one, ExpansionOrder::S3C2, 0.3);
  REQUIRE(B);
  rotvel::MeasurementMatrix single;
  single.order = B.value().order;
  single.tau = B.value().tau;
  single.rows.push_back(B.value().rows[0]);
  auto G1 = rotvel::gram(single);
  for (double w : {-0.4, 0.0, 0.7}) {
    Eigen::Matrix3d Mw;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) Mw(i, j) = G1.entries[i][j](w);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(Mw);
    CHECK(svd.singularValues()(1) < 1e-10 * std::max(1.0, svd.singularValues()(0)));
  }

  for (auto order : kOrders) {
    auto samples = clean_track(0.25, 0.3, 12, {0.4, 6.0}, rng);
    auto Bm = rotvel::build_matrix(samples, order, 0.3);
    REQUIRE(Bm);
    auto G = rotvel::gram(Bm.value());

    // Max entry degree is twice the row degree.
    int max_deg = -1;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) max_deg = std::max(max_deg, G.entries[i][j].degree());
    CHECK(max_deg == 2 * rotvel::row_degree(order));

    // Symmetry, coefficient-wise.
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const auto& a = G.entries[i][j];
        const auto& b = G.entries[j][i];
        const double scale = std::max(a.max_abs_coeff(), 1e-300);
        REQUIRE(a.degree() == b.degree());
        for (size_t k = 0; k < a.coeffs().size(); ++k)
          CHECK(std::abs(a.coeff(k) - b.coeff(k)) <= 1e-12 * scale);
      }

    // Evaluation oracle: eval(G, w) == eval(B, w)^T eval(B, w).
    for (int it = 0; it < 10; ++it) {
      const double w = rng.uniform(-1.0, 1.0);
      Eigen::MatrixXd Bw = eval_matrix(Bm.value(), w);
      Eigen::Matrix3d want = Bw.transpose() * Bw;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double got = G.entries[i][j](w);
          CHECK(std::abs(got - want(i, j)) <= 1e-9 * std::max(1.0, std::abs(want(i, j))));
        }
      // Diagonal entries are sums of squares.
      for (int i = 0; i < 3; ++i) CHECK(G.entries[i][i](w) >= -1e-9);
    }
  }
}

TEST_CASE("determinant polynomial") {
  rotvel::PolyMatrix3 I;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) I.entries[i][j] = Polynomial::constant(i == j ? 1.0 : 0.0);
  Polynomial det_I = rotvel::det_poly(I);
  REQUIRE(det_I.degree() == 0);
  CHECK(det_I.coeff(0) == doctest::Approx(1.0));

  rotvel::PolyMatrix3 Z = I;
  for (int j = 0; j < 3; ++j) {
    Z.entries[0][j] = Polynomial{};
    Z.entries[j][0] = Polynomial{};
  }
  CHECK(rotvel::det_poly(Z).is_zero());

  Rng rng(25);
  for (auto order : kOrders) {
    auto samples = clean_track(0.3, 0.3, 10, {0.6, 5.0}, rng);
    auto Bm = rotvel::build_matrix(samples, order, 0.3);
    REQUIRE(Bm);
    auto G = rotvel::gram(Bm.value());
    Polynomial det = rotvel::det_poly(G);
    CHECK(det.degree() == rotvel::det_degree(order));
    for (int it = 0; it < 10; ++it) {
      const double w = rng.uniform(-0.8, 0.8);
      Eigen::Matrix3d Mw;
      double entry_scale = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          Mw(i, j) = G.entries[i][j](w);
          entry_scale = std::max(entry_scale, std::abs(Mw(i, j)));
        }
      // Both sides are cofactor expansions; they agree to rounding noise on
      // the term scale (entry^3), which near-cancellation can leave far above
      // the determinant value itself.
      const double want = Mw.determinant();
      const double tol = 1e-12 * entry_scale * entry_scale * entry_scale;
      CHECK(std::abs(det(w) - want) <= tol);
    }
  }
}

TEST_CASE("solve: noise-free recovery and sign convention") {
  Rng rng(26);
  auto right = clean_track(0.3, 0.25, 30, {0.5, 4.0}, rng);
  auto est = rotvel::solve_omega(right, ExpansionOrder::S7C6, 0.25);
  REQUIRE(est);
  CHECK(std::abs(est.value().omega - 0.3) < 1e-4);
  CHECK(est.value().residual >= -1e-9);
  CHECK(est.value().n_candidates >= 1);

  auto left = clean_track(-0.4, 0.25, 30, {0.5, 4.0}, rng);
  auto est_l = rotvel::solve_omega(left, ExpansionOrder::S7C6, 0.25);
  REQUIRE(est_l);
  CHECK(est_l.value().omega < 0.0);
  CHECK(std::abs(est_l.value().omega + 0.4) < 1e-4);
}

TEST_CASE("solve: zero motion") {
  Rng rng(27);
  for (auto order : kOrders) {
    auto samples = clean_track(0.0, 0.25, 30, {0.7, 6.0}, rng);
    auto est = rotvel::solve_omega(samples, order, 0.25);
    REQUIRE(est);
    CHECK(std::abs(est.value().omega) < 1e-6);
  }
}

TEST_CASE("solve: per-order accuracy tiers, noise-free") {
  Rng rng(28);
  const double window = 0.25;
  for (int it = 0; it < 20; ++it) {
    const double omega = rng.uniform(-0.6, 0.6);  // |omega*tau_max| <= 0.15
    rotvel::WorldPoint2D p0{rng.uniform(-1.0, 1.0), rng.uniform(3.0, 15.0)};
    auto samples = clean_track(omega, window, 30, p0, rng);
    auto e7 = rotvel::solve_omega(samples, ExpansionOrder::S7C6, window);
    auto e5 = rotvel::solve_omega(samples, ExpansionOrder::S5C4, window);
    auto e3 = rotvel::solve_omega(samples, ExpansionOrder::S3C2, window);
    REQUIRE(e7);
    REQUIRE(e5);
    REQUIRE(e3);
    CHECK(std::abs(e7.value().omega - omega) < 1e-4);
    CHECK(std::abs(e5.value().omega - omega) < 1e-3);
    CHECK(std::abs(e3.value().omega - omega) < 1e-2);
  }
}

TEST_CASE("solve: order dominance on every noise-free instance") {
  Rng rng(29);
  const double window = 0.25;
  for (int it = 0; it < 30; ++it) {
    // |omega * tau_max| in [0.05, 0.2]
    const double mag = rng.uniform(0.05, 0.2) / window;
    const double omega = rng.uniform() < 0.5 ? mag : -mag;
    rotvel::WorldPoint2D p0{rng.uniform(-1.0, 1.0), rng.uniform(3.0, 15.0)};
    auto samples = clean_track(omega, window, 30, p0, rng);
    auto e7 = rotvel::solve_omega(samples, ExpansionOrder::S7C6, window);
    auto e5 = rotvel::solve_omega(samples, ExpansionOrder::S5C4, window);
    auto e3 = rotvel::solve_omega(samples, ExpansionOrder::S3C2, window);
    REQUIRE(e7);
    REQUIRE(e5);
    REQUIRE(e3);
    const double err7 = std::abs(e7.value().omega - omega);
    const double err5 = std::abs(e5.value().omega - omega);
    const double err3 = std::abs(e3.value().omega - omega);
    CHECK(err7 <= err5);
    CHECK(err5 <= err3);
  }
}

TEST_CASE("solve: invariant under the expansion scale constant") {
  Rng rng(30);
  const double window = 0.25;
  auto samples = clean_track(0.3, window, 30, {0.5, 4.0}, rng);
  // The scale constant only enters through the truncated series division, so
  // its footprint shrinks with the truncation order: s7c6 holds the headline
  // bound while the lower orders drift by their larger division tails.
  const struct {
    rotvel::ExpansionOrder order;
    double bound;
  } cases[] = {{rotvel::ExpansionOrder::S7C6, 1e-8},
               {rotvel::ExpansionOrder::S5C4, 1e-6},
               {rotvel::ExpansionOrder::S3C2, 1e-3}};
  for (const auto& c : cases) {
    auto base = rotvel::solve_omega(samples, c.order, 0.03);
    REQUIRE(base);
    for (double tau : {0.05, 0.1, 0.15, 0.2, 0.3}) {  // 10x range overall
      auto est = rotvel::solve_omega(samples, c.order, tau);
      REQUIRE(est);
      CHECK(std::abs(est.value().omega - base.value().omega) < c.bound);
    }
  }
}

TEST_CASE("solve: independent of the absolute time origin") {
  Rng rng(31);
  const double window = 0.25;
  auto samples = clean_track(0.35, window, 30, {0.4, 5.0}, rng);
  // Rebase from two different absolute anchors; relative offsets identical.
  std::vector<double> absolute_a, absolute_b;
  for (const auto& s : samples) {
    absolute_a.push_back(123.456 + s.tau_i);
    absolute_b.push_back(9876.5 + s.tau_i);
  }
  std::vector<BearingSample> rebased_a, rebased_b;
  for (size_t i = 0; i < samples.size(); ++i) {
    rebased_a.push_back({samples[i].x, absolute_a[i] - 123.456});
    rebased_b.push_back({samples[i].x, absolute_b[i] - 9876.5});
  }
  auto ea = rotvel::solve_omega(rebased_a, ExpansionOrder::S7C6, window);
  auto eb = rotvel::solve_omega(rebased_b, ExpansionOrder::S7C6, window);
  REQUIRE(ea);
  REQUIRE(eb);
  CHECK(std::abs(ea.value().omega - eb.value().omega) < 1e-10);
}

TEST_CASE("structure recovery") {
  Rng rng(32);
  const double window = 0.25;
  auto samples = clean_track(0.3, window, 30, {0.5, 4.0}, rng);
  auto est = rotvel::solve_omega(samples, ExpansionOrder::S7C6, window);
  REQUIRE(est);
  auto structure = rotvel::recover_structure(samples, ExpansionOrder::S7C6, window,
                                             est.value().omega);
  REQUIRE(structure);
  CHECK(structure.value().scale_normalized);
  CHECK(structure.value().p0x == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(structure.value().p0y == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(structure.value().d == doctest::Approx(1.0));

  // At a wrong omega the matrix is far from rank-deficient.
  auto B = rotvel::build_matrix(samples, ExpansionOrder::S7C6, window);
  REQUIRE(B);
  Eigen::JacobiSVD<Eigen::MatrixXd> at_hat(eval_matrix(B.value(), est.value().omega));
  Eigen::JacobiSVD<Eigen::MatrixXd> at_off(eval_matrix(B.value(), est.value().omega + 0.2));
  CHECK(at_off.singularValues()(2) > 100.0 * at_hat.singularValues()(2));

  // A constant bearing pins two directions at once: ambiguous nullspace.
  std::vector<BearingSample> flat;
  for (int i = 0; i < 10; ++i) flat.push_back({0.0, 0.025 * (i + 1)});
  auto ambiguous = rotvel::recover_structure(flat, ExpansionOrder::S7C6, window, 0.0);
  REQUIRE_FALSE(ambiguous);
  CHECK(ambiguous.error().code == rotvel::ErrorCode::DegenerateNullspace);
}
