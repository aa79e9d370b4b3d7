#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rotvel/poly.hpp"
#include "rotvel/rng.hpp"

using rotvel::Polynomial;
using rotvel::Rng;

namespace {

Polynomial random_poly(Rng& rng, int degree, double scale = 1.0) {
  std::vector<double> c(degree + 1);
  for (auto& v : c) v = rng.uniform(-scale, scale);
  if (std::abs(c.back()) < 0.1) c.back() = 0.5;  // keep the degree honest
  return Polynomial(c);
}

// Expand prod (x - r) over the planted roots.
Polynomial from_roots(const std::vector<double>& roots) {
  Polynomial p = Polynomial::constant(1.0);
  for (double r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

double term_sum_eval(const Polynomial& p, double x) {
  double acc = 0.0;
  for (size_t i = 0; i < p.coeffs().size(); ++i) acc += p.coeffs()[i] * std::pow(x, i);
  return acc;
}

}  // namespace

TEST_CASE("polynomial representation and trimming") {
  CHECK(Polynomial{}.is_zero());
  CHECK(Polynomial{}.degree() == -1);
  CHECK(Polynomial({0.0, 0.0}).is_zero());

  // Construction keeps every nonzero coefficient: structural degree is exact.
  Polynomial p({1.0, 2.0, 1e-15});
  CHECK(p.degree() == 2);
  CHECK(p.leading() == 1e-15);

  // Explicit trim drops leading coefficients below the relative threshold.
  CHECK(p.trimmed().degree() == 1);
  CHECK(p.trimmed().leading() == 2.0);

  // An absolutely tiny but relatively dominant coefficient survives the trim.
  Polynomial q({1e-20, 0.0, 1e-18});
  CHECK(q.trimmed().degree() == 2);
}

TEST_CASE("arithmetic identities") {
  Polynomial one_plus_x({1.0, 1.0});
  Polynomial one_minus_x({1.0, -1.0});
  Polynomial prod = one_plus_x * one_minus_x;
  REQUIRE(prod.degree() == 2);
  CHECK(prod.coeff(0) == doctest::Approx(1.0));
  CHECK(prod.coeff(1) == doctest::Approx(0.0));
  CHECK(prod.coeff(2) == doctest::Approx(-1.0));

  Polynomial p({2.0, 3.0});
  Polynomial sum = p + Polynomial{};
  CHECK(sum.coeffs() == p.coeffs());

  Rng rng(1);
  for (int it = 0; it < 50; ++it) {
    Polynomial a = random_poly(rng, 1 + int(rng.uniform() * 12));
    Polynomial b = random_poly(rng, 1 + int(rng.uniform() * 12));
    Polynomial ab = a * b;
    CHECK(ab.degree() == a.degree() + b.degree());
    // Naive convolution oracle.
    std::vector<double> conv(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
    for (size_t i = 0; i < a.coeffs().size(); ++i)
      for (size_t j = 0; j < b.coeffs().size(); ++j) conv[i + j] += a.coeffs()[i] * b.coeffs()[j];
    for (size_t k = 0; k < conv.size(); ++k) CHECK(ab.coeff(k) == doctest::Approx(conv[k]));
  }
}

TEST_CASE("arithmetic commutes and associates at high degree") {
  Rng rng(2);
  for (int it = 0; it < 10; ++it) {
    Polynomial a = random_poly(rng, 40);
    Polynomial b = random_poly(rng, 40);
    Polynomial c = random_poly(rng, 7);

    Polynomial ab = a * b;
    Polynomial ba = b * a;
    REQUIRE(ab.degree() == 80);
    double scale = ab.max_abs_coeff();
    for (size_t k = 0; k < ab.coeffs().size(); ++k)
      CHECK(std::abs(ab.coeff(k) - ba.coeff(k)) <= 1e-12 * scale);

    Polynomial left = (a * b) * c;
    Polynomial right = a * (b * c);
    scale = left.max_abs_coeff();
    for (size_t k = 0; k < left.coeffs().size(); ++k)
      CHECK(std::abs(left.coeff(k) - right.coeff(k)) <= 1e-12 * scale);

    Polynomial s1 = (a + b) + c;
    Polynomial s2 = a + (b + c);
    for (size_t k = 0; k < s1.coeffs().size(); ++k)
      CHECK(s1.coeff(k) == doctest::Approx(s2.coeff(k)));
  }
}

TEST_CASE("evaluation") {
  Polynomial p({-1.0, 0.0, 1.0});  // x^2 - 1
  CHECK(p(1.0) == doctest::Approx(0.0));
  CHECK(Polynomial::constant(42.0)(1234.5) == 42.0);

  Rng rng(3);
  for (int it = 0; it < 30; ++it) {
    Polynomial q = random_poly(rng, 2 + int(rng.uniform() * 20));
    double x = rng.uniform(-2.0, 2.0);
    double horner = q(x);
    double oracle = term_sum_eval(q, x);
    CHECK(std::abs(horner - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
  }
}

TEST_CASE("derivative") {
  Polynomial cubed({0.0, 0.0, 0.0, 1.0});
  Polynomial d = cubed.derivative();
  REQUIRE(d.degree() == 2);
  CHECK(d.coeff(2) == 3.0);
  CHECK(Polynomial::constant(5.0).derivative().is_zero());

  Rng rng(4);
  Polynomial q = random_poly(rng, 15);
  Polynomial dq = q.derivative();
  for (int it = 0; it < 20; ++it) {
    double x = rng.uniform(-1.0, 1.0);
    double h = 1e-6;
    double fd = (q(x + h) - q(x - h)) / (2.0 * h);
    double got = dq(x);
    CHECK(std::abs(got - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("square-free reduction") {
  // (x-1)^2 -> proportional to (x-1)
  Polynomial sq = Polynomial({-1.0, 1.0}) * Polynomial({-1.0, 1.0});
  Polynomial sf = rotvel::square_free(sq);
  REQUIRE(sf.degree() == 1);
  CHECK(std::abs(sf(1.0)) <= 1e-12 * sf.max_abs_coeff());

  // Square-free input comes back proportional to itself.
  Polynomial p = from_roots({-3.0, 0.5, 2.0});
  Polynomial q = rotvel::square_free(p);
  REQUIRE(q.degree() == p.degree());
  double ratio = q.leading() / p.leading();
  for (size_t k = 0; k < p.coeffs().size(); ++k)
    CHECK(q.coeff(k) == doctest::Approx(ratio * p.coeff(k)));

  // (x-1)^2 (x+2)^3 -> degree 2, roots {1, -2} preserved.
  Polynomial m = from_roots({1.0, 1.0, -2.0, -2.0, -2.0});
  Polynomial msf = rotvel::square_free(m);
  REQUIRE(msf.degree() == 2);
  CHECK(std::abs(msf(1.0)) <= 1e-9 * msf.max_abs_coeff());
  CHECK(std::abs(msf(-2.0)) <= 1e-9 * msf.max_abs_coeff());
  CHECK(rotvel::multiplicity_hint(m, 1.0) == 2);
  CHECK(rotvel::multiplicity_hint(m, -2.0) == 3);

  // gcd(square_free(p), square_free(p)') is constant: the remainder cascade
  // of the Euclid loop must bottom out at degree 0.
  Polynomial g = msf;
  Polynomial dg = g.derivative();
  auto chain = rotvel::sturm_sequence(g);
  REQUIRE(chain);
  CHECK(chain.value().back().degree() == 0);
  (void)dg;
}

TEST_CASE("sturm root counting") {
  Polynomial x2m2({-2.0, 0.0, 1.0});
  auto chain = rotvel::sturm_sequence(x2m2);
  REQUIRE(chain);
  CHECK(rotvel::count_real_roots(chain.value(), -2.0, 2.0) == 2);

  Polynomial x2p1({1.0, 0.0, 1.0});
  auto chain2 = rotvel::sturm_sequence(x2p1);
  REQUIRE(chain2);
  CHECK(rotvel::count_real_roots(chain2.value(), -100.0, 100.0) == 0);

  Rng rng(5);
  for (int it = 0; it < 25; ++it) {
    // Plant up to 10 distinct roots in (-1, 1).
    int n = 3 + int(rng.uniform() * 8);
    std::vector<double> roots;
    while (int(roots.size()) < n) {
      double r = rng.uniform(-0.95, 0.95);
      bool ok = true;
      for (double q : roots) ok = ok && std::abs(q - r) > 0.02;
      if (ok) roots.push_back(r);
    }
    Polynomial p = from_roots(roots);
    auto ch = rotvel::sturm_sequence(p);
    REQUIRE(ch);
    CHECK(rotvel::count_real_roots(ch.value(), -1.0, 1.0) == n);

    // Additivity across an interior split that is not a root.
    double mid = 0.0123456789;
    int left = rotvel::count_real_roots(ch.value(), -1.0, mid);
    int right = rotvel::count_real_roots(ch.value(), mid, 1.0);
    CHECK(left + right == n);
  }
}

TEST_CASE("root isolation") {
  Polynomial p = from_roots({0.0, 1.0, -1.0});
  auto set = rotvel::isolate_roots(p, -2.0, 2.0);
  REQUIRE(set);
  REQUIRE(set.value().intervals.size() == 3);
  const auto& iv = set.value().intervals;
  for (size_t i = 0; i + 1 < iv.size(); ++i) CHECK(iv[i].hi <= iv[i + 1].lo);
  std::vector<double> expect = {-1.0, 0.0, 1.0};
  for (size_t i = 0; i < 3; ++i) {
    CHECK(iv[i].lo < expect[i]);
    CHECK(expect[i] <= iv[i].hi);
    CHECK(iv[i].count == 1);
  }

  Polynomial pd({1.0, 0.0, 1.0});  // positive definite
  auto empty = rotvel::isolate_roots(pd, -5.0, 5.0);
  REQUIRE(empty);
  CHECK(empty.value().intervals.empty());

  Rng rng(6);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + int(rng.uniform() * 6);
    std::vector<double> roots;
    while (int(roots.size()) < n) {
      double r = rng.uniform(-0.9, 0.9);
      bool ok = true;
      for (double q : roots) ok = ok && std::abs(q - r) > 0.05;
      if (ok) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    Polynomial p2 = from_roots(roots);
    auto iso = rotvel::isolate_roots(p2, -1.0, 1.0);
    REQUIRE(iso);
    REQUIRE(iso.value().intervals.size() == roots.size());
    for (size_t i = 0; i < roots.size(); ++i) {
      CHECK(iso.value().intervals[i].lo < roots[i]);
      CHECK(roots[i] <= iso.value().intervals[i].hi);
    }
  }
}

TEST_CASE("root refinement") {
  Polynomial x2m2({-2.0, 0.0, 1.0});
  auto sqrt2 = rotvel::refine_root(x2m2, 1.0, 2.0);
  REQUIRE(sqrt2);
  CHECK(std::abs(sqrt2.value() - std::sqrt(2.0)) < 1e-10);

  Polynomial lin({-6.0, 3.0});
  auto two = rotvel::refine_root(lin, 0.0, 10.0);
  REQUIRE(two);
  CHECK(two.value() == doctest::Approx(2.0).epsilon(1e-12));

  // Equal end signs are reported, not guessed.
  Polynomial tangent = Polynomial({-1.0, 1.0}) * Polynomial({-1.0, 1.0});
  auto bad = rotvel::refine_root(tangent, 0.0, 2.0);
  REQUIRE_FALSE(bad);
  CHECK(bad.error().code == rotvel::ErrorCode::NoSignChange);

  Rng rng(7);
  for (int it = 0; it < 50; ++it) {
    double planted = rng.uniform(-0.9, 0.9);
    Polynomial p = from_roots({planted, 1.5, -1.5});
    auto found = rotvel::refine_root(p, planted - 0.05, planted + 0.05);
    REQUIRE(found);
    CHECK(std::abs(found.value() - planted) < 1e-9);
  }
}

TEST_CASE("end-to-end planted root recovery") {
  Rng rng(8);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + int(rng.uniform() * 8);
    std::vector<double> roots;
    while (int(roots.size()) < n) {
      double r = rng.uniform(-0.9, 0.9);
      bool ok = true;
      for (double q : roots) ok = ok && std::abs(q - r) > 0.03;
      if (ok) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    Polynomial p = from_roots(roots);
    auto found = rotvel::find_real_roots(p, -1.0, 1.0);
    REQUIRE(found);
    REQUIRE(found.value().size() == roots.size());
    for (size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(found.value()[i] - roots[i]) < 1e-8);
  }
}
