#pragma once

#include <vector>

#include "rotvel/errors.hpp"

namespace rotvel {

// Dense univariate polynomial, real coefficients in ascending degree order.
// The zero polynomial is represented by an empty coefficient vector.
//
// Arithmetic preserves exact structural degrees (only exactly-zero leading
// coefficients are dropped): determinant expansions legitimately carry leading
// coefficients many orders below the largest one, and erasing them would
// change reported degrees. The relative tolerance kTrimRel is applied
// explicitly (via trimmed()) at the entry of degree-sensitive algorithms --
// Sturm chains and polynomial division -- where near-zero leading terms are
// roundoff junk that would otherwise be divided by.
class Polynomial {
 public:
  // Relative magnitude below which a leading coefficient is treated as zero
  // by trimmed().
  static constexpr double kTrimRel = 1e-12;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { strip_zeros(); }

  static Polynomial constant(double c0) { return Polynomial(std::vector<double>{c0}); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const std::vector<double>& coeffs() const { return c_; }
  double coeff(size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  double max_abs_coeff() const;

  // Horner evaluation.
  double operator()(double x) const;

  Polynomial derivative() const;
  // Coefficients divided by max_abs_coeff(); sign pattern (hence real roots)
  // unchanged. Zero polynomial stays zero.
  Polynomial normalized() const;
  // Copy with leading coefficients below rel * max_abs_coeff() removed.
  Polynomial trimmed(double rel = kTrimRel) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);
  friend Polynomial operator*(const Polynomial& p, double s) { return s * p; }
  Polynomial operator-() const { return -1.0 * *this; }

 private:
  void strip_zeros();

  std::vector<double> c_;
};

// One isolated real root: half-open bracket (lo, hi], Sturm count inside, and
// the refined location once refine_root has run (NaN until then).
struct RootInterval {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;                // distinct roots inside; >1 only for clusters at the isolation floor
  int multiplicity_hint = 1;    // from the square-free stage; 1 when unknown
};

struct RootSet {
  std::vector<RootInterval> intervals;  // sorted by lo, pairwise disjoint
};

// Standard Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k), each
// element normalized to unit max coefficient. Requires square-free input; an
// exactly vanishing remainder (common factor, or total cancellation) surfaces
// as NumericalBreakdown so the caller can rescale and retry.
Result<std::vector<Polynomial>> sturm_sequence(const Polynomial& p);

// Sign variations of the chain at x (zeros skipped).
int sign_variations(const std::vector<Polynomial>& chain, double x);

// Number of distinct real roots in (lo, hi].
int count_real_roots(const std::vector<Polynomial>& chain, double lo, double hi);

// p / gcd(p, p'): same root locations, all multiplicities reduced to one.
Polynomial square_free(const Polynomial& p);

// Recursive bisection by Sturm counts until every interval holds exactly one
// root or is narrower than the isolation floor (1e-12). p must be square-free.
Result<RootSet> isolate_roots(const Polynomial& p, double lo, double hi);

// Bisection to width <= tol followed by one safeguarded Newton step. The
// bracket must show a sign change; equal end signs are a caller bug or a
// tangency and are reported, not guessed.
Result<double> refine_root(const Polynomial& p, double lo, double hi, double tol = 1e-10);

// Convenience pipeline square_free -> sturm -> isolate -> refine. Floor-width
// cluster intervals (which cannot show a sign change) fall back to their
// midpoint; everything else goes through refine_root.
Result<std::vector<double>> find_real_roots(const Polynomial& p, double lo, double hi,
                                            double tol = 1e-10);

// Smallest k >= 1 such that the k-th derivative of p is non-negligible at
// root (relative to the coefficient scale); capped at 4. Fills the
// multiplicity_hint slot of RootInterval for callers that kept the original
// (non-square-free) polynomial.
int multiplicity_hint(const Polynomial& p, double root);

}  // namespace rotvel
