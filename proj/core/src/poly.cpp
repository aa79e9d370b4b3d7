#include "rotvel/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace rotvel {

namespace {

// Remainder of a / b in place-free form; b must have nonzero leading coeff.
std::vector<double> remainder(std::vector<double> a, const std::vector<double>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const double lead = b.back();
  for (int k = static_cast<int>(a.size()) - 1 - db; k >= 0; --k) {
    const double f = a[db + k] / lead;
    if (f != 0.0) {
      for (int j = 0; j < db; ++j) a[k + j] -= f * b[j];
    }
    a[db + k] = 0.0;
  }
  a.resize(db > 0 ? db : 0);
  return a;
}

// Quotient of a / b; exact division is assumed (used for p / gcd(p, p')).
std::vector<double> quotient(std::vector<double> a, const std::vector<double>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const int dq = static_cast<int>(a.size()) - 1 - db;
  std::vector<double> q(dq + 1, 0.0);
  const double lead = b.back();
  for (int k = dq; k >= 0; --k) {
    const double f = a[db + k] / lead;
    q[k] = f;
    if (f != 0.0) {
      for (int j = 0; j <= db; ++j) a[k + j] -= f * b[j];
    }
  }
  return q;
}

int sign_of(long double v) { return v > 0.0L ? 1 : (v < 0.0L ? -1 : 0); }

constexpr double kIsolationFloor = 1e-12;

}  // namespace

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<double> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::normalized() const {
  const double m = max_abs_coeff();
  if (m == 0.0) return Polynomial();
  return (1.0 / m) * *this;
}

void Polynomial::strip_zeros() {
  size_t n = c_.size();
  while (n > 0 && c_[n - 1] == 0.0) --n;
  c_.resize(n);
}

Polynomial Polynomial::trimmed(double rel) const {
  const double m = max_abs_coeff();
  if (m == 0.0) return Polynomial();
  std::vector<double> out(c_);
  size_t n = out.size();
  while (n > 0 && std::abs(out[n - 1]) <= rel * m) --n;
  out.resize(n);
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += ai * b.c_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> out(p.c_);
  for (double& c : out) c *= s;
  return Polynomial(std::move(out));
}

Result<std::vector<Polynomial>> sturm_sequence(const Polynomial& p) {
  Polynomial p0 = p.trimmed().normalized();
  if (p0.is_zero()) {
    return make_error(ErrorCode::NumericalBreakdown, "sturm_sequence: zero polynomial");
  }
  std::vector<Polynomial> chain;
  chain.push_back(p0);
  Polynomial p1 = p0.derivative().normalized();
  if (p1.is_zero()) return chain;  // constant input: chain of length one
  chain.push_back(p1);
  while (chain.back().degree() >= 1) {
    const auto& hi = chain[chain.size() - 2];
    const auto& lo = chain.back();
    Polynomial r = Polynomial(remainder(hi.coeffs(), lo.coeffs())).trimmed();
    if (r.is_zero() || r.max_abs_coeff() < Polynomial::kTrimRel * hi.max_abs_coeff()) {
      // Exact common factor: the input was not square-free, or cancellation
      // wiped the remainder. Either way the chain's counting property is gone.
      return make_error(ErrorCode::NumericalBreakdown,
                        "sturm_sequence: remainder collapsed; input not square-free "
                        "or ill-conditioned (consider rescaling the variable)");
    }
    chain.push_back((-1.0 * r).normalized());
  }
  return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, double x) {
  int variations = 0;
  int prev = 0;
  for (const auto& p : chain) {
    const int s = sign_of(p(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  return variations;
}

int count_real_roots(const std::vector<Polynomial>& chain, double lo, double hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Polynomial square_free(const Polynomial& p) {
  Polynomial a = p.trimmed().normalized();
  if (a.degree() <= 1) return a;
  Polynomial b = a.derivative().normalized();
  // Euclidean gcd(p, p') with per-step normalization. A remainder is "zero"
  // when it is negligible against the dividend's scale, not its own: the
  // residue of an exact division is pure roundoff, but it is its own maximum,
  // so a self-relative test would never fire.
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero() && y.degree() >= 1) {
    Polynomial r = Polynomial(remainder(x.coeffs(), y.coeffs())).trimmed();
    if (r.is_zero() || r.max_abs_coeff() < Polynomial::kTrimRel * x.max_abs_coeff()) break;
    x = y;
    y = r.normalized();
  }
  const Polynomial& gcd = (!y.is_zero() && y.degree() >= 1) ? y : Polynomial::constant(1.0);
  if (gcd.degree() < 1) return a;
  Polynomial q(quotient(a.coeffs(), gcd.coeffs()));
  return q.normalized();
}

Result<RootSet> isolate_roots(const Polynomial& p, double lo, double hi) {
  auto chain = sturm_sequence(p);
  if (!chain) return chain.error();
  RootSet out;
  struct Span {
    double lo, hi;
    int count;
  };
  std::vector<Span> stack{{lo, hi, count_real_roots(chain.value(), lo, hi)}};
  while (!stack.empty()) {
    Span s = stack.back();
    stack.pop_back();
    if (s.count <= 0) continue;
    if (s.count == 1 || s.hi - s.lo < kIsolationFloor) {
      out.intervals.push_back(RootInterval{s.lo, s.hi, s.count, 1});
      continue;
    }
    const double mid = 0.5 * (s.lo + s.hi);
    const int left = count_real_roots(chain.value(), s.lo, mid);
    stack.push_back(Span{s.lo, mid, left});
    stack.push_back(Span{mid, s.hi, s.count - left});
  }
  std::sort(out.intervals.begin(), out.intervals.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

namespace {

// Extended-precision Horner. Roots that are minima of a near-singular parent
// polynomial leave only a shallow slope in its derivative; double-precision
// evaluation noise there widens the sign-ambiguous plateau to ~1e-8, which is
// above the accuracy the solver needs. 80-bit accumulation shrinks it by ~3
// orders of magnitude at negligible cost.
long double eval_ld(const Polynomial& p, long double x) {
  long double acc = 0.0L;
  const auto& c = p.coeffs();
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

}  // namespace

Result<double> refine_root(const Polynomial& p, double lo, double hi, double tol) {
  const long double flo = eval_ld(p, lo);
  const long double fhi = eval_ld(p, hi);
  if (flo == 0.0L) return lo;
  if (fhi == 0.0L) return hi;
  if (sign_of(flo) == sign_of(fhi)) {
    return make_error(ErrorCode::NoSignChange, "refine_root: equal signs at bracket endpoints");
  }
  long double a = lo, b = hi, fa = flo;
  while (b - a > tol) {
    const long double mid = 0.5L * (a + b);
    const long double fm = eval_ld(p, mid);
    if (fm == 0.0L) return static_cast<double>(mid);
    if (sign_of(fa) != sign_of(fm)) {
      b = mid;
    } else {
      a = mid;
      fa = fm;
    }
  }
  // One Newton polish, rejected if it would leave the original bracket.
  const Polynomial dp = p.derivative();
  long double x = 0.5L * (a + b);
  const long double slope = eval_ld(dp, x);
  if (slope != 0.0L) {
    const long double candidate = x - eval_ld(p, x) / slope;
    if (candidate >= lo && candidate <= hi) x = candidate;
  }
  return static_cast<double>(x);
}

int multiplicity_hint(const Polynomial& p, double root) {
  Polynomial d = p.trimmed().normalized();
  const double scale = std::max(1.0, std::abs(root));
  for (int k = 1; k <= 4; ++k) {
    d = d.derivative();
    if (d.is_zero()) return k;
    // Derivative magnitudes shrink with the chain; compare against the
    // current derivative's own coefficient scale.
    if (std::abs(d(root)) > 1e-6 * d.max_abs_coeff() * std::pow(scale, std::max(0, d.degree())))
      return k;
  }
  return 4;
}

Result<std::vector<double>> find_real_roots(const Polynomial& p, double lo, double hi,
                                            double tol) {
  Polynomial sf = square_free(p);
  if (sf.is_zero()) {
    return make_error(ErrorCode::NumericalBreakdown, "find_real_roots: zero polynomial");
  }
  auto isolated = isolate_roots(sf, lo, hi);
  if (!isolated) return isolated.error();
  std::vector<double> roots;
  roots.reserve(isolated.value().intervals.size());
  for (const auto& iv : isolated.value().intervals) {
    auto refined = refine_root(sf, iv.lo, iv.hi, tol);
    if (refined) {
      roots.push_back(refined.value());
    } else if (refined.error().code == ErrorCode::NoSignChange &&
               iv.hi - iv.lo < 2.0 * kIsolationFloor) {
      // Cluster collapsed below the isolation floor: the midpoint is within
      // floor width of every root in the cluster.
      roots.push_back(0.5 * (iv.lo + iv.hi));
    } else {
      return refined.error();
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace rotvel
