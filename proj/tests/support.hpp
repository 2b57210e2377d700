#pragma once

// Test-side reference computations, kept independent of the library's
// numeric paths on purpose.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace testref {

inline double norm_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
  return detail::adaptive_simpson(f, a, b, detail::simpson(f, a, b), tol, 60);
}

/// Gaussian tail probability by adaptive quadrature of the density.
inline double q_quadrature(double x) {
  if (x < 0.0) return 1.0 - q_quadrature(-x);
  const double hi = x + 45.0;
  return integrate(norm_pdf, x, hi, 1e-17);
}

/// Solve q_quadrature(x) = p by bisection.
inline double q_inverse_bisect(double p, double lo = -10.0, double hi = 10.0) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (q_quadrature(mid) > p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// E[Q(sqrt(2 G))] for G exponential with mean m (flat-fading antipodal link).
inline double rayleigh_ber(double m) { return 0.5 * (1.0 - std::sqrt(m / (1.0 + m))); }

/// E[Q(sqrt(X))] for X exponential with mean m.
inline double i0_exact(double m) { return 0.5 * (1.0 - std::sqrt(m / (2.0 + m))); }

/// E[Q(sqrt(2X + 2Y))], X and Y i.i.d. exponential with mean m
/// (two-branch combining over independent flat-fading links).
inline double mrc2_ber(double m) {
  const double p = rayleigh_ber(m);
  return p * p * (1.0 + 2.0 * (1.0 - p));
}

/// E[Q(sqrt(2 min{X,Y}))]: the minimum of two exponentials is exponential
/// with half the mean.
inline double i2_exact(double m) { return rayleigh_ber(0.5 * m); }

/// Two-sample Kolmogorov-Smirnov distance.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / a.size();
    const double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

/// Critical KS distance at significance alpha = 0.01.
inline double ks_critical_001(std::size_t n, std::size_t m) {
  return 1.628 * std::sqrt((static_cast<double>(n) + m) / (static_cast<double>(n) * m));
}

}  // namespace testref
