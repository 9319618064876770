#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "projorb/scalar.hpp"

// Real roots of low-degree monic polynomials.
//
// Float backend: closed-form trigonometric/Cardano solutions followed by a
// few Newton steps, so simple roots come out near machine precision.
// Exact backend: rational-root extraction plus quadratic factoring, which
// succeeds exactly when the polynomial splits over Q.

namespace projorb {

// Discriminant of the monic cubic x^3 + p x^2 + q x + r,
// 18pqr - 4p^3 r + p^2 q^2 - 4 q^3 - 27 r^2.
template <class T>
T cubic_disc(const T& p, const T& q, const T& r) {
  return T(18) * p * q * r - T(4) * p * p * p * r + p * p * q * q - T(4) * q * q * q -
         T(27) * r * r;
}

namespace detail {

inline double polish_root(double x, const std::vector<double>& monic_coeffs) {
  // monic_coeffs: {1, c_{n-1}, ..., c_0}
  for (int it = 0; it < 8; ++it) {
    double f = 0.0, df = 0.0;
    for (double c : monic_coeffs) {
      df = df * x + f;
      f = f * x + c;
    }
    if (df == 0.0) break;
    double step = f / df;
    double nx = x - step;
    if (!std::isfinite(nx) || nx == x) break;
    x = nx;
  }
  return x;
}

}  // namespace detail

// Monic quadratic x^2 + b x + c; roots with multiplicity (0, 1, or 2 values).
inline std::vector<double> quadratic_real_roots(double b, double c) {
  double disc = b * b - 4.0 * c;
  double scale = std::max({1.0, b * b, std::abs(c)});
  if (std::abs(disc) <= float_tolerance() * scale) return {-b / 2.0, -b / 2.0};
  if (disc < 0.0) return {};
  // Numerically stable split: avoid cancellation in -b +- sqrt(disc).
  double s = std::sqrt(disc);
  double r1 = (b >= 0.0) ? (-b - s) / 2.0 : (-b + s) / 2.0;
  double r2 = c / r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

// Monic cubic x^3 + c2 x^2 + c1 x + c0.  Returns 3 roots (with multiplicity)
// when the discriminant is >= 0, otherwise the single real root.  Sorted
// ascending.
inline std::vector<double> cubic_real_roots(double c2, double c1, double c0) {
  const double disc = cubic_disc(c2, c1, c0);
  const double scale = std::max({1.0, std::abs(c2), std::abs(c1), std::abs(c0)});
  const double disc_tol = float_tolerance() * scale * scale * scale * scale;
  const std::vector<double> coeffs = {1.0, c2, c1, c0};

  // depressed form t^3 + pt + q with x = t - c2/3
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

  std::vector<double> roots;
  if (std::abs(disc) <= disc_tol) {
    // Repeated root.  Triple iff the depressed cubic is t^3.
    if (std::abs(p) <= float_tolerance() * scale * scale) {
      roots = {-shift, -shift, -shift};
    } else {
      // The double root is a simple root of the derivative; polish it there,
      // and polish the remaining simple root on the cubic itself.
      double dbl = (9.0 * c0 - c2 * c1) / (2.0 * (c2 * c2 - 3.0 * c1));
      dbl = detail::polish_root(dbl, {1.0, 2.0 * c2 / 3.0, c1 / 3.0});
      double simple = detail::polish_root(-c2 - 2.0 * dbl, coeffs);
      roots = {dbl, dbl, simple};
    }
  } else if (disc > 0.0) {
    // three distinct real roots: trigonometric method
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      double t = m * std::cos(theta - 2.0 * M_PI * k / 3.0);
      roots.push_back(detail::polish_root(t - shift, coeffs));
    }
  } else {
    // one real root: Cardano
    double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    double u = std::cbrt(-q / 2.0 + s);
    double v = std::cbrt(-q / 2.0 - s);
    roots.push_back(detail::polish_root(u + v - shift, coeffs));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0: all real roots, found by
// bracketing between the critical points (roots of the derivative cubic).
// Repeated roots are reported once per sign change plus once per tangency.
inline std::vector<double> quartic_real_roots(double c3, double c2, double c1, double c0) {
  const std::vector<double> coeffs = {1.0, c3, c2, c1, c0};
  auto f = [&](double x) {
    double v = 0.0;
    for (double c : coeffs) v = v * x + c;
    return v;
  };
  std::vector<double> crit = cubic_real_roots(3.0 * c3 / 4.0, c2 / 2.0, c1 / 4.0);
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

  double bound = 1.0;
  for (int k = 1; k <= 4; ++k) bound = std::max(bound, std::abs(coeffs[static_cast<std::size_t>(k)]));
  bound = 1.0 + bound;

  std::vector<double> grid = {-bound};
  for (double c : crit)
    if (c > -bound && c < bound) grid.push_back(c);
  grid.push_back(bound);

  const double scale = std::max(1.0, std::pow(bound, 4.0));
  const double ftol = float_tolerance() * scale;
  std::vector<double> roots;
  auto push_root = [&](double r) {
    r = detail::polish_root(r, coeffs);
    roots.push_back(r);
  };
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double a = grid[i], b = grid[i + 1];
    double fa = f(a), fb = f(b);
    if (fa == 0.0) continue;  // counted as tangency/endpoint below
    if (fa * fb < 0.0) {
      for (int it = 0; it < 80; ++it) {
        double mid = (a + b) / 2.0;
        double fm = f(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if (fa * fm < 0.0) {
          b = mid;
          fb = fm;
        } else {
          a = mid;
          fa = fm;
        }
      }
      push_root((a + b) / 2.0);
    }
  }
  // Tangential roots: critical points where the quartic vanishes.
  for (double c : crit)
    if (std::abs(f(c)) <= ftol) push_root(c);
  std::sort(roots.begin(), roots.end());
  // Merge duplicates produced by tangency + bracketing.
  std::vector<double> merged;
  for (double r : roots) {
    if (!merged.empty() && std::abs(r - merged.back()) <= 1e-7 * std::max(1.0, std::abs(r)))
      continue;
    merged.push_back(r);
  }
  return merged;
}

namespace detail {

// Divisors of |n|, up to a trial-division cap; nullopt if n is too hard to
// factor that way (callers then fall back to the float path).
inline std::optional<std::vector<BigInt>> divisors(BigInt n) {
  if (n < 0) n = -n;
  if (n == 0) return std::nullopt;
  std::vector<std::pair<BigInt, int>> factors;
  BigInt m = n;
  for (BigInt p = 2; p * p <= m; ++p) {
    if (p > 1000000) return std::nullopt;
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.emplace_back(p, e);
    }
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<BigInt> divs = {BigInt(1)};
  for (auto& [p, e] : factors) {
    std::size_t base = divs.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
    if (divs.size() > 4096) return std::nullopt;
  }
  return divs;
}

}  // namespace detail

// Exact real roots of the monic cubic x^3 + c2 x^2 + c1 x + c0 over Q.
// Returns all three roots (with multiplicity, ascending) when the cubic
// splits over the rationals; the single rational root when the other two are
// complex; nullopt when real irrational roots are involved.
inline std::optional<std::vector<Rat>> rational_cubic_roots(const Rat& c2, const Rat& c1,
                                                            const Rat& c0) {
  // Clear denominators: a x^3 + b x^2 + c x + d with integer coefficients.
  BigInt lcm = denominator(c2);
  lcm = lcm / mp::gcd(lcm, denominator(c1)) * denominator(c1);
  lcm = lcm / mp::gcd(lcm, denominator(c0)) * denominator(c0);
  BigInt a = lcm;
  BigInt b = numerator(c2) * (lcm / denominator(c2));
  BigInt c = numerator(c1) * (lcm / denominator(c1));
  BigInt d = numerator(c0) * (lcm / denominator(c0));

  auto eval = [&](const Rat& x) { return ((Rat(a) * x + b) * x + c) * x + d; };

  std::optional<Rat> root;
  if (d == 0) {
    root = Rat(0);
  } else {
    auto dn = detail::divisors(d);
    auto dq = detail::divisors(a);
    if (dn && dq) {
      for (const BigInt& pn : *dn) {
        for (const BigInt& qn : *dq) {
          if (mp::gcd(pn, qn) != 1) continue;
          Rat cand = Rat(pn) / Rat(qn);
          if (eval(cand) == 0) {
            root = cand;
            break;
          }
          cand = -cand;
          if (eval(cand) == 0) {
            root = cand;
            break;
          }
        }
        if (root) break;
      }
    } else {
      return std::nullopt;  // factoring gave up
    }
  }
  if (!root) {
    // No rational root: either one irrational real root (disc < 0 gives a
    // single real root which is then irrational) or three irrational ones.
    return std::nullopt;
  }
  // Deflate: x^3+c2x^2+c1x+c0 = (x - r)(x^2 + ex + f)
  Rat r = *root;
  Rat e = c2 + r;
  Rat f = c1 + r * e;
  Rat disc = e * e - Rat(4) * f;
  std::vector<Rat> roots = {r};
  if (disc == 0) {
    roots.push_back(-e / 2);
    roots.push_back(-e / 2);
  } else if (disc > 0) {
    auto s = scalar_traits<Rat>::sqrt_checked(disc);
    if (!s) return std::nullopt;  // real but irrational pair
    roots.push_back((-e - *s) / 2);
    roots.push_back((-e + *s) / 2);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Rational roots of a monic quartic with multiplicity (not necessarily all
// four).  Used for exact eigenvalue extraction.
inline std::vector<Rat> rational_quartic_roots(const std::array<Rat, 5>& c) {
  std::vector<Rat> found;
  // Work with the polynomial and deflate every time a root is found.
  std::vector<Rat> poly(c.begin(), c.end());  // degree 4, leading 1
  auto eval = [](const std::vector<Rat>& p, const Rat& x) {
    Rat v = 0;
    for (const Rat& ck : p) v = v * x + ck;
    return v;
  };
  // Candidate roots from the constant term of the original quartic.
  std::vector<Rat> candidates = {Rat(0), Rat(1), Rat(-1)};
  BigInt lcm = 1;
  for (const Rat& ck : poly) lcm = lcm / mp::gcd(lcm, denominator(ck)) * denominator(ck);
  BigInt lead = lcm;
  BigInt tail = numerator(poly.back()) * (lcm / denominator(poly.back()));
  if (tail != 0) {
    auto dn = detail::divisors(tail);
    auto dq = detail::divisors(lead);
    if (dn && dq)
      for (const BigInt& pn : *dn)
        for (const BigInt& qn : *dq) {
          candidates.push_back(Rat(pn) / Rat(qn));
          candidates.push_back(-Rat(pn) / Rat(qn));
        }
  }
  for (const Rat& cand : candidates) {
    while (poly.size() > 1 && eval(poly, cand) == 0) {
      found.push_back(cand);
      // synthetic division by (x - cand): q_0 = p_0, q_i = p_i + cand*q_{i-1}
      std::vector<Rat> next;
      Rat acc = 0;
      for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        acc = (i == 0) ? poly[0] : poly[i] + cand * acc;
        next.push_back(acc);
      }
      poly = next;
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace projorb
