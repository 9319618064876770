#pragma once

#include <vector>

#include "projorb/holonomy.hpp"

// The trace variety and its two real components.
//
// In trace coordinates (w, x, y, z) the conjugacy classes of representations
// with C^3 = I (and C != I) form the surface
//
//   w + x + y + z = 3 + wy,      wy = zx.                       (1), (2)
//
// Away from the curve xy = x + y the surface is the graph of the chart
//
//   (x, y) |-> ( x(3-x-y)/(x+y-xy), x, y, y(3-x-y)/(x+y-xy) ).
//
// Substituting (a, b, c) = (w-1, x-1, y-1) turns the surface (with z
// eliminated) into b^2 - abc + a + c = 0, a quadratic in b with discriminant
// Disc = a^2 c^2 - 4a - 4c.
//
// The component with x > 1 and z > 1 (equivalently w > 1 and y > 1) carries
// the genuine structures; the other component contains the branched point
// (1, 1, 1, 1).  The involution (w, x, y, z) -> (y, z, w, x) preserves the
// variety and fixes exactly (3, 3, 3, 3) and (1, 1, 1, 1).

namespace projorb {

enum class Component { X, Branched };

inline const char* component_name(Component c) {
  return c == Component::X ? "X" : "Branched";
}

template <class T>
struct ModuliPoint {
  TraceCoords<T> t;
  Component component;
};

template <class T>
struct AbcPoint {
  T a{}, b{}, c{};
};

template <class T>
struct ChartPoint {
  T x{}, y{};
};

template <class T>
bool on_variety(const TraceCoords<T>& t) {
  return approx_eq(t.w + t.x + t.y + t.z, T(3) + t.w * t.y) && approx_eq(t.w * t.y, t.z * t.x);
}

// Component test: X iff x > 1 and z > 1.  On the variety itself x = 1
// forces z <= 1 and vice versa, so a point with exactly one coordinate on
// the boundary and the other beyond it cannot be classified and is rejected.
template <class T>
Component classify_component(const TraceCoords<T>& t) {
  const T one(1);
  bool x_eq = approx_eq(t.x, one), z_eq = approx_eq(t.z, one);
  bool x_gt = !x_eq && t.x > one, z_gt = !z_eq && t.z > one;
  if ((x_eq && z_gt) || (z_eq && x_gt)) throw error("not on either open criterion");
  if (x_gt && z_gt) {
    // cross-check the equivalent description of the structure component
    bool w_eq = approx_eq(t.w, one), y_eq = approx_eq(t.y, one);
    if (w_eq || y_eq || t.w < one || t.y < one)
      throw error("component criteria disagree (off-variety input?)");
    return Component::X;
  }
  return Component::Branched;
}

template <class T>
ModuliPoint<T> moduli_point(const TraceCoords<T>& t) {
  if (!on_variety(t)) throw error("point not on the trace variety");
  return ModuliPoint<T>{t, classify_component(t)};
}

template <class T>
bool chart_singular(const ChartPoint<T>& c) {
  return is_zero(c.x + c.y - c.x * c.y);
}

// Chart section (x, y) -> (w, x, y, z); undefined on xy = x + y.
template <class T>
ModuliPoint<T> chart_lift(const ChartPoint<T>& c) {
  if (chart_singular(c)) throw error("chart singular locus");
  T denom = c.x + c.y - c.x * c.y;
  T num = T(3) - c.x - c.y;
  TraceCoords<T> t{c.x * num / denom, c.x, c.y, c.y * num / denom};
  return moduli_point(t);
}

template <class T>
AbcPoint<T> abc_coords(const ModuliPoint<T>& p) {
  AbcPoint<T> abc{p.t.w - T(1), p.t.x - T(1), p.t.y - T(1)};
  // b^2 - abc + a + c = 0 holds identically on the variety
  T defect = abc.b * abc.b - abc.a * abc.b * abc.c + abc.a + abc.c;
  if (!is_zero(defect)) throw error("abc identity violated (point off variety?)");
  return abc;
}

template <class T>
T disc(const T& a, const T& c) {
  return a * a * c * c - T(4) * a - T(4) * c;
}

// Solutions b of b^2 - (ac) b + (a + c) = 0: two for Disc > 0, one for
// Disc = 0, none for Disc < 0.  Exact backend: requires Disc to be a
// rational square when positive.
template <class T>
std::vector<T> solve_b(const T& a, const T& c) {
  T d = disc(a, c);
  if (is_zero(d)) return {a * c / T(2)};
  if (to_double(d) < 0) return {};
  auto s = scalar_traits<T>::sqrt_checked(d);
  if (!s) throw error("irrational roots; use the float backend");
  return {(a * c - *s) / T(2), (a * c + *s) / T(2)};
}

template <class T>
ModuliPoint<T> involution(const ModuliPoint<T>& p) {
  TraceCoords<T> s{p.t.y, p.t.z, p.t.w, p.t.x};
  return moduli_point(s);
}

// Real fixed points of the involution: w = y and x = z force x = +-w on the
// variety; x = w gives w^2 - 4w + 3 = 0, x = -w gives w^2 = -3 (no real
// solutions).  The two fixed points are (3,3,3,3) on X and (1,1,1,1) on the
// branched component.
template <class T>
std::vector<ModuliPoint<T>> fixed_points_of_involution() {
  std::vector<ModuliPoint<T>> out;
  // roots of w^2 - 4w + 3: (4 +- sqrt(4))/2
  auto s = scalar_traits<T>::sqrt_checked(T(4));
  for (const T& w : {(T(4) + *s) / T(2), (T(4) - *s) / T(2)})
    out.push_back(moduli_point(TraceCoords<T>{w, w, w, w}));
  return out;
}

// Row-major grid sample of the chart rectangle, keeping only points on the
// structure component X.  Grid points hitting the chart singular curve (the
// caller is expected to avoid them) are skipped.
template <class T>
std::vector<ModuliPoint<T>> sample_X(const T& x_lo, const T& x_hi, const T& y_lo, const T& y_hi,
                                     int steps) {
  if (steps < 1) throw error("sample_X needs at least one step");
  std::vector<ModuliPoint<T>> out;
  auto value = [&](const T& lo, const T& hi, int i) {
    if (steps == 1) return lo;
    return lo + (hi - lo) * T(i) / T(steps - 1);
  };
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) {
      ChartPoint<T> c{value(x_lo, x_hi, i), value(y_lo, y_hi, j)};
      if (chart_singular(c)) continue;
      ModuliPoint<T> p = chart_lift(c);
      if (p.component == Component::X) out.push_back(p);
    }
  return out;
}

}  // namespace projorb
