#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "projorb/holonomy.hpp"
#include "projorb/linalg.hpp"
#include "projorb/moduli.hpp"
#include "projorb/projective.hpp"
#include "projorb/roots.hpp"

// Peripheral (cusp) analysis.  The two ideal vertices v1 and v4 are
// stabilized by (alpha, gamma) and (beta, gamma) respectively; each
// stabilizer contains a rank-2 abelian subgroup whose spectrum decides
// whether the end is a standard (parabolic) cusp or a generalized one.

namespace projorb {

// Monic cubic factor of det(lambda I - AC) = (lambda - 1) * cubic, written
// directly in trace coordinates.  Coefficients leading-first: {1, p, q, -1}.
template <class T>
std::array<T, 4> ac_char_poly_formula(const TraceCoords<T>& t) {
  const T &w = t.w, &x = t.x, &y = t.y, &z = t.z;
  T p = -(y * x) - w + T(2) * x + T(2) * y - z;
  T q = z * w - T(2) * w + x + y - T(2) * z;
  return {T(1), p, q, T(-1)};
}

// (lambda - 1) * cubic, expanded to the full quartic {1, c1, c2, c3, c4}.
template <class T>
std::array<T, 5> peripheral_quartic(const std::array<T, 4>& cubic) {
  const T &p = cubic[1], &q = cubic[2];
  return {T(1), p - T(1), q - p, T(-1) - q, T(1)};
}

// Inverse of the above: divide a peripheral characteristic polynomial by
// (lambda - 1), checking that 1 really is a root.
template <class T>
std::array<T, 4> peripheral_cubic_factor(const std::array<T, 5>& quartic) {
  if (!is_zero(eval_poly(quartic, T(1))))
    throw error("peripheral polynomial lacks the unit eigenvalue");
  T a = quartic[1] + quartic[0];
  T b = quartic[2] + a;
  return {quartic[0], a, b, quartic[3] + b};
}

// Discriminant of the cusp cubic as a closed-form function of the chart
// coordinates.  Agrees with the classical cubic discriminant of
// ac_char_poly_formula(chart_lift(c)) and is nonnegative wherever defined.
template <class T>
T closed_form_discriminant(const ChartPoint<T>& c) {
  if (chart_singular(c)) throw error("chart singular locus");
  const T &x = c.x, &y = c.y;
  T f1 = y * y - T(3) * y + T(3);
  T f2 = x * x - T(3) * x + T(3);
  T f3 = x - y;
  T f4 = x * x * y * y - T(3) * x * x * y - T(3) * x * y * y + T(3) * x * x +
         T(3) * x * y + T(3) * y * y;
  T den = x * y - x - y;
  T num = f1 * f1 * f2 * f2 * f3 * f3 * f4 * f4;
  T d2 = den * den;
  return num / (d2 * d2 * d2);
}

enum class CuspType { Standard, Generalized, OffComponent };

inline const char* cusp_type_name(CuspType t) {
  switch (t) {
    case CuspType::Standard: return "standard";
    case CuspType::Generalized: return "generalized";
    default: return "off-component";
  }
}

template <class T>
struct Flag {
  ProjPoint<T> point;
  ProjSubspace<T> plane;
};

template <class T>
struct CuspReport {
  CuspType type = CuspType::OffComponent;
  std::vector<double> eigenvalues;  // real peripheral eigenvalues, descending
  std::optional<Flag<T>> flag;
};

namespace detail {

// lambda^3 + p lambda^2 + q lambda - 1 has all roots real and positive
// iff disc >= 0 (all real), p < 0 (positive sum) and q > 0 (positive pair
// sums); the constant term already excludes a zero root, and substituting
// -lambda leaves no sign changes, so no negative roots.
template <class T>
bool positive_real_spectrum(const T& p, const T& q) {
  T d = cubic_disc(p, q, T(-1));
  bool all_real = is_zero(d) || to_double(d) > 0;
  bool sum_pos = !is_zero(p) && to_double(p) < 0;
  bool pair_pos = !is_zero(q) && to_double(q) > 0;
  return all_real && sum_pos && pair_pos;
}

template <class T>
CuspReport<T> cusp_report_from_cubic(const std::array<T, 4>& cubic, Component comp) {
  const T &p = cubic[1], &q = cubic[2];
  CuspReport<T> rep;
  rep.eigenvalues = cubic_real_roots(to_double(p), to_double(q), -1.0);
  rep.eigenvalues.push_back(1.0);
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), std::greater<double>());
  if (approx_eq(p, T(-3)) && approx_eq(q, T(3)))
    rep.type = CuspType::Standard;  // cubic factor (lambda - 1)^3
  else if (comp == Component::X && positive_real_spectrum(p, q))
    rep.type = CuspType::Generalized;
  else
    rep.type = CuspType::OffComponent;
  return rep;
}

}  // namespace detail

template <class T>
CuspReport<T> cusp_type(const TraceCoords<T>& t) {
  return detail::cusp_report_from_cubic(ac_char_poly_formula(t), classify_component(t));
}

// Same dichotomy computed from an explicit peripheral translation (e.g. B^2 C
// at the other end); the type must agree with cusp_type even though the
// spectrum itself depends on which translation is taken.
template <class T>
CuspReport<T> peripheral_cusp_report(const Mat4<T>& m, Component comp) {
  return detail::cusp_report_from_cubic(peripheral_cubic_factor(char_poly(m)), comp);
}

namespace detail {

inline Vec4<double> unit_vector(const Vec4<double>& v) {
  double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  if (n <= 0) throw error("zero vector");
  int lead = 0;
  for (int k = 1; k < 4; ++k)
    if (std::abs(v[static_cast<std::size_t>(k)]) > std::abs(v[static_cast<std::size_t>(lead)])) lead = k;
  double s = v[static_cast<std::size_t>(lead)] < 0 ? -n : n;
  return {v[0] / s, v[1] / s, v[2] / s, v[3] / s};
}

}  // namespace detail

// Change of basis realizing the simultaneous normal form at a hyperbolic-like
// cusp: P^{-1} (AC) P = diag(l1, l2, l3, 1) and P^{-1} A P = the cyclic
// permutation (1 -> 2 -> 3 -> 1) fixing the 4th vector.  Columns are the
// anchor eigenvector p1 (simple eigenvalue, largest |log|), its A-orbit
// p2 = A p1, p3 = A p2, and the fixed eigenvector of AC.
template <class T>
Mat4<double> hexends_basis(const Representation<T>& r) {
  TraceCoords<T> t = trace_coords(r.params);
  if (!on_variety(t)) throw error("point not on the trace variety");
  if (classify_component(t) != Component::X) throw error("hexends basis requires component X");
  auto cubic = ac_char_poly_formula(t);
  double p = to_double(cubic[1]), q = to_double(cubic[2]);
  if (std::abs(p + 3) < 1e-9 && std::abs(q - 3) < 1e-9)
    throw error("parabolic cusp, not diagonalizable");

  std::vector<double> roots = cubic_real_roots(p, q, -1.0);
  if (roots.size() != 3) throw error("cusp eigenvalues are not all real");
  std::vector<double> all = roots;
  all.push_back(1.0);
  auto multiplicity = [&](double l) {
    int c = 0;
    for (double m : all)
      if (std::abs(m - l) <= 1e-6 * std::max(1.0, std::abs(l))) ++c;
    return c;
  };
  bool have = false;
  double lambda1 = 0;
  for (double l : roots) {
    if (l <= 0 || multiplicity(l) != 1) continue;
    if (!have) {
      lambda1 = l;
      have = true;
      continue;
    }
    double cur = std::abs(std::log(lambda1)), cand = std::abs(std::log(l));
    if (cand > cur + 1e-12 || (std::abs(cand - cur) <= 1e-12 && l > lambda1)) lambda1 = l;
  }
  if (!have) throw error("no simple eigenvalue to anchor the basis");

  Mat4<double> A = to_double_mat(r.A), C = to_double_mat(r.C);
  Mat4<double> AC = A * C;

  Mat4<double> shifted = AC;
  for (int i = 0; i < 4; ++i) shifted(i, i) -= lambda1;
  auto ker = kernel4(shifted);
  if (ker.size() != 1) throw error("eigenvector extraction failed");
  Vec4<double> p1 = detail::unit_vector(ker[0]);
  Vec4<double> p2 = A * p1;
  Vec4<double> p3 = A * p2;

  Mat4<double> fix = AC;
  for (int i = 0; i < 4; ++i) fix(i, i) -= 1.0;
  auto kfix = kernel4(fix);
  if (kfix.empty()) throw error("no fixed eigenvector");
  Vec4<double> p4;
  if (kfix.size() == 1) {
    p4 = kfix[0];
  } else {
    Mat4<double> CA = C * A;
    MatX<double> stack(8, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        stack.at(i, j) = AC(i, j) - (i == j ? 1.0 : 0.0);
        stack.at(4 + i, j) = CA(i, j) - (i == j ? 1.0 : 0.0);
      }
    auto common = kernel_basis(stack);
    if (common.size() != 1) throw error("ambiguous fixed space");
    p4 = {common[0][0], common[0][1], common[0][2], common[0][3]};
  }
  p4 = detail::unit_vector(p4);
  if (in_span(std::vector<Vec4<double>>{p1, p2, p3}, p4)) throw error("degenerate eigenbasis");

  Mat4<double> P;
  P.set_col(0, p1);
  P.set_col(1, p2);
  P.set_col(2, p3);
  P.set_col(3, p4);
  Mat4<double> Pi = inverse(P);
  Mat4<double> D = Pi * AC * P;
  Mat4<double> PA = Pi * A * P;

  double scale = 1.0;
  for (int k = 0; k < 16; ++k) scale = std::max(scale, std::abs(AC.e[static_cast<std::size_t>(k)]));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && std::abs(D(i, j)) > 1e-8 * scale) throw error("basis verification failed");
  if (std::abs(D(3, 3) - 1.0) > 1e-8 * scale) throw error("basis verification failed");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool on = (i == 1 && j == 0) || (i == 2 && j == 1) || (i == 0 && j == 2) || (i == 3 && j == 3);
      if (std::abs(PA(i, j) - (on ? 1.0 : 0.0)) > 1e-8 * scale)
        throw error("basis verification failed");
    }
  return P;
}

// ---------------------------------------------------------------------------
// Peripheral subgroups.

enum class End { v1, v4 };

inline const char* end_name(End e) { return e == End::v1 ? "v1" : "v4"; }

template <class T>
struct PeripheralPair {
  End end;
  std::array<Mat4<T>, 2> generators;     // (A, C) at v1; (B, C) at v4
  std::array<Mat4<T>, 2> z2_generators;  // (AC, CA) at v1; (B^2 C, C B^2) at v4
};

// Builds the peripheral data at one end, asserting the vertex turnover
// relations and that the rank-2 subgroup generators commute.
//
// The commutator winds around the two vertices with opposite orientations:
// the turnover rotations are (alpha, gamma, alpha^2 gamma) at v1 but
// (beta, gamma, beta gamma) at v4.  Writing the v4 triple in terms of
// beta^{-1} = beta^2 restores the v1 pattern, so the rank-2 translation
// subgroup is generated by (alpha gamma, gamma alpha) at v1 and by
// (beta^{-1} gamma, gamma beta^{-1}) at v4 — commutation of each pair
// reduces to the third rotation having order three.
template <class T>
PeripheralPair<T> peripheral_pair(const Representation<T>& r, End end) {
  if (!r.on_relation) throw error("peripheral analysis requires the order-3 relation");
  const Mat4<T>& G = end == End::v1 ? r.A : r.B;
  const Mat4<T>& C = r.C;
  Mat4<T> u = end == End::v1 ? G : G * G;  // G^2 = G^{-1}
  PeripheralPair<T> pp{end, {G, C}, {u * C, C * u}};

  if (!is_proj_identity(pow_int(G, 3))) throw error("vertex generator is not of order three");
  if (!is_proj_identity(pow_int(C, 3))) throw error("commutator is not of order three");
  if (!is_proj_identity(pow_int(u * u * C, 3))) throw error("turnover relation fails");

  Mat4<T> lhs = pp.z2_generators[0] * pp.z2_generators[1];
  Mat4<T> rhs = pp.z2_generators[1] * pp.z2_generators[0];
  for (int k = 0; k < 16; ++k)
    if (!approx_eq(lhs.e[static_cast<std::size_t>(k)], rhs.e[static_cast<std::size_t>(k)]))
      throw error("peripheral generators do not commute");
  return pp;
}

namespace detail {

template <class T>
std::vector<T> real_eigenvalues(const Mat4<T>& m) {
  auto cp = char_poly(m);
  std::vector<T> out;
  if constexpr (scalar_traits<T>::exact) {
    for (const T& r : rational_quartic_roots(cp)) {
      bool dup = false;
      for (const T& s : out) dup = dup || s == r;
      if (!dup) out.push_back(r);
    }
  } else {
    out = quartic_real_roots(cp[1], cp[2], cp[3], cp[4]);
  }
  std::sort(out.begin(), out.end(), [](const T& a, const T& b) { return b < a; });
  return out;
}

// All nonzero subspaces of simultaneous eigenvectors, one per eigenvalue
// pair; pass left = true for row eigenvectors (transposes).
template <class T>
std::vector<std::vector<Vec4<T>>> common_eigenspaces(const Mat4<T>& g1in, const Mat4<T>& g2in,
                                                     bool left) {
  Mat4<T> g1 = left ? transpose(g1in) : g1in;
  Mat4<T> g2 = left ? transpose(g2in) : g2in;
  std::vector<std::vector<Vec4<T>>> spaces;
  for (const T& a : real_eigenvalues(g1))
    for (const T& b : real_eigenvalues(g2)) {
      MatX<T> stack(8, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          stack.at(i, j) = g1(i, j) - (i == j ? a : T(0));
          stack.at(4 + i, j) = g2(i, j) - (i == j ? b : T(0));
        }
      std::vector<Vec4<T>> space;
      for (const auto& v : kernel_basis(stack)) space.push_back({v[0], v[1], v[2], v[3]});
      if (!space.empty()) spaces.push_back(space);
    }
  return spaces;
}

template <class T>
bool incident(const Vec4<T>& phi, const Vec4<T>& v) {
  T d = dot(phi, v);
  if constexpr (scalar_traits<T>::exact) return is_zero(d);
  double scale = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      scale = std::max(scale, std::abs(to_double(phi[static_cast<std::size_t>(i)])) *
                                  std::abs(to_double(v[static_cast<std::size_t>(j)])));
  return std::abs(to_double(d)) <= 1e3 * float_tolerance() * scale;
}

template <class T>
ProjSubspace<T> plane_of_covector(const Vec4<T>& phi) {
  MatX<T> m(1, 4);
  for (int j = 0; j < 4; ++j) m.at(0, j) = phi[static_cast<std::size_t>(j)];
  auto ker = kernel_basis(m);
  if (ker.size() != 3) throw error("degenerate covector");
  return plane_through(ProjPoint<T>(Vec4<T>{ker[0][0], ker[0][1], ker[0][2], ker[0][3]}),
                       ProjPoint<T>(Vec4<T>{ker[1][0], ker[1][1], ker[1][2], ker[1][3]}),
                       ProjPoint<T>(Vec4<T>{ker[2][0], ker[2][1], ker[2][2], ker[2][3]}));
}

}  // namespace detail

// A point and a plane through it, both invariant under the commuting pair.
// The point is a simultaneous eigenvector; the plane is the kernel of a
// simultaneous eigenvector of the transposes that annihilates the point.
template <class T>
Flag<T> invariant_flag(const PeripheralPair<T>& pp) {
  const Mat4<T>& g1 = pp.z2_generators[0];
  const Mat4<T>& g2 = pp.z2_generators[1];
  if (is_proj_identity(g1) && is_proj_identity(g2)) {
    using P = ProjPoint<T>;
    return {P::basis(0), plane_through(P::basis(0), P::basis(1), P::basis(2))};
  }

  auto right = detail::common_eigenspaces(g1, g2, false);
  auto left = detail::common_eigenspaces(g1, g2, true);
  auto found = [](const Vec4<T>& p, const Vec4<T>& phi) {
    return Flag<T>{ProjPoint<T>(proj_canonical(p)), detail::plane_of_covector(phi)};
  };
  for (const auto& R : right)
    for (const auto& L : left) {
      for (const auto& phi : L)
        for (const auto& v : R)
          if (detail::incident(phi, v)) return found(v, phi);
      if (R.size() >= 2)
        for (const auto& phi : L) {
          Vec4<T> v = dot(phi, R[0]) * R[1] - dot(phi, R[1]) * R[0];
          if (!vec_is_zero(v)) return found(v, phi);
        }
      if (L.size() >= 2)
        for (const auto& v : R) {
          Vec4<T> phi = dot(L[0], v) * L[1] - dot(L[1], v) * L[0];
          if (!vec_is_zero(phi)) return found(v, phi);
        }
    }
  throw error("no real flag found");
}

}  // namespace projorb
