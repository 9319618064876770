#pragma once

#include <vector>

#include "projorb/linalg.hpp"
#include "projorb/mat4.hpp"

// Points, lines and planes of RP^3 in homogeneous coordinates, plus the two
// classical incidence quantities the rest of the library is built on:
// cross ratios of collinear quadruples and general-position tests.

namespace projorb {

template <class T>
struct ProjPoint {
  Vec4<T> v{};

  ProjPoint() = default;
  explicit ProjPoint(const Vec4<T>& u) : v(u) {}
  ProjPoint(const T& a, const T& b, const T& c, const T& d) : v{a, b, c, d} {}

  static ProjPoint basis(int i) {
    ProjPoint p;
    p.v[static_cast<std::size_t>(i)] = T(1);
    return p;
  }
};

template <class T>
int first_nonzero_index(const Vec4<T>& v) {
  // For doubles, "nonzero" is judged relative to the largest coordinate so a
  // tiny roundoff residue is never chosen as the representative entry.
  if constexpr (scalar_traits<T>::exact) {
    for (int i = 0; i < 4; ++i)
      if (v[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
  } else {
    double scale = 0.0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(to_double(v[static_cast<std::size_t>(i)])));
    if (scale == 0.0) return -1;
    for (int i = 0; i < 4; ++i)
      if (std::abs(to_double(v[static_cast<std::size_t>(i)])) > float_tolerance() * scale) return i;
    return -1;
  }
}

// Scale so the first nonzero coordinate is 1 (canonical representative of
// the projective class).
template <class T>
Vec4<T> proj_canonical(const Vec4<T>& v) {
  int i = first_nonzero_index(v);
  if (i < 0) throw error("zero vector has no projective class");
  T inv = T(1) / v[static_cast<std::size_t>(i)];
  return inv * v;
}

// Scale by a positive factor so the first nonzero coordinate is +-1.  This
// canonicalizes rays (vectors up to positive scale), which is what solid
// simplices are made of.
template <class T>
Vec4<T> ray_canonical(const Vec4<T>& v) {
  int i = first_nonzero_index(v);
  if (i < 0) throw error("zero vector has no ray class");
  T inv = T(1) / scalar_traits<T>::abs(v[static_cast<std::size_t>(i)]);
  return inv * v;
}

template <class T>
bool proj_equal(const ProjPoint<T>& p, const ProjPoint<T>& q) {
  int i = first_nonzero_index(q.v);
  if (i < 0) return first_nonzero_index(p.v) < 0;
  if (is_zero(p.v[static_cast<std::size_t>(i)])) return false;
  T c = p.v[static_cast<std::size_t>(i)] / q.v[static_cast<std::size_t>(i)];
  for (int k = 0; k < 4; ++k)
    if (!approx_eq(p.v[static_cast<std::size_t>(k)], c * q.v[static_cast<std::size_t>(k)])) return false;
  return true;
}

template <class T>
ProjPoint<T> act(const Mat4<T>& m, const ProjPoint<T>& p) {
  return ProjPoint<T>(m * p.v);
}

// A projective subspace given by spanning points: 2 for a line, 3 for a
// plane.  Spanning sets are required to be independent.
template <class T>
struct ProjSubspace {
  enum class Kind { Line, Plane };
  Kind kind;
  std::vector<ProjPoint<T>> span;
};

template <class T>
ProjSubspace<T> line_through(const ProjPoint<T>& p, const ProjPoint<T>& q) {
  if (rank_of_span<T>({p.v, q.v}) != 2) throw error("degenerate line span");
  return ProjSubspace<T>{ProjSubspace<T>::Kind::Line, {p, q}};
}

template <class T>
ProjSubspace<T> plane_through(const ProjPoint<T>& p, const ProjPoint<T>& q, const ProjPoint<T>& r) {
  if (rank_of_span<T>({p.v, q.v, r.v}) != 3) throw error("degenerate plane span");
  return ProjSubspace<T>{ProjSubspace<T>::Kind::Plane, {p, q, r}};
}

template <class T>
bool contains(const ProjSubspace<T>& s, const ProjPoint<T>& p) {
  std::vector<Vec4<T>> basis;
  for (const auto& q : s.span) basis.push_back(q.v);
  return in_span(basis, p.v);
}

template <class T>
ProjSubspace<T> act(const Mat4<T>& m, const ProjSubspace<T>& s) {
  ProjSubspace<T> out{s.kind, {}};
  for (const auto& p : s.span) out.span.push_back(act(m, p));
  return out;
}

// The covector phi with phi(x) = det(x, w1, w2, w3); its kernel is the
// 3-space spanned by w1, w2, w3.
template <class T>
Vec4<T> plane_covector(const Vec4<T>& w1, const Vec4<T>& w2, const Vec4<T>& w3) {
  Vec4<T> phi;
  for (int i = 0; i < 4; ++i) {
    Mat4<T> m;
    m.set_col(0, ProjPoint<T>::basis(i).v);
    m.set_col(1, w1);
    m.set_col(2, w2);
    m.set_col(3, w3);
    phi[static_cast<std::size_t>(i)] = det(m);
  }
  return phi;
}

template <class T>
T dot(const Vec4<T>& u, const Vec4<T>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

// Intersection point of a plane with a line not contained in it.
template <class T>
ProjPoint<T> meet(const ProjSubspace<T>& plane, const ProjSubspace<T>& line) {
  if (plane.kind != ProjSubspace<T>::Kind::Plane || line.kind != ProjSubspace<T>::Kind::Line)
    throw error("meet expects a plane and a line");
  Vec4<T> phi = plane_covector(plane.span[0].v, plane.span[1].v, plane.span[2].v);
  const Vec4<T>& u = line.span[0].v;
  const Vec4<T>& w = line.span[1].v;
  T fu = dot(phi, u), fw = dot(phi, w);
  if (is_zero(fu) && is_zero(fw)) throw error("line lies in the plane");
  Vec4<T> p = fw * u - fu * w;
  return ProjPoint<T>(p);
}

namespace detail {

// Coordinates (sigma, tau) of p in the basis (u, w) of a 2-dimensional
// subspace, with a residual check that p actually lies in the span.
template <class T>
std::pair<T, T> line_coords(const Vec4<T>& u, const Vec4<T>& w, const Vec4<T>& p) {
  int bi = -1, bj = -1;
  T best_det(0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      T d = det2(u[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i)],
                 u[static_cast<std::size_t>(j)], w[static_cast<std::size_t>(j)]);
      if (bi < 0 || std::abs(to_double(d)) > std::abs(to_double(best_det))) {
        bi = i;
        bj = j;
        best_det = d;
      }
    }
  if (is_zero(best_det)) throw error("degenerate line span");
  // Cramer on rows (bi, bj)
  T sigma = det2(p[static_cast<std::size_t>(bi)], w[static_cast<std::size_t>(bi)],
                 p[static_cast<std::size_t>(bj)], w[static_cast<std::size_t>(bj)]) /
            best_det;
  T tau = det2(u[static_cast<std::size_t>(bi)], p[static_cast<std::size_t>(bi)],
               u[static_cast<std::size_t>(bj)], p[static_cast<std::size_t>(bj)]) /
          best_det;
  for (int k = 0; k < 4; ++k) {
    T recon = sigma * u[static_cast<std::size_t>(k)] + tau * w[static_cast<std::size_t>(k)];
    if (!approx_eq(recon, p[static_cast<std::size_t>(k)])) throw error("points not collinear");
  }
  return {sigma, tau};
}

}  // namespace detail

// Cross ratio (a, b; c, d) of four collinear points.  In an affine coordinate
// t on the line this is ((t_a - t_c)(t_b - t_d)) / ((t_a - t_d)(t_b - t_c)),
// evaluated through 2x2 determinants so points at infinity need no special
// casing.  Exactly one coincidence pattern may send the value to 0, 1 or
// infinity; three mutually coincident points are rejected.
template <class T>
T cross_ratio(const ProjPoint<T>& a, const ProjPoint<T>& b, const ProjPoint<T>& c,
              const ProjPoint<T>& d) {
  const std::array<const ProjPoint<T>*, 4> pts = {&a, &b, &c, &d};
  // Reject a triple (or worse) of coincident points.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (proj_equal(*pts[static_cast<std::size_t>(i)], *pts[static_cast<std::size_t>(j)]) &&
            proj_equal(*pts[static_cast<std::size_t>(j)], *pts[static_cast<std::size_t>(k)]))
          throw error("degenerate quadruple");

  // Build a basis of the common 2-dimensional span.
  std::vector<Vec4<T>> vs = {a.v, b.v, c.v, d.v};
  if (rank_of_span(vs) > 2) throw error("points not collinear");
  Vec4<T> u = a.v, w{};
  bool found = false;
  for (int i = 1; i < 4; ++i) {
    if (rank_of_span<T>({u, pts[static_cast<std::size_t>(i)]->v}) == 2) {
      w = pts[static_cast<std::size_t>(i)]->v;
      found = true;
      break;
    }
  }
  if (!found) throw error("degenerate quadruple");

  auto [sa, ta] = detail::line_coords(u, w, a.v);
  auto [sb, tb] = detail::line_coords(u, w, b.v);
  auto [sc, tc] = detail::line_coords(u, w, c.v);
  auto [sd, td] = detail::line_coords(u, w, d.v);

  // D(p, q) = sigma_p tau_q - tau_p sigma_q; cross ratio =
  // D(a,c) D(b,d) / (D(a,d) D(b,c)).
  T dac = sa * tc - ta * sc;
  T dbd = sb * td - tb * sd;
  T dad = sa * td - ta * sd;
  T dbc = sb * tc - tb * sc;
  T num = dac * dbd;
  T den = dad * dbc;
  if (is_zero(den)) {
    if (is_zero(num)) throw error("degenerate quadruple");
    throw error("cross ratio is infinite");
  }
  return num / den;
}

// True iff every 4-element subset of the given 4 or 5 points is linearly
// independent.
template <class T>
bool general_position(const std::vector<ProjPoint<T>>& pts) {
  if (pts.size() != 4 && pts.size() != 5) throw error("general_position expects 4 or 5 points");
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  // all subsets of size 4
  for (int skip = 0; skip < (n == 4 ? 1 : n); ++skip) {
    Mat4<T> m;
    int col = 0;
    for (int i = 0; i < n; ++i) {
      if (n == 5 && i == skip) continue;
      if (col < 4) m.set_col(col++, pts[static_cast<std::size_t>(i)].v);
    }
    if (is_zero(det(m))) return false;
  }
  return true;
}

}  // namespace projorb
