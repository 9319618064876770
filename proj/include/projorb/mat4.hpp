#pragma once

#include <array>
#include <optional>

#include "projorb/scalar.hpp"

// Fixed-size 4x4 matrices and 4-vectors over an arbitrary scalar backend.
// Matrices act on column vectors; a projective transformation is a matrix up
// to nonzero scale, with determinant-one lifts preferred where they exist.

namespace projorb {

template <class T>
using Vec4 = std::array<T, 4>;

template <class T>
Vec4<T> vec4(const T& a, const T& b, const T& c, const T& d) {
  return {a, b, c, d};
}

template <class T>
Vec4<T> operator+(const Vec4<T>& u, const Vec4<T>& v) {
  return {u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]};
}

template <class T>
Vec4<T> operator-(const Vec4<T>& u, const Vec4<T>& v) {
  return {u[0] - v[0], u[1] - v[1], u[2] - v[2], u[3] - v[3]};
}

template <class T>
Vec4<T> operator*(const T& c, const Vec4<T>& v) {
  return {c * v[0], c * v[1], c * v[2], c * v[3]};
}

template <class T>
Vec4<T> operator-(const Vec4<T>& v) {
  return {-v[0], -v[1], -v[2], -v[3]};
}

template <class T>
bool vec_is_zero(const Vec4<T>& v) {
  return is_zero(v[0]) && is_zero(v[1]) && is_zero(v[2]) && is_zero(v[3]);
}

template <class T>
struct Mat4 {
  std::array<T, 16> e{};  // row-major

  T& operator()(int i, int j) { return e[static_cast<std::size_t>(4 * i + j)]; }
  const T& operator()(int i, int j) const { return e[static_cast<std::size_t>(4 * i + j)]; }

  // exact entrywise equality (see proj_equal for equality up to scale)
  bool operator==(const Mat4&) const = default;

  static Mat4 zero() { return Mat4{}; }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = T(1);
    return m;
  }

  static Mat4 from_rows(const std::array<std::array<T, 4>, 4>& rows) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
  }

  static Mat4 from_ints(const int (&rows)[4][4]) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = T(rows[i][j]);
    return m;
  }

  Vec4<T> col(int j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j), (*this)(3, j)}; }
  Vec4<T> row(int i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2), (*this)(i, 3)}; }

  void set_col(int j, const Vec4<T>& v) {
    for (int i = 0; i < 4; ++i) (*this)(i, j) = v[static_cast<std::size_t>(i)];
  }
};

template <class T>
Mat4<T> operator*(const Mat4<T>& a, const Mat4<T>& b) {
  Mat4<T> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      T s = a(i, 0) * b(0, j);
      for (int k = 1; k < 4; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

template <class T>
Vec4<T> operator*(const Mat4<T>& a, const Vec4<T>& v) {
  Vec4<T> r;
  for (int i = 0; i < 4; ++i) {
    T s = a(i, 0) * v[0];
    for (int k = 1; k < 4; ++k) s += a(i, k) * v[static_cast<std::size_t>(k)];
    r[static_cast<std::size_t>(i)] = s;
  }
  return r;
}

template <class T>
Mat4<T> operator*(const T& c, const Mat4<T>& m) {
  Mat4<T> r;
  for (int k = 0; k < 16; ++k) r.e[static_cast<std::size_t>(k)] = c * m.e[static_cast<std::size_t>(k)];
  return r;
}

template <class T>
Mat4<T> operator+(const Mat4<T>& a, const Mat4<T>& b) {
  Mat4<T> r;
  for (int k = 0; k < 16; ++k) r.e[static_cast<std::size_t>(k)] = a.e[static_cast<std::size_t>(k)] + b.e[static_cast<std::size_t>(k)];
  return r;
}

template <class T>
Mat4<T> operator-(const Mat4<T>& a, const Mat4<T>& b) {
  Mat4<T> r;
  for (int k = 0; k < 16; ++k) r.e[static_cast<std::size_t>(k)] = a.e[static_cast<std::size_t>(k)] - b.e[static_cast<std::size_t>(k)];
  return r;
}

template <class T>
Mat4<T> transpose(const Mat4<T>& m) {
  Mat4<T> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = m(j, i);
  return r;
}

template <class T>
T trace(const Mat4<T>& m) {
  return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3);
}

template <class T>
T det2(const T& a, const T& b, const T& c, const T& d) {
  return a * d - b * c;
}

template <class T>
T det3(const std::array<T, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

namespace detail {
// 3x3 minor of m with row i and column j removed.
template <class T>
T minor3(const Mat4<T>& m, int i, int j) {
  std::array<T, 9> sub;
  int k = 0;
  for (int r = 0; r < 4; ++r) {
    if (r == i) continue;
    for (int c = 0; c < 4; ++c) {
      if (c == j) continue;
      sub[static_cast<std::size_t>(k++)] = m(r, c);
    }
  }
  return det3(sub);
}
}  // namespace detail

template <class T>
T det(const Mat4<T>& m) {
  T s(0);
  for (int j = 0; j < 4; ++j) {
    T term = m(0, j) * detail::minor3(m, 0, j);
    if (j % 2 == 0)
      s += term;
    else
      s -= term;
  }
  return s;
}

template <class T>
Mat4<T> inverse(const Mat4<T>& m) {
  T d = det(m);
  if (is_zero(d)) throw error("not invertible");
  Mat4<T> adj;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      T cof = detail::minor3(m, i, j);
      if ((i + j) % 2 == 1) cof = -cof;
      adj(j, i) = cof;  // adjugate = transposed cofactors
    }
  T inv_d = T(1) / d;
  return inv_d * adj;
}

template <class T>
Mat4<T> pow_int(const Mat4<T>& m, int k) {
  if (k < 0) return pow_int(inverse(m), -k);
  Mat4<T> r = Mat4<T>::identity();
  Mat4<T> base = m;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

// Equality of projective transformations: M ~ N iff M = c N for some c != 0.
template <class T>
bool proj_equal(const Mat4<T>& m, const Mat4<T>& n) {
  int pivot = -1;
  double best = -1.0;
  for (int k = 0; k < 16; ++k) {
    double mag = std::abs(to_double(n.e[static_cast<std::size_t>(k)]));
    if (mag > best) {
      best = mag;
      pivot = k;
    }
  }
  if (pivot < 0 || is_zero(n.e[static_cast<std::size_t>(pivot)])) {
    for (int k = 0; k < 16; ++k)
      if (!is_zero(m.e[static_cast<std::size_t>(k)])) return false;
    return true;
  }
  if (is_zero(m.e[static_cast<std::size_t>(pivot)])) return false;
  const T c = m.e[static_cast<std::size_t>(pivot)] / n.e[static_cast<std::size_t>(pivot)];
  for (int k = 0; k < 16; ++k)
    if (!approx_eq(m.e[static_cast<std::size_t>(k)], c * n.e[static_cast<std::size_t>(k)])) return false;
  return true;
}

// If M = c I projectively, returns c; otherwise nullopt.
template <class T>
std::optional<T> scalar_of_identity(const Mat4<T>& m) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && !is_zero(m(i, j))) return std::nullopt;
  for (int i = 1; i < 4; ++i)
    if (!approx_eq(m(i, i), m(0, 0))) return std::nullopt;
  if (is_zero(m(0, 0))) return std::nullopt;
  return m(0, 0);
}

template <class T>
bool is_proj_identity(const Mat4<T>& m) {
  return scalar_of_identity(m).has_value();
}

// Coefficients of det(lambda I - M), leading first: {1, c1, c2, c3, c4}.
// Uses the Faddeev-LeVerrier recurrence (the divisions by 1..4 are exact over
// the rationals).  The matrix must be invertible.
template <class T>
std::array<T, 5> char_poly(const Mat4<T>& m) {
  if (is_zero(det(m))) throw error("not invertible");
  std::array<T, 5> c;
  c[0] = T(1);
  Mat4<T> n = m;
  for (int k = 1; k <= 4; ++k) {
    T ck = -trace(n) / T(k);
    c[static_cast<std::size_t>(k)] = ck;
    if (k < 4) {
      Mat4<T> shifted = n;
      for (int i = 0; i < 4; ++i) shifted(i, i) += ck;
      n = m * shifted;
    }
  }
  return c;
}

template <class T>
T eval_poly(const std::array<T, 5>& c, const T& x) {
  T v = c[0];
  for (int k = 1; k <= 4; ++k) v = v * x + c[static_cast<std::size_t>(k)];
  return v;
}

template <class T>
Mat4<double> to_double_mat(const Mat4<T>& m) {
  Mat4<double> r;
  for (int k = 0; k < 16; ++k) r.e[static_cast<std::size_t>(k)] = to_double(m.e[static_cast<std::size_t>(k)]);
  return r;
}

template <class T>
struct DetLift {
  Mat4<T> m;
  int det_sign;  // determinant of the lift: +1 or -1
};

// Rescales M by |det|^{-1/4} so the result has determinant +-1.  Exact
// backend: succeeds only when |det| has a rational fourth root.
template <class T>
DetLift<T> unit_det_lift(const Mat4<T>& m) {
  T d = det(m);
  if (is_zero(d)) throw error("not invertible");
  int sign = 1;
  T ad = d;
  if (to_double(d) < 0) {
    sign = -1;
    ad = -d;
  }
  auto s = scalar_traits<T>::sqrt_checked(ad);
  std::optional<T> root4;
  if (s) root4 = scalar_traits<T>::sqrt_checked(*s);
  if (!root4 || is_zero(*root4))
    throw error("no unit-determinant lift over this scalar backend");
  T scale = T(1) / *root4;
  return DetLift<T>{scale * m, sign};
}

}  // namespace projorb
