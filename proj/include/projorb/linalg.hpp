#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "projorb/mat4.hpp"

// Small dense row-reduction utilities over either scalar backend.  Pivot
// decisions are exact for rationals; for doubles a pivot counts as zero when
// it is below float_tolerance() times the largest entry of the input.

namespace projorb {

template <class T>
struct MatX {
  int rows = 0, cols = 0;
  std::vector<T> a;

  MatX() = default;
  MatX(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), T(0)) {}

  T& at(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  const T& at(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
};

namespace detail {

template <class T>
double pivot_threshold(const MatX<T>& m) {
  if constexpr (scalar_traits<T>::exact) {
    return 0.0;
  } else {
    double scale = 1.0;
    for (const T& v : m.a) scale = std::max(scale, std::abs(to_double(v)));
    return float_tolerance() * scale;
  }
}

template <class T>
bool pivot_is_zero(const T& v, double threshold) {
  if constexpr (scalar_traits<T>::exact)
    return v == 0;
  else
    return std::abs(to_double(v)) <= threshold;
}

}  // namespace detail

// In-place reduced row echelon form; returns the pivot columns.
template <class T>
std::vector<int> rref(MatX<T>& m) {
  const double threshold = detail::pivot_threshold(m);
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int best = -1;
    double best_mag = threshold;
    for (int i = r; i < m.rows; ++i) {
      if (detail::pivot_is_zero(m.at(i, c), threshold)) continue;
      double mag = std::abs(to_double(m.at(i, c)));
      if (best < 0 || mag > best_mag) {
        best = i;
        best_mag = mag;
      }
      if constexpr (scalar_traits<T>::exact) break;  // exact: first nonzero suffices
    }
    if (best < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(best, j));
    T inv = T(1) / m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) = inv * m.at(r, j);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      T f = m.at(i, c);
      if (detail::pivot_is_zero(f, threshold)) continue;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
int rank(MatX<T> m) {
  return static_cast<int>(rref(m).size());
}

// Basis of the right kernel, one vector per free column.
template <class T>
std::vector<std::vector<T>> kernel_basis(MatX<T> m) {
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<T>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    std::vector<T> v(static_cast<std::size_t>(m.cols), T(0));
    v[static_cast<std::size_t>(c)] = T(1);
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[static_cast<std::size_t>(pivots[k])] = -m.at(static_cast<int>(k), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Kernel of a 4x4 matrix as a list of Vec4 basis vectors.
template <class T>
std::vector<Vec4<T>> kernel4(const Mat4<T>& m) {
  MatX<T> mx(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) mx.at(i, j) = m(i, j);
  std::vector<Vec4<T>> out;
  for (auto& v : kernel_basis(mx)) out.push_back(Vec4<T>{v[0], v[1], v[2], v[3]});
  return out;
}

// Rank of the 4xN matrix whose columns are the given vectors.
template <class T>
int rank_of_span(const std::vector<Vec4<T>>& vs) {
  MatX<T> mx(4, static_cast<int>(vs.size()));
  for (int j = 0; j < mx.cols; ++j)
    for (int i = 0; i < 4; ++i) mx.at(i, j) = vs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return rank(std::move(mx));
}

template <class T>
bool in_span(const std::vector<Vec4<T>>& basis, const Vec4<T>& v) {
  std::vector<Vec4<T>> all = basis;
  all.push_back(v);
  return rank_of_span(all) == rank_of_span(basis);
}

}  // namespace projorb
