#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "projorb/linalg.hpp"
#include "projorb/mat4.hpp"

// Invariant symmetric bilinear forms: solve G^T F G = F over all given
// generators G, as a linear system in the 10 independent entries of F, and
// classify nonzero solutions by signature.

namespace projorb {

struct Signature {
  int pos = 0, neg = 0, zero = 0;
  bool operator==(const Signature&) const = default;
};

namespace detail {

inline constexpr int sym_index[4][4] = {
    {0, 1, 2, 3}, {1, 4, 5, 6}, {2, 5, 7, 8}, {3, 6, 8, 9}};

template <class T>
Mat4<T> sym_from_coords(const std::vector<T>& s) {
  Mat4<T> f;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) f(i, j) = s[static_cast<std::size_t>(sym_index[i][j])];
  return f;
}

}  // namespace detail

// Signature (p, n, z) of a symmetric matrix via congruence reduction
// (symmetric Gaussian elimination); valid over both backends by Sylvester's
// law of inertia.
template <class T>
Signature signature_of(Mat4<T> f) {
  // zero threshold relative to the largest entry, exact for rationals
  double scale = 1.0;
  if constexpr (!scalar_traits<T>::exact) {
    for (const T& v : f.e) scale = std::max(scale, std::abs(to_double(v)));
  }
  auto negligible = [&](const T& v) {
    if constexpr (scalar_traits<T>::exact)
      return v == 0;
    else
      return std::abs(to_double(v)) <= float_tolerance() * scale;
  };

  Signature sig;
  std::vector<int> active = {0, 1, 2, 3};
  while (!active.empty()) {
    // best diagonal pivot among active indices
    int pi = -1;
    double best = 0.0;
    for (int i : active) {
      double mag = std::abs(to_double(f(i, i)));
      if (!negligible(f(i, i)) && (pi < 0 || mag > best)) {
        pi = i;
        best = mag;
      }
    }
    if (pi < 0) {
      // all active diagonal entries vanish; look for an off-diagonal entry
      int oi = -1, oj = -1;
      for (std::size_t a = 0; a < active.size() && oi < 0; ++a)
        for (std::size_t b = a + 1; b < active.size() && oi < 0; ++b)
          if (!negligible(f(active[a], active[b]))) {
            oi = active[a];
            oj = active[b];
          }
      if (oi < 0) {
        sig.zero += static_cast<int>(active.size());
        break;
      }
      // congruence: add row/col oj into oi, making f(oi, oi) = 2 f(oi, oj) != 0
      for (int k = 0; k < 4; ++k) f(oi, k) += f(oj, k);
      for (int k = 0; k < 4; ++k) f(k, oi) += f(k, oj);
      continue;
    }
    T d = f(pi, pi);
    if (to_double(d) > 0)
      ++sig.pos;
    else
      ++sig.neg;
    // Schur complement: f(i,j) -= f(i,pi) f(pi,j) / d on the remaining block.
    for (int i : active) {
      if (i == pi) continue;
      for (int j : active) {
        if (j == pi) continue;
        f(i, j) -= f(i, pi) * f(pi, j) / d;
      }
    }
    for (int i : active) {
      if (i == pi) continue;
      f(i, pi) = T(0);
      f(pi, i) = T(0);
    }
    active.erase(std::find(active.begin(), active.end(), pi));
  }
  return sig;
}

template <class T>
struct SymmetricForm {
  Mat4<T> m;
  Signature sig;
};

template <class T>
struct InvariantForms {
  std::vector<Mat4<T>> basis;                 // basis of the solution space
  std::optional<SymmetricForm<T>> unique;     // set iff the space is 1-dimensional
  int dimension() const { return static_cast<int>(basis.size()); }
};

// All symmetric F with G^T F G = F for every generator G.  When the solution
// space is a line, the distinguished representative is normalized so that
// pos >= neg and its first nonzero entry is positive.
template <class T>
InvariantForms<T> invariant_symmetric_form(const std::vector<Mat4<T>>& gens) {
  MatX<T> sys(static_cast<int>(gens.size()) * 10, 10);
  int row = 0;
  for (const Mat4<T>& g : gens) {
    // coefficient of s_{kl} in (G^T F G - F)_{ij}
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        std::array<T, 10> coeff{};
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            int s = detail::sym_index[k][l];
            coeff[static_cast<std::size_t>(s)] += g(k, i) * g(l, j);
          }
        coeff[static_cast<std::size_t>(detail::sym_index[i][j])] -= T(1);
        for (int s = 0; s < 10; ++s) sys.at(row, s) = coeff[static_cast<std::size_t>(s)];
        ++row;
      }
  }
  InvariantForms<T> out;
  for (auto& v : kernel_basis(sys)) out.basis.push_back(detail::sym_from_coords(v));
  if (out.basis.size() == 1) {
    Mat4<T> f = out.basis[0];
    Signature sig = signature_of(f);
    if (sig.neg > sig.pos) {
      f = T(-1) * f;
      std::swap(sig.pos, sig.neg);
    }
    out.unique = SymmetricForm<T>{f, sig};
  }
  return out;
}

}  // namespace projorb
