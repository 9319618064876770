#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "projorb/holonomy.hpp"
#include "projorb/projective.hpp"

// Developing-map geometry of the ideal triangulation with one tetrahedron
// Delta = [e1, e2, e3, e4].
//
// A solid projective tetrahedron is the image of the cone spanned by four
// specific vectors, up to permutation, positive rescaling of each vector and
// one global sign flip -- four points of RP^3 in general position span eight
// different solid tetrahedra, so keeping track of representative vectors
// (matrix columns) matters.
//
// The edge [e1 e4] is the axis of the commutator C; developing the simplices
// that share it yields the 12-step cycle
//
//   Delta, A Delta, AB Delta, ABA^-1 Delta, C Delta, CA Delta, CAB Delta,
//   CABA^-1 Delta, C^2 Delta, BAB^-1 Delta, BA Delta, B Delta
//
// on which C acts as a cyclic shift by four.  The number of turns the cycle
// makes around the axis (the degree) distinguishes locally injective
// developing maps (degree 1) from branched ones.

namespace projorb {

struct AxisInjectivity {
  bool a_axis = false, b_axis = false;
};

// The scale action can make each generator's fixed-axis holonomy injective
// unless both parameters of that generator are <= 0.
template <class T>
AxisInjectivity axis_injectivity(const AffineParams<T>& p) {
  auto nonpos = [](const T& v) { return is_zero(v) || to_double(v) < 0; };
  AxisInjectivity r;
  r.a_axis = !(nonpos(p.a1) && nonpos(p.a2));
  r.b_axis = !(nonpos(p.b3) && nonpos(p.b4));
  return r;
}

// Solid simplex: four representative vectors.  Canonical form: canonicalize
// each vertex ray (positive scaling only), sort, and pick the
// lexicographically smaller of the two global sign choices.
template <class T>
struct SimplexImage {
  std::array<Vec4<T>, 4> verts;

  static SimplexImage standard() {
    SimplexImage s;
    for (int i = 0; i < 4; ++i) {
      s.verts[static_cast<std::size_t>(i)] = Vec4<T>{};
      s.verts[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = T(1);
    }
    return s;
  }

  std::array<Vec4<T>, 4> canonical() const {
    // Order only by differences larger than the tolerance; two
    // representatives of the same solid then sort identically even though
    // their entries carry rounding noise.  (Exact scalars compare exactly.)
    auto vec_less = [](const Vec4<T>& a, const Vec4<T>& b) {
      for (int k = 0; k < 4; ++k) {
        const T &ak = a[static_cast<std::size_t>(k)], &bk = b[static_cast<std::size_t>(k)];
        if (!approx_eq(ak, bk)) return ak < bk;
      }
      return false;
    };
    auto canon_of = [&](std::array<Vec4<T>, 4> vs) {
      for (auto& v : vs) {
        v = ray_canonical(v);
        // Snap noise to exact zero so later consumers see clean entries.
        for (auto& c : v)
          if (is_zero(c)) c = T(0);
      }
      std::sort(vs.begin(), vs.end(), vec_less);
      return vs;
    };
    std::array<Vec4<T>, 4> plus = canon_of(verts);
    std::array<Vec4<T>, 4> minus = canon_of({-verts[0], -verts[1], -verts[2], -verts[3]});
    for (int i = 0; i < 4; ++i) {
      if (vec_less(plus[static_cast<std::size_t>(i)], minus[static_cast<std::size_t>(i)]))
        return plus;
      if (vec_less(minus[static_cast<std::size_t>(i)], plus[static_cast<std::size_t>(i)]))
        return minus;
    }
    return plus;
  }
};

template <class T>
SimplexImage<T> act(const Mat4<T>& m, const SimplexImage<T>& s) {
  SimplexImage<T> out;
  for (int i = 0; i < 4; ++i) out.verts[static_cast<std::size_t>(i)] = m * s.verts[static_cast<std::size_t>(i)];
  return out;
}

template <class T>
bool solid_equal(const SimplexImage<T>& s1, const SimplexImage<T>& s2) {
  auto c1 = s1.canonical(), c2 = s2.canonical();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      if (!approx_eq(c1[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                     c2[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]))
        return false;
  return true;
}

template <class T>
struct EdgeCycleReport {
  std::array<Mat4<T>, 12> words;
  std::array<SimplexImage<T>, 12> images;
  int distinct_count = 0;
  int period = 0;   // smallest shift p | 12 fixing the cycle
  int degree = 0;   // filled in by edge_degree / edge_cycle_report
};

// The 12 developed simplices around the commutator axis, with the shift
// check image[i + 4] = C * image[i] (indices mod 12).
template <class T>
EdgeCycleReport<T> commutator_cycle(const Representation<T>& r) {
  if (!r.on_relation) throw error("commutator cycle requires the order-3 relation");
  const Mat4<T>&A = r.A, &B = r.B, &C = r.C;
  Mat4<T> Ai = inverse(A), Bi = inverse(B);
  EdgeCycleReport<T> rep;
  rep.words = {Mat4<T>::identity(), A,      A * B,          A * B * Ai,
               C,                   C * A,  C * A * B,      C * A * B * Ai,
               C * C,               B * A * Bi, B * A,      B};
  SimplexImage<T> delta = SimplexImage<T>::standard();
  for (int i = 0; i < 12; ++i)
    rep.images[static_cast<std::size_t>(i)] = act(rep.words[static_cast<std::size_t>(i)], delta);

  for (int i = 0; i < 12; ++i) {
    SimplexImage<T> shifted = act(C, rep.images[static_cast<std::size_t>(i)]);
    if (!solid_equal(shifted, rep.images[static_cast<std::size_t>((i + 4) % 12)]))
      throw error("commutator does not shift the edge cycle");
  }

  rep.distinct_count = 0;
  for (int i = 0; i < 12; ++i) {
    bool seen = false;
    for (int j = 0; j < i && !seen; ++j)
      seen = solid_equal(rep.images[static_cast<std::size_t>(i)], rep.images[static_cast<std::size_t>(j)]);
    if (!seen) ++rep.distinct_count;
  }

  rep.period = 12;
  for (int p : {1, 2, 3, 4, 6}) {
    bool ok = true;
    for (int i = 0; i < 12 && ok; ++i)
      ok = solid_equal(rep.images[static_cast<std::size_t>(i)],
                       rep.images[static_cast<std::size_t>((i + p) % 12)]);
    if (ok) {
      rep.period = p;
      break;
    }
  }
  return rep;
}

namespace detail {

struct TransversePlane {
  // 2x4 projection whose kernel is the axis 2-plane
  std::array<std::array<double, 4>, 2> q;
  std::array<double, 2> project(const Vec4<double>& v) const {
    std::array<double, 2> out{};
    for (int r = 0; r < 2; ++r)
      for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(r)] += q[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
    return out;
  }
};

inline double signed_angle(const std::array<double, 2>& u, const std::array<double, 2>& v) {
  double cross = u[0] * v[1] - u[1] * v[0];
  double dotp = u[0] * v[0] + u[1] * v[1];
  return std::atan2(cross, dotp);
}

}  // namespace detail

// Winding degree of the edge cycle around the commutator axis.
//
// (i)  The two projective points common to all twelve vertex sets span the
//      axis; C must fix that line.
// (ii) Project to a 2-dimensional transverse quotient (an optional custom
//      projection lets tests confirm independence of this choice).
// (iii) Walk the cycle, keeping representative signs consistent across the
//      shared faces, and accumulate the signed angles of the wedges.
// (iv) The total must be degree * 2 pi.
template <class T>
int edge_degree(const Representation<T>& r,
                const std::array<std::array<double, 4>, 2>* custom_projection = nullptr) {
  EdgeCycleReport<T> cyc = commutator_cycle(r);

  // --- (i) common vertices = axis endpoints ---
  std::vector<ProjPoint<T>> common;
  SimplexImage<T> first = cyc.images[0];
  for (int v = 0; v < 4; ++v) {
    ProjPoint<T> cand(first.verts[static_cast<std::size_t>(v)]);
    bool in_all = true;
    for (int i = 1; i < 12 && in_all; ++i) {
      bool here = false;
      for (int u = 0; u < 4 && !here; ++u)
        here = proj_equal(ProjPoint<T>(cyc.images[static_cast<std::size_t>(i)].verts[static_cast<std::size_t>(u)]), cand);
      in_all = here;
    }
    if (in_all) common.push_back(cand);
  }
  if (common.size() != 2) throw error("edge cycle has no common axis edge");
  ProjPoint<T> axis_p = common[0], axis_q = common[1];
  // C fixes the axis line
  if (!proj_equal(act(r.C, axis_p), axis_p) || !proj_equal(act(r.C, axis_q), axis_q)) {
    auto l = line_through(axis_p, axis_q);
    if (!contains(l, act(r.C, axis_p)) || !contains(l, act(r.C, axis_q)))
      throw error("commutator does not fix the axis line");
  }

  // --- (ii) transverse projection ---
  detail::TransversePlane plane;
  Vec4<double> pa, pb;
  for (int k = 0; k < 4; ++k) {
    pa[static_cast<std::size_t>(k)] = to_double(axis_p.v[static_cast<std::size_t>(k)]);
    pb[static_cast<std::size_t>(k)] = to_double(axis_q.v[static_cast<std::size_t>(k)]);
  }
  if (custom_projection) {
    plane.q = *custom_projection;
    for (int row = 0; row < 2; ++row) {
      double ra = 0, rb = 0;
      for (int k = 0; k < 4; ++k) {
        ra += plane.q[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] * pa[static_cast<std::size_t>(k)];
        rb += plane.q[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] * pb[static_cast<std::size_t>(k)];
      }
      if (std::abs(ra) > 1e-9 || std::abs(rb) > 1e-9)
        throw error("custom transverse projection does not annihilate the axis");
    }
  } else {
    // kernel rows of [pa; pb]: a basis of covectors vanishing on the axis
    MatX<double> m(2, 4);
    for (int k = 0; k < 4; ++k) {
      m.at(0, k) = pa[static_cast<std::size_t>(k)];
      m.at(1, k) = pb[static_cast<std::size_t>(k)];
    }
    auto ker = kernel_basis(m);
    if (ker.size() != 2) throw error("degenerate transverse projection");
    for (int row = 0; row < 2; ++row)
      for (int k = 0; k < 4; ++k) plane.q[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] = ker[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)];
  }

  // --- (iii) consistent walk over the shared face rays ---
  // Off-axis vertices of each simplex, as the original representative
  // vectors (converted to double).
  std::array<std::array<Vec4<double>, 2>, 12> off;
  for (int i = 0; i < 12; ++i) {
    int found = 0;
    for (int v = 0; v < 4; ++v) {
      ProjPoint<T> pt(cyc.images[static_cast<std::size_t>(i)].verts[static_cast<std::size_t>(v)]);
      if (proj_equal(pt, axis_p) || proj_equal(pt, axis_q)) continue;
      if (found == 2) throw error("simplex has more than two off-axis vertices");
      for (int k = 0; k < 4; ++k)
        off[static_cast<std::size_t>(i)][static_cast<std::size_t>(found)][static_cast<std::size_t>(k)] =
            to_double(cyc.images[static_cast<std::size_t>(i)].verts[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)]);
      ++found;
    }
    if (found != 2) throw error("simplex does not have two off-axis vertices");
  }

  auto ray = [&](const Vec4<double>& v) {
    auto p = plane.project(v);
    double norm = std::hypot(p[0], p[1]);
    if (norm <= 1e-12) throw error("degenerate transverse projection");
    return std::array<double, 2>{p[0] / norm, p[1] / norm};
  };
  auto proj_same_line = [&](const Vec4<double>& u, const Vec4<double>& v) {
    // same projective point in RP^3?
    ProjPoint<double> a(u), b(v);
    return proj_equal(a, b);
  };

  // For simplex i, find which off-axis vertex is shared with simplex i+1.
  std::array<int, 12> out_idx;
  for (int i = 0; i < 12; ++i) {
    int nxt = (i + 1) % 12;
    int found = -1;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        if (proj_same_line(off[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)], off[static_cast<std::size_t>(nxt)][static_cast<std::size_t>(b)]))
          found = a;
    if (found < 0) throw error("consecutive simplices share no face");
    out_idx[static_cast<std::size_t>(i)] = found;
  }

  // Start on the ray simplex 0 shares with simplex 11 (its other vertex).
  int in0 = 1 - out_idx[0];
  std::array<double, 2> dir = ray(off[0][static_cast<std::size_t>(in0)]);
  std::array<double, 2> start = dir;
  double total = 0.0;
  int sign = 0;
  for (int i = 0; i < 12; ++i) {
    int oi = out_idx[static_cast<std::size_t>(i)];
    std::array<double, 2> in_ray = ray(off[static_cast<std::size_t>(i)][static_cast<std::size_t>(1 - oi)]);
    std::array<double, 2> out_ray = ray(off[static_cast<std::size_t>(i)][static_cast<std::size_t>(oi)]);
    // Align the simplex's own wedge with the incoming direction: flip both
    // rays together if needed.
    double align = dir[0] * in_ray[0] + dir[1] * in_ray[1];
    if (std::abs(align) < 0.9) throw error("face rays do not chain up");
    if (align < 0) {
      in_ray = {-in_ray[0], -in_ray[1]};
      out_ray = {-out_ray[0], -out_ray[1]};
    }
    double theta = detail::signed_angle(in_ray, out_ray);
    if (std::abs(theta) < 1e-9 || std::abs(std::abs(theta) - M_PI) < 1e-9)
      throw error("degenerate wedge angle");
    int s = theta > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) throw error("edge cycle does not wind monotonically");
    total += theta;
    dir = out_ray;
  }
  // closure: the walk must return to the starting ray
  if (std::abs(dir[0] - start[0]) > 1e-6 || std::abs(dir[1] - start[1]) > 1e-6)
    throw error("edge cycle does not close up");
  double turns = std::abs(total) / (2.0 * M_PI);
  int degree = static_cast<int>(std::lround(turns));
  if (std::abs(turns - degree) > 1e-6 || degree < 1)
    throw error("accumulated angle is not a whole number of turns");
  return degree;
}

template <class T>
EdgeCycleReport<T> edge_cycle_report(const Representation<T>& r) {
  EdgeCycleReport<T> rep = commutator_cycle(r);
  rep.degree = edge_degree(r);
  return rep;
}

// ---------------------------------------------------------------------------
// Finite tessellation at the branched point (1, 1, 1, 1).

struct TessellationReport {
  int group_order = 0;
  int orbit_size = 0;
  int stabilizer_size = 0;
  int adjacent_a_axis = 0;  // simplices containing the edge fixed by A
  int adjacent_b_axis = 0;  // ... fixed by B
  int adjacent_c_axis = 0;  // ... fixed by C
};

namespace detail {

inline std::vector<Rat> proj_matrix_key(const Mat4<Rat>& m) {
  int pivot = -1;
  for (int k = 0; k < 16 && pivot < 0; ++k)
    if (m.e[static_cast<std::size_t>(k)] != 0) pivot = k;
  if (pivot < 0) throw error("zero matrix in group closure");
  Rat inv = Rat(1) / m.e[static_cast<std::size_t>(pivot)];
  std::vector<Rat> key(16);
  for (int k = 0; k < 16; ++k) key[static_cast<std::size_t>(k)] = inv * m.e[static_cast<std::size_t>(k)];
  return key;
}

inline std::vector<Rat> solid_key(const SimplexImage<Rat>& s) {
  auto c = s.canonical();
  std::vector<Rat> key;
  key.reserve(16);
  for (const auto& v : c)
    for (const auto& x : v) key.push_back(x);
  return key;
}

}  // namespace detail

// Exact analysis of the projective group generated by A and B at the
// branched point: group order, the orbit of the standard solid simplex, its
// stabilizer, and how many orbit simplices contain each generator's fixed
// edge.  The five points {e1, e2, e3, e4, e1+e2-e3-e4} are verified to be
// permuted by the generators (two 3-cycles with disjoint fixed sets) and the
// induced permutations must all be even.
inline TessellationReport alt5_analysis(const Representation<Rat>& r) {
  const Rat one(1);
  if (r.params.a1 != one || r.params.a2 != one || r.params.b3 != one || r.params.b4 != one)
    throw error("tessellation analysis is specific to parameters (1,1,1,1)");

  // --- group closure (projective classes, BFS over generator products) ---
  std::map<std::vector<Rat>, int> seen;
  std::vector<Mat4<Rat>> elements;
  std::vector<Mat4<Rat>> queue = {Mat4<Rat>::identity()};
  seen[detail::proj_matrix_key(queue[0])] = 0;
  elements.push_back(queue[0]);
  const std::size_t cap = 10000;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Mat4<Rat> g = queue[head];
    for (const Mat4<Rat>* gen : {&r.A, &r.B}) {
      Mat4<Rat> h = g * (*gen);
      auto key = detail::proj_matrix_key(h);
      if (seen.emplace(key, static_cast<int>(elements.size())).second) {
        elements.push_back(h);
        queue.push_back(h);
        if (elements.size() > cap) throw error("group appears infinite");
      }
    }
  }
  TessellationReport rep;
  rep.group_order = static_cast<int>(elements.size());

  // --- the five special points and the induced permutations ---
  std::array<Vec4<Rat>, 5> pts = {
      Vec4<Rat>{1, 0, 0, 0}, Vec4<Rat>{0, 1, 0, 0}, Vec4<Rat>{0, 0, 1, 0},
      Vec4<Rat>{0, 0, 0, 1}, Vec4<Rat>{1, 1, -1, -1}};
  {
    std::vector<ProjPoint<Rat>> gp;
    for (const auto& v : pts) gp.emplace_back(v);
    if (!general_position(gp)) throw error("five distinguished points are not in general position");
  }
  auto perm_of = [&](const Mat4<Rat>& g) {
    std::array<int, 5> perm{};
    for (int i = 0; i < 5; ++i) {
      Vec4<Rat> img = g * pts[static_cast<std::size_t>(i)];
      int target = -1;
      for (int j = 0; j < 5 && target < 0; ++j)
        if (proj_equal(ProjPoint<Rat>(img), ProjPoint<Rat>(pts[static_cast<std::size_t>(j)]))) target = j;
      if (target < 0) throw error("group does not preserve the five distinguished points");
      perm[static_cast<std::size_t>(i)] = target;
    }
    return perm;
  };
  auto is_three_cycle = [](const std::array<int, 5>& p, std::array<bool, 5>& fixed) {
    int moved = 0;
    for (int i = 0; i < 5; ++i) {
      if (p[static_cast<std::size_t>(i)] == i) {
        fixed[static_cast<std::size_t>(i)] = true;
      } else {
        ++moved;
        fixed[static_cast<std::size_t>(i)] = false;
      }
    }
    if (moved != 3) return false;
    // a permutation moving exactly 3 points is a 3-cycle iff it has order 3
    std::array<int, 5> p3{};
    for (int i = 0; i < 5; ++i) p3[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])])];
    for (int i = 0; i < 5; ++i)
      if (p3[static_cast<std::size_t>(i)] != i) return false;
    return true;
  };
  std::array<bool, 5> fixed_a{}, fixed_b{};
  if (!is_three_cycle(perm_of(r.A), fixed_a) || !is_three_cycle(perm_of(r.B), fixed_b))
    throw error("generators do not act as 3-cycles on the five points");
  for (int i = 0; i < 5; ++i)
    if (fixed_a[static_cast<std::size_t>(i)] && fixed_b[static_cast<std::size_t>(i)])
      throw error("generator fixed points are not disjoint");

  // every element must induce an even permutation, and faithfully so
  std::map<std::array<int, 5>, int> perms;
  for (const auto& g : elements) {
    auto p = perm_of(g);
    perms.emplace(p, 1);
    // parity by counting inversions
    int inv = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
    if (inv % 2 != 0) throw error("group contains an odd permutation");
  }
  if (static_cast<int>(perms.size()) != rep.group_order)
    throw error("group does not act faithfully on the five points");

  // --- orbit and stabilizer of the solid simplex ---
  SimplexImage<Rat> delta = SimplexImage<Rat>::standard();
  auto delta_key = detail::solid_key(delta);
  std::map<std::vector<Rat>, SimplexImage<Rat>> orbit;
  int stab = 0;
  for (const auto& g : elements) {
    SimplexImage<Rat> img = act(g, delta);
    auto key = detail::solid_key(img);
    if (key == delta_key) ++stab;
    orbit.emplace(key, img);
  }
  rep.orbit_size = static_cast<int>(orbit.size());
  rep.stabilizer_size = stab;

  // --- edge adjacency ---
  // A fixes e1, e2 pointwise; B fixes e3, e4; C fixes e1, e4.  The edges in
  // question are the corresponding solid edges of Delta.
  auto check_fixes = [&](const Mat4<Rat>& g, int i, int j) {
    return proj_equal(ProjPoint<Rat>(g.col(i)), ProjPoint<Rat>::basis(i)) &&
           proj_equal(ProjPoint<Rat>(g.col(j)), ProjPoint<Rat>::basis(j));
  };
  if (!check_fixes(r.A, 0, 1) || !check_fixes(r.B, 2, 3) || !check_fixes(r.C, 0, 3))
    throw error("generator axes are not the expected coordinate edges");
  auto count_adjacent = [&](int vi, int vj) {
    // simplices whose solid edge between two vertices is the arc
    // cone(e_vi, e_vj)
    Vec4<Rat> u{}, w{};
    u[static_cast<std::size_t>(vi)] = 1;
    w[static_cast<std::size_t>(vj)] = 1;
    auto cu = ray_canonical(u), cw = ray_canonical(w);
    auto cnu = ray_canonical(-u), cnw = ray_canonical(-w);
    int count = 0;
    for (const auto& [key, simplex] : orbit) {
      bool has = false;
      std::array<Vec4<Rat>, 4> rays;
      for (int k = 0; k < 4; ++k) rays[static_cast<std::size_t>(k)] = ray_canonical(simplex.verts[static_cast<std::size_t>(k)]);
      for (int a = 0; a < 4 && !has; ++a)
        for (int b = 0; b < 4 && !has; ++b) {
          if (a == b) continue;
          has = (rays[static_cast<std::size_t>(a)] == cu && rays[static_cast<std::size_t>(b)] == cw) ||
                (rays[static_cast<std::size_t>(a)] == cnu && rays[static_cast<std::size_t>(b)] == cnw);
        }
      if (has) ++count;
    }
    return count;
  };
  rep.adjacent_a_axis = count_adjacent(0, 1);
  rep.adjacent_b_axis = count_adjacent(2, 3);
  rep.adjacent_c_axis = count_adjacent(0, 3);
  return rep;
}

// ---------------------------------------------------------------------------
// Trace coordinates recovered from cross ratios on the axis line.
//
// With Pi = <e1, e2, e3> and l = <e3, e4>, the plane images cut l in
//
//   p3 = Pi ^ l, p4 = A(Pi) ^ l, p5 = A^2(Pi) ^ l,
//   px = AB^-1A(Pi) ^ l, py = ABA(Pi) ^ l, pz = A^-1B(Pi) ^ l,
//   pw = A^-1B^-1(Pi) ^ l,
//
// and the cross ratios (pw, p4; p5, p3), (px, p3; p5, p4), (py, p3; p5, p4),
// (pz, p4; p5, p3) recover (w, x, y, z).
template <class T>
TraceCoords<T> cross_ratio_coords(const Representation<T>& r) {
  using P = ProjPoint<T>;
  const Mat4<T>&A = r.A, &B = r.B;
  Mat4<T> Ai = inverse(A), Bi = inverse(B);

  ProjSubspace<T> pi = plane_through(P::basis(0), P::basis(1), P::basis(2));
  ProjSubspace<T> l = line_through(P::basis(2), P::basis(3));

  auto cut = [&](const Mat4<T>& g) { return meet(act(g, pi), l); };

  P p3 = meet(pi, l);
  P p4 = cut(A);
  P p5 = cut(A * A);
  P px = cut(A * Bi * A);
  P py = cut(A * B * A);
  P pz = cut(Ai * B);
  P pw = cut(Ai * Bi);

  return TraceCoords<T>{cross_ratio(pw, p4, p5, p3), cross_ratio(px, p3, p5, p4),
                        cross_ratio(py, p3, p5, p4), cross_ratio(pz, p4, p5, p3)};
}

}  // namespace projorb
