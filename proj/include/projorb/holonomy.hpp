#pragma once

#include "projorb/mat4.hpp"

// Holonomy representations of the two-generator orbifold group
//
//   < alpha, beta | alpha^3 = beta^3 = (alpha beta alpha^-1 beta^-1)^3 = 1 >
//
// into SL(4, R).  A representation is determined up to conjugacy by four
// affine parameters (a1, a2, b3, b4); the generator images are
//
//       [ 1 0 0 a1 ]        [ -1 1 0 0 ]
//   A = [ 0 1 0 a2 ]    B = [ -1 0 0 0 ]
//       [ 0 0 0 -1 ]        [ b3 0 1 0 ]
//       [ 0 0 1 -1 ]        [ b4 0 0 1 ]
//
// A^3 = B^3 = I holds identically; the commutator C = A B A^-1 B^-1 has
// order dividing 3 exactly on the locus
//
//   (a1 + a2)(b3 + b4) = 3 + a1 a2 b3 b4.                            (*)
//
// Conjugating by diag(m, m, 1/m, 1/m) rescales the parameters to
// (m a1, m a2, b3/m, b4/m), so the four pairwise products
// (w, x, y, z) = (a1 b4, a1 b3, a2 b3, a2 b4) are a complete conjugacy
// invariant (the trace coordinates).

namespace projorb {

template <class T>
struct AffineParams {
  T a1{}, a2{}, b3{}, b4{};
};

template <class T>
struct TraceCoords {
  T w{}, x{}, y{}, z{};
};

template <class T>
struct Representation {
  AffineParams<T> params;
  Mat4<T> A, B, C;     // C = A B A^-1 B^-1
  bool on_relation = false;
};

// Left side minus right side of the commutator-order relation (*).
template <class T>
T relation_defect(const AffineParams<T>& p) {
  return (p.a1 + p.a2) * (p.b3 + p.b4) - (T(3) + p.a1 * p.a2 * p.b3 * p.b4);
}

template <class T>
bool on_relation(const AffineParams<T>& p) {
  return is_zero(relation_defect(p));
}

template <class T>
Representation<T> build_representation(const AffineParams<T>& p) {
  Representation<T> r;
  r.params = p;
  Mat4<T>& A = r.A;
  A(0, 0) = T(1);
  A(0, 3) = p.a1;
  A(1, 1) = T(1);
  A(1, 3) = p.a2;
  A(2, 3) = T(-1);
  A(3, 2) = T(1);
  A(3, 3) = T(-1);
  Mat4<T>& B = r.B;
  B(0, 0) = T(-1);
  B(0, 1) = T(1);
  B(1, 0) = T(-1);
  B(2, 0) = p.b3;
  B(2, 2) = T(1);
  B(3, 0) = p.b4;
  B(3, 3) = T(1);
  r.C = A * B * inverse(A) * inverse(B);
  r.on_relation = on_relation(p);
  return r;
}

struct RelationReport {
  bool a_cubed = false, b_cubed = false, c_cubed = false;
  bool all() const { return a_cubed && b_cubed && c_cubed; }
};

// Checks A^3 = B^3 = C^3 = I (as matrices; the lifts all have determinant 1,
// so a scalar cube would have to be the identity anyway).
template <class T>
RelationReport verify_relations(const Representation<T>& r) {
  auto is_id = [](const Mat4<T>& m) {
    auto c = scalar_of_identity(m);
    return c && approx_eq(*c, T(1));
  };
  RelationReport rep;
  rep.a_cubed = is_id(pow_int(r.A, 3));
  rep.b_cubed = is_id(pow_int(r.B, 3));
  rep.c_cubed = is_id(pow_int(r.C, 3));
  return rep;
}

// A representation is degenerate when the commutator is (projectively) the
// identity; the parameter origin is the standard example.
template <class T>
bool is_degenerate(const Representation<T>& r) {
  return is_proj_identity(r.C);
}

// Trace coordinates (w, x, y, z) = (a1 b4, a1 b3, a2 b3, a2 b4).  The
// equivalent trace identities
//   w = 2 + tr(AB),  x = 2 + tr(A^-1 B),  y = 2 + tr(A^-1 B^-1),
//   z = 2 + tr(A B^-1)
// are re-derived from the matrices on every call as a self-check.
template <class T>
TraceCoords<T> trace_coords(const AffineParams<T>& p) {
  TraceCoords<T> t{p.a1 * p.b4, p.a1 * p.b3, p.a2 * p.b3, p.a2 * p.b4};
  Representation<T> r = build_representation(p);
  Mat4<T> Ai = inverse(r.A), Bi = inverse(r.B);
  const T two(2);
  if (!approx_eq(t.w, two + trace(r.A * r.B)) || !approx_eq(t.x, two + trace(Ai * r.B)) ||
      !approx_eq(t.y, two + trace(Ai * Bi)) || !approx_eq(t.z, two + trace(r.A * Bi)))
    throw error("trace identity check failed");
  return t;
}

template <class T>
TraceCoords<T> trace_coords(const Representation<T>& r) {
  return trace_coords(r.params);
}

// Conjugation by diag(m, m, 1/m, 1/m).
template <class T>
AffineParams<T> scale_action(const AffineParams<T>& p, const T& m) {
  if (is_zero(m)) throw error("scale factor must be nonzero");
  return AffineParams<T>{m * p.a1, m * p.a2, p.b3 / m, p.b4 / m};
}

// Canonical section of the scale action over the chart x != 0: parameters
// (x, y, 1, w/x).
template <class T>
AffineParams<T> lift_to_affine(const TraceCoords<T>& t) {
  if (!approx_eq(t.w * t.y, t.x * t.z)) throw error("coordinates violate wy = zx");
  if (is_zero(t.x)) throw error("lift undefined on this chart");
  return AffineParams<T>{t.x, t.y, T(1), t.w / t.x};
}

// True iff the two parameter tuples lie on one orbit of the scale action;
// equivalently, iff their trace coordinates agree.
template <class T>
bool conjugate_equivalent(const Representation<T>& r1, const Representation<T>& r2) {
  const AffineParams<T>&p = r1.params, &q = r2.params;
  // Determine the only possible scale factor from a nonzero a-coordinate (or
  // fall back to the b-side).
  T m{};
  if (!is_zero(p.a1) && !is_zero(q.a1))
    m = q.a1 / p.a1;
  else if (!is_zero(p.a2) && !is_zero(q.a2))
    m = q.a2 / p.a2;
  else if (!is_zero(q.b3) && !is_zero(p.b3))
    m = p.b3 / q.b3;
  else if (!is_zero(q.b4) && !is_zero(p.b4))
    m = p.b4 / q.b4;
  else {
    // No coordinate is nonzero in both tuples; the only orbit possible is
    // the fixed origin.
    return vec_is_zero<T>({p.a1, p.a2, p.b3, p.b4}) && vec_is_zero<T>({q.a1, q.a2, q.b3, q.b4});
  }
  if (is_zero(m)) return false;
  AffineParams<T> s = scale_action(p, m);
  return approx_eq(s.a1, q.a1) && approx_eq(s.a2, q.a2) && approx_eq(s.b3, q.b3) &&
         approx_eq(s.b4, q.b4);
}

}  // namespace projorb
