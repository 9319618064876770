#include <catch2/catch_amalgamated.hpp>

#include <projorb/projorb.hpp>

using namespace projorb;

namespace {

Representation<Rat> rep(int a1, int a2, int b3, int b4) {
  return build_representation(AffineParams<Rat>{Rat(a1), Rat(a2), Rat(b3), Rat(b4)});
}

Representation<Rat> rep_at_chart(int x, int y) {
  return build_representation(lift_to_affine(chart_lift(ChartPoint<Rat>{Rat(x), Rat(y)}).t));
}

}  // namespace

TEST_CASE("axis injectivity criterion") {
  auto ok = axis_injectivity(AffineParams<Rat>{Rat(3), Rat(3), Rat(1), Rat(1)});
  REQUIRE(ok.a_axis);
  REQUIRE(ok.b_axis);

  // both a-parameters nonpositive kills the a-axis
  auto bad_a = axis_injectivity(AffineParams<Rat>{Rat(-1), Rat(-2), Rat(1), Rat(1)});
  REQUIRE_FALSE(bad_a.a_axis);
  REQUIRE(bad_a.b_axis);

  auto bad_b = axis_injectivity(AffineParams<Rat>{Rat(1), Rat(2), Rat(0), Rat(-3)});
  REQUIRE(bad_b.a_axis);
  REQUIRE_FALSE(bad_b.b_axis);

  // a single positive parameter on each side suffices
  auto mixed = axis_injectivity(AffineParams<Rat>{Rat(-5), Rat(1), Rat(2), Rat(-7)});
  REQUIRE(mixed.a_axis);
  REQUIRE(mixed.b_axis);
}

TEST_CASE("solid simplex equality is blind to ordering, scaling, and global sign") {
  auto s = SimplexImage<Rat>::standard();

  SimplexImage<Rat> permuted = s;
  std::swap(permuted.verts[0], permuted.verts[2]);
  REQUIRE(solid_equal(s, permuted));

  SimplexImage<Rat> scaled = s;
  for (auto& v : scaled.verts)
    for (auto& c : v) c *= 7;
  REQUIRE(solid_equal(s, scaled));

  SimplexImage<Rat> negated = s;
  for (auto& v : negated.verts)
    for (auto& c : v) c = -c;
  REQUIRE(solid_equal(s, negated));

  // flipping a single vertex ray changes the solid simplex
  SimplexImage<Rat> flipped = s;
  for (auto& c : flipped.verts[0]) c = -c;
  REQUIRE_FALSE(solid_equal(s, flipped));

  auto g = Mat4<Rat>::from_ints({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}});
  REQUIRE_FALSE(solid_equal(s, act(g, s)));
}

TEST_CASE("commutator cycle at the hyperbolic point") {
  auto cyc = commutator_cycle(rep(3, 3, 1, 1));
  REQUIRE(cyc.words[0] == Mat4<Rat>::identity());
  REQUIRE(cyc.distinct_count == 12);
  REQUIRE(cyc.period == 12);
}

TEST_CASE("commutator cycle requires the relation") {
  REQUIRE_THROWS_WITH(commutator_cycle(rep(1, 1, 1, 2)),
                      "commutator cycle requires the order-3 relation");
}

TEST_CASE("branched point cycle has six distinct simplices, covered twice") {
  auto r = rep(1, 1, 1, 1);
  auto cyc = commutator_cycle(r);
  REQUIRE(cyc.distinct_count == 6);
  REQUIRE(cyc.period == 6);
  REQUIRE(edge_degree(r) == 2);
}

TEST_CASE("edge degree is one on the structure component") {
  REQUIRE(edge_degree(rep(3, 3, 1, 1)) == 1);
  REQUIRE(edge_degree(rep_at_chart(4, 3)) == 1);
  REQUIRE(edge_degree(rep_at_chart(3, 2)) == 1);
}

TEST_CASE("edge degree does not depend on the transverse projection") {
  auto r = rep(3, 3, 1, 1);
  // the axis at this point is spanned by e1 and e4
  std::array<std::array<double, 4>, 2> q1 = {{{0, 1, 0, 0}, {0, 0, 1, 0}}};
  std::array<std::array<double, 4>, 2> q2 = {{{0, 1, 1, 0}, {0, 1, -1, 0}}};
  REQUIRE(edge_degree(r, &q1) == 1);
  REQUIRE(edge_degree(r, &q2) == 1);

  std::array<std::array<double, 4>, 2> bad = {{{1, 0, 0, 0}, {0, 1, 0, 0}}};
  REQUIRE_THROWS_WITH(edge_degree(r, &bad),
                      "custom transverse projection does not annihilate the axis");
}

TEST_CASE("edge cycle report combines the cycle and the degree") {
  auto report = edge_cycle_report(rep(3, 3, 1, 1));
  REQUIRE(report.distinct_count == 12);
  REQUIRE(report.period == 12);
  REQUIRE(report.degree == 1);

  auto branched = edge_cycle_report(rep(1, 1, 1, 1));
  REQUIRE(branched.distinct_count == 6);
  REQUIRE(branched.degree == 2);
}

TEST_CASE("edge cycle works identically over the float backend") {
  auto r = build_representation(AffineParams<double>{3.0, 3.0, 1.0, 1.0});
  auto report = edge_cycle_report(r);
  REQUIRE(report.distinct_count == 12);
  REQUIRE(report.period == 12);
  REQUIRE(report.degree == 1);

  auto mp = chart_lift(ChartPoint<double>{4.0, 3.0});
  auto r43 = build_representation(lift_to_affine(mp.t));
  REQUIRE(edge_degree(r43) == 1);
}

TEST_CASE("CAB preserves the standard simplex at the branched point") {
  auto r = rep(1, 1, 1, 1);
  auto cab = r.C * r.A * r.B;
  auto s = SimplexImage<Rat>::standard();
  REQUIRE(solid_equal(act(cab, s), s));
}

TEST_CASE("tessellation analysis at the branched point") {
  auto report = alt5_analysis(rep(1, 1, 1, 1));
  REQUIRE(report.group_order == 60);
  REQUIRE(report.orbit_size == 15);
  REQUIRE(report.stabilizer_size == 4);
  REQUIRE(report.adjacent_a_axis == 3);
  REQUIRE(report.adjacent_b_axis == 3);
  REQUIRE(report.adjacent_c_axis == 6);
}

TEST_CASE("tessellation analysis rejects other parameters") {
  REQUIRE_THROWS_WITH(alt5_analysis(rep(3, 3, 1, 1)),
                      "tessellation analysis is specific to parameters (1,1,1,1)");
}

TEST_CASE("tessellation analysis detects a corrupted representation") {
  auto r = rep(1, 1, 1, 1);
  r.A(0, 3) += 1;  // no longer the branched-point matrix group
  REQUIRE_THROWS_AS(alt5_analysis(r), error);
}

TEST_CASE("cross ratios on the axis line recover the trace coordinates") {
  auto t = trace_coords(AffineParams<Rat>{Rat(3), Rat(3), Rat(1), Rat(1)});
  auto c = cross_ratio_coords(rep(3, 3, 1, 1));
  REQUIRE((c.w == t.w && c.x == t.x && c.y == t.y && c.z == t.z));

  auto t2 = trace_coords(AffineParams<Rat>{Rat(4), Rat(1), Rat(1), Rat(-2)});
  auto c2 = cross_ratio_coords(rep(4, 1, 1, -2));
  REQUIRE((c2.w == t2.w && c2.x == t2.x && c2.y == t2.y && c2.z == t2.z));
}

TEST_CASE("the cutting points have the documented coordinates") {
  using P = ProjPoint<Rat>;
  auto r = rep(4, 1, 1, -2);
  auto pi = plane_through(P::basis(0), P::basis(1), P::basis(2));
  auto l = line_through(P::basis(2), P::basis(3));

  REQUIRE(proj_equal(meet(pi, l), P(Vec4<Rat>{0, 0, 1, 0})));                 // p3
  REQUIRE(proj_equal(meet(act(r.A, pi), l), P(Vec4<Rat>{0, 0, 0, 1})));      // p4
  REQUIRE(proj_equal(meet(act(r.A * r.A, pi), l), P(Vec4<Rat>{0, 0, 1, 1})));  // p5

  // p_x cuts l at [0 : 0 : 1 : 1-x]
  auto px = meet(act(r.A * inverse(r.B) * r.A, pi), l);
  Rat x = trace_coords(r.params).x;
  REQUIRE(proj_equal(px, P(Vec4<Rat>{0, 0, 1, 1 - x})));
}

TEST_CASE("cross ratio coordinates over the float backend") {
  auto r = build_representation(AffineParams<double>{3.0, 3.0, 1.0, 1.0});
  auto c = cross_ratio_coords(r);
  REQUIRE(approx_eq(c.w, 3.0));
  REQUIRE(approx_eq(c.x, 3.0));
  REQUIRE(approx_eq(c.y, 3.0));
  REQUIRE(approx_eq(c.z, 3.0));
}
