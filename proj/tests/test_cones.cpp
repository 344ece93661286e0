#include "admlie/cones.hpp"

#include <gtest/gtest.h>

#include <random>

#include "admlie/catalog.hpp"

using namespace admlie;

namespace {

struct JacobiFixture {
  CatalogEntry entry = catalog_get("jacobi(1)");
  LieAlgebra g = build(entry.data);
  ConeQuery query = make_cone_query(entry.data, *entry.f, entry.convex_type_x);
  BuiltClassified bc = build_classified(entry.data, g, *entry.h, *entry.d_v, *entry.d_z);

  // Composite coordinates (v | z | l) for the 6-dimensional Jacobi algebra.
  Vec elt(Vec v, Rat z, Vec l) const {
    return entry.data.compose(std::move(v), Vec{z}, std::move(l));
  }
};

Vec sp2_coords(const Mat& x) { return catalog_detail::sp_coordinates(1, x); }

std::mt19937_64 rng(20250105);

Rat rr() {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  return Rat(num(rng), den(rng));
}

/// Random element of the cone: a positive-definite quadratic part plus the
/// exact minimizing constant, so the bordered matrix is PSD by construction.
Vec random_cone_element(const JacobiFixture& fx) {
  Mat b(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b.at(i, j) = rr();
  const Mat q = b.transpose() * b + Mat::identity(2);
  const Mat omega = fx.query.form.omega;
  const Mat x = Rat(-2) * *try_inverse(omega) * q;  // q = -1/2 omega x
  Vec w{rr(), rr()};
  const Vec l = omega.transpose().apply(w);
  const Rat c = dot(l, try_inverse(q)->apply(l)) / 4;  // boundary constant
  return fx.elt(w, c, sp2_coords(x));
}

}  // namespace

TEST(PhiF, BlockImages) {
  const JacobiFixture fx;
  const auto central = phi_f(fx.query, fx.elt(zero_vec(2), Rat(1), zero_vec(3)));
  EXPECT_TRUE(is_zero(central.w));
  EXPECT_EQ(central.c, 1);
  EXPECT_TRUE(central.x.is_zero());

  const auto l_only = phi_f(fx.query, fx.elt(zero_vec(2), Rat(0), Vec{Rat(1), Rat(0), Rat(0)}));
  EXPECT_TRUE(l_only.x == fx.entry.data.rho[0]);
}

TEST(ToPolynomial, Examples) {
  const JacobiFixture fx;
  const Mat omega = fx.query.form.omega;

  const auto constant = to_polynomial(JacobiElement{zero_vec(2), Rat(1), Mat(2, 2)}, omega);
  EXPECT_TRUE(constant.q.is_zero());
  EXPECT_TRUE(is_zero(constant.l));
  EXPECT_EQ(constant.c, 1);

  // Linear part of (e1, 0, 0) evaluates as omega(e1, .).
  const auto linear = to_polynomial(JacobiElement{Vec{Rat(1), Rat(0)}, Rat(0), Mat(2, 2)}, omega);
  EXPECT_TRUE(linear.q.is_zero());
  EXPECT_EQ(dot(linear.l, Vec{Rat(0), Rat(1)}), 1);  // omega(e1, e2) = 1
  EXPECT_EQ(dot(linear.l, Vec{Rat(1), Rat(0)}), 0);

  // E = [[0,1],[0,0]] carries the quadratic form v2^2 / 2 under this
  // orientation of omega; the shipped unit -2F carries exactly v1^2.
  Mat e(2, 2);
  e.at(0, 1) = 1;
  const auto pe = to_polynomial(JacobiElement{zero_vec(2), Rat(0), e}, omega);
  EXPECT_TRUE(pe.q == (Mat{{Rat(0), Rat(0)}, {Rat(0), Rat(1, 2)}}));

  Mat unit(2, 2);
  unit.at(1, 0) = -2;
  const auto pu = to_polynomial(JacobiElement{zero_vec(2), Rat(0), unit}, omega);
  EXPECT_TRUE(pu.q == (Mat{{Rat(1), Rat(0)}, {Rat(0), Rat(0)}}));
}

TEST(InCone, ConstantsAndAffine) {
  const JacobiFixture fx;
  EXPECT_TRUE(in_cone(fx.query, fx.elt(zero_vec(2), Rat(2), zero_vec(3))));
  EXPECT_TRUE(in_cone(fx.query, fx.elt(zero_vec(2), Rat(0), zero_vec(3))));
  EXPECT_FALSE(in_cone(fx.query, fx.elt(zero_vec(2), Rat(-1), zero_vec(3))));
  // A positive constant is a boundary point, not interior: perturbing the
  // quadratic part negative leaves the cone.
  EXPECT_FALSE(in_cone_interior(fx.query, fx.elt(zero_vec(2), Rat(1), zero_vec(3))));
  // Nonzero V part makes the polynomial affine non-constant: never in cone.
  EXPECT_FALSE(in_cone(fx.query, fx.elt(Vec{Rat(1), Rat(0)}, Rat(5), zero_vec(3))));
  EXPECT_FALSE(in_cone(fx.query, fx.elt(Vec{Rat(0), Rat(-1, 2)}, Rat(0), zero_vec(3))));
}

TEST(InCone, HElementPlusConstantIsInterior) {
  const JacobiFixture fx;
  // U/2 has Hamiltonian |v|^2 / 4; adding a positive constant gives an
  // interior point of the full cone.
  const Vec u = scaled(*fx.entry.convex_type_x, Rat(1, 2));
  EXPECT_TRUE(in_cone_interior(fx.query, fx.elt(zero_vec(2), Rat(1), u)));
  EXPECT_FALSE(in_cone_interior(fx.query, fx.elt(zero_vec(2), Rat(0), u)));
  EXPECT_TRUE(in_cone(fx.query, fx.elt(zero_vec(2), Rat(0), u)));
}

TEST(InCone, HomogeneousAndConvex) {
  const JacobiFixture fx;
  for (int rep = 0; rep < 25; ++rep) {
    const Vec x = random_cone_element(fx);
    const Vec y = random_cone_element(fx);
    ASSERT_TRUE(in_cone(fx.query, x));
    ASSERT_TRUE(in_cone(fx.query, y));
    for (const Rat t : {Rat(2), Rat(1, 3), Rat(7, 2)})
      EXPECT_TRUE(in_cone(fx.query, scaled(x, t)));
    EXPECT_TRUE(in_cone(fx.query, vec_sum(x, y)));
  }
}

TEST(InCone, InvariantUnderNilpotentExponentials) {
  const JacobiFixture fx;
  // e^{ad n} for V-block n is an exact polynomial of degree 2.
  for (int p = 0; p < 2; ++p) {
    const Mat ad_n = fx.g.ad_matrix(fx.g.unit(p));
    Mat exp = Mat::identity(6) + ad_n + Rat(1, 2) * (ad_n * ad_n);
    EXPECT_TRUE((ad_n * ad_n * ad_n).is_zero());
    for (int rep = 0; rep < 10; ++rep)
      EXPECT_TRUE(in_cone(fx.query, exp.apply(random_cone_element(fx))));
  }
}

TEST(InCone, PullbackThroughExplicitJacobiAlgebra) {
  // Membership in W_f for ex318 must agree with membership of the phi_f
  // image inside the Jacobi algebra hsp(V, f o beta) itself.
  const auto e318 = catalog_get("ex318");
  const ConeQuery q = make_cone_query(e318.data, *e318.f, e318.convex_type_x);
  const SpindlerData hsp_data = generalized_jacobi_data(4, 1, catalog_detail::beta_from_omega(q.form.omega));
  const ConeQuery q_hsp = make_cone_query(hsp_data, Vec{Rat(1)});
  std::vector<Vec> sp_flat;
  for (const auto& m : hsp_data.rho) sp_flat.push_back(m.flatten());
  const Mat sp_cols = Mat::from_cols(sp_flat);
  std::mt19937_64 local(42);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int rep = 0; rep < 40; ++rep) {
    Vec v(9);
    for (auto& x : v) x = Rat(d(local), 1 + (d(local) & 1));
    const JacobiElement img = phi_f(q, v);
    const auto coords = solve(sp_cols, img.x.flatten());
    ASSERT_TRUE(coords);
    const Vec img_composite = hsp_data.compose(img.w, Vec{img.c}, *coords);
    EXPECT_EQ(in_cone(q, v), in_cone(q_hsp, img_composite));
  }
}

TEST(Witness, JacobiPolynomialsExact) {
  const JacobiFixture fx;
  const Vec central = pick_central(fx.query, fx.bc.classified.d_z, 1);
  EXPECT_EQ(central, Vec{Rat(1)});
  const Element wit =
      witness_3grading(fx.query, fx.bc.grading, fx.bc.classified, 1, fx.entry.jordan_units_plus, central);
  const auto poly = cone_polynomial(fx.query, wit.coords);
  EXPECT_TRUE(poly.q == (Mat{{Rat(1), Rat(0)}, {Rat(0), Rat(0)}}));  // v1^2
  EXPECT_TRUE(is_zero(poly.l));
  EXPECT_EQ(poly.c, 1);

  const Vec central_minus = pick_central(fx.query, fx.bc.classified.d_z, -1);
  EXPECT_TRUE(is_zero(central_minus));  // z sits on the +1 side only
  const Element wit_minus = witness_3grading(fx.query, fx.bc.grading, fx.bc.classified, -1,
                                             fx.entry.jordan_units_minus, central_minus);
  const auto poly_minus = cone_polynomial(fx.query, wit_minus.coords);
  EXPECT_TRUE(poly_minus.q == (Mat{{Rat(0), Rat(0)}, {Rat(0), Rat(1)}}));  // v2^2
  EXPECT_EQ(poly_minus.c, 0);
}

TEST(Witness, RejectsWrongEigenvector) {
  const JacobiFixture fx;
  // E sits on the -1 side for the shipped h, so it fails as a +1 unit.
  EXPECT_THROW(witness_3grading(fx.query, fx.bc.grading, fx.bc.classified, 1,
                                {Vec{Rat(0), Rat(1), Rat(0)}}, Vec{Rat(1)}),
               NotInEigenspaceError);
  EXPECT_THROW(witness_3grading(fx.query, fx.bc.grading, fx.bc.classified, 1,
                                fx.entry.jordan_units_plus, Vec{Rat(-1)}),
               InvalidDataError);
}

TEST(CertifySpan, BothSidesOfJacobi) {
  const JacobiFixture fx;
  for (int side : {1, -1}) {
    const auto& units = side == 1 ? fx.entry.jordan_units_plus : fx.entry.jordan_units_minus;
    const Vec central = pick_central(fx.query, fx.bc.classified.d_z, side);
    const Element wit =
        witness_3grading(fx.query, fx.bc.grading, fx.bc.classified, side, units, central);
    const auto cert = certify_span(fx.query, fx.bc.grading.side(side), wit.coords);
    ASSERT_TRUE(cert);
    const Rat floor = Rat(1) / Rat(Int(1) << 40);
    for (const auto& eps : cert->epsilons) EXPECT_GE(eps, floor);
    for (const auto& p : cert->points) EXPECT_TRUE(in_cone(fx.query, p));
    std::vector<Vec> diffs;
    for (const auto& p : cert->points) {
      Vec d = p;
      add_scaled(d, -1, wit.coords);
      diffs.push_back(std::move(d));
    }
    EXPECT_TRUE(subspace_equal(diffs, fx.bc.grading.side(side)));
  }
}

TEST(CertifySpan, TrivialSubspace) {
  const JacobiFixture fx;
  const auto cert = certify_span(fx.query, {}, zero_vec(6));
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->points.empty());
}

TEST(CertifySpan, BoundaryWitnessInconclusive) {
  const JacobiFixture fx;
  // Witness without the central summand: p = v1^2 sits on the boundary and
  // the z direction can never be perturbed both ways.
  const Element wit = witness_3grading(fx.query, fx.bc.grading, fx.bc.classified, 1,
                                       fx.entry.jordan_units_plus, zero_vec(1));
  EXPECT_FALSE(certify_span(fx.query, fx.bc.grading.plus, wit.coords, 12));
}

TEST(CertifySpan, WitnessOutsideConeIsAnError) {
  const JacobiFixture fx;
  const Vec bad = fx.elt(zero_vec(2), Rat(-1), zero_vec(3));
  EXPECT_THROW(certify_span(fx.query, {fx.g.unit(2)}, bad), WitnessNotInConeError);
}

TEST(UBlock, ConeCollapsesIntoCenter) {
  for (const char* name : {"jacobi(1)", "jacobi(2)", "heis(1)", "oscillator", "ex318", "ex319(1)"}) {
    const auto e = catalog_get(name);
    const ConeQuery q = make_cone_query(e.data, *e.f, e.convex_type_x);
    EXPECT_TRUE(u_block_cone_check(q).holds) << name;
  }
}

TEST(NoGo, OscillatorScan) {
  const auto osc = catalog_get("oscillator");
  const ConeQuery q = make_cone_query(osc.data, *osc.f, osc.convex_type_x);
  const auto basis = derivation_algebra(q.algebra);
  ASSERT_EQ(basis.size(), 5u);
  const auto candidates =
      linear_combinations(basis, {Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2)});
  const auto report = solvable_no_go_scan(q, candidates);
  ASSERT_EQ(report.survivors.size(), 1u);
  EXPECT_TRUE(candidates[report.survivors[0]].is_zero());
  EXPECT_TRUE(report.u_block.holds);
}

TEST(NoGo, HypothesesEnforced) {
  const auto jac = catalog_get("jacobi(1)");  // not solvable
  const ConeQuery q = make_cone_query(jac.data, *jac.f, jac.convex_type_x);
  EXPECT_THROW(solvable_no_go_scan(q, {}), HypothesisViolationError);
}
