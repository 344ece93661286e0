#include "admlie/spindler.hpp"

#include <gtest/gtest.h>

#include <random>

#include "admlie/catalog.hpp"
#include "oracles.hpp"

using namespace admlie;

namespace {

Mat std_omega(int n) { return catalog_detail::omega_standard(n); }

Mat random_mat(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> d(-4, 4);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Rat(d(rng), 1 + (d(rng) & 1));
  return m;
}

}  // namespace

TEST(Build, BracketFormula) {
  const auto heis = catalog_get("heis(1)");
  const LieAlgebra g = build(heis.data);
  ASSERT_EQ(g.dim(), 3);
  // [(e1,0,0),(e2,0,0)] = (0, omega(e1,e2), 0) = (0, 1, 0) in V|z order.
  EXPECT_EQ(g.bracket_coords(g.unit(0), g.unit(1)), (Vec{Rat(0), Rat(0), Rat(1)}));
}

TEST(Build, Dimensions) {
  EXPECT_EQ(build(catalog_get("jacobi(1)").data).dim(), 6);
  EXPECT_EQ(build(catalog_get("jacobi(2)").data).dim(), 15);
  EXPECT_EQ(build(catalog_get("ex318").data).dim(), 9);
  EXPECT_EQ(build(catalog_get("oscillator").data).dim(), 4);
}

TEST(Build, RejectsNonInvariantBeta) {
  SpindlerData data;
  data.l = LieAlgebra::create(1, {});          // abelian
  data.rho = {Mat::identity(2)};               // not symplectic for any form
  data.dim_v = 2;
  data.dim_z = 1;
  data.beta = catalog_detail::beta_from_omega(std_omega(1));
  EXPECT_THROW(data.validate(), InvalidDataError);
}

TEST(Build, RejectsNonHomomorphicRho) {
  auto jac = catalog_get("jacobi(1)");
  std::swap(jac.data.rho[1], jac.data.rho[2]);  // rho(E) <-> rho(F)
  EXPECT_THROW(jac.data.validate(), InvalidDataError);
}

TEST(Build, BetaSpanWarning) {
  auto heis = catalog_get("heis(1)");
  heis.data.dim_z = 2;  // extra central direction never hit by beta
  BetaTensor beta(2, 2);
  beta.set(0, 1, Vec{Rat(1), Rat(0)});
  heis.data.beta = beta;
  const auto result = build_report(heis.data);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_NE(result.warnings[0].find("beta(V, V) does not span z"), std::string::npos);
}

TEST(SpOfBeta, StandardFormGivesSp2) {
  const auto basis = sp_of_beta(2, 1, catalog_detail::beta_from_omega(std_omega(1)));
  EXPECT_EQ(basis.size(), 3u);
}

TEST(SpOfBeta, ZeroFormGivesAllEndomorphisms) {
  EXPECT_EQ(sp_of_beta(2, 1, BetaTensor(2, 1)).size(), 4u);
}

TEST(SpOfBeta, Ex318IsBlockDiagonal) {
  const auto e = catalog_get("ex318");
  const auto basis = sp_of_beta(4, 2, e.data.beta);
  ASSERT_EQ(basis.size(), 6u);
  for (const auto& m : basis)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if ((i < 2) != (j < 2)) EXPECT_EQ(m.at(i, j), 0);
}

TEST(Sharp, ExamplesAndLaws) {
  const Mat omega = std_omega(1);
  EXPECT_TRUE(sharp(Mat::identity(2), omega) == Mat::identity(2));
  for (const auto& x : sp_of_beta(2, 1, catalog_detail::beta_from_omega(omega)))
    EXPECT_TRUE(sharp(x, omega) == -x);

  std::mt19937_64 rng(99);
  const Mat omega4 = std_omega(2);
  for (int rep = 0; rep < 30; ++rep) {
    const Mat a = random_mat(rng, 4), b = random_mat(rng, 4);
    EXPECT_TRUE(sharp(sharp(a, omega4), omega4) == a);
    EXPECT_TRUE(sharp(a * b, omega4) == sharp(b, omega4) * sharp(a, omega4));
    // Defining property omega(Av, w) = omega(v, A# w) on basis pairs.
    const Mat lhs = a.transpose() * omega4;
    const Mat rhs = omega4 * sharp(a, omega4);
    EXPECT_TRUE(lhs == rhs);
  }
  EXPECT_THROW(sharp(Mat::identity(2), Mat(2, 2)), OmegaSingularError);
}

TEST(Commutant, Examples) {
  const auto sl2 = catalog_get("jacobi(1)");
  const auto scalars = commutant(sl2.data.rho, 2);
  ASSERT_EQ(scalars.size(), 1u);  // standard representation: scalars only
  EXPECT_TRUE(scalars[0] == Mat::identity(2));

  const auto e318 = catalog_get("ex318");
  const SymplecticForm form = make_symplectic_form(e318.data.beta, *e318.f);
  EXPECT_EQ(commutant(e318.data.rho, 4, &form).size(), 4u);  // 2x2 multiplicity space

  EXPECT_EQ(commutant({Mat(2, 2)}, 2).size(), 4u);  // zero representation
}

TEST(PsiG, Examples) {
  const auto e = catalog_get("ex318");
  const auto sp = sp_of_beta(4, 2, e.data.beta);
  EXPECT_TRUE(psi_g(*e.f, *e.f, e.data.beta, &sp) == Mat::identity(4));
  Mat proj(4, 4);
  proj.at(0, 0) = proj.at(1, 1) = 1;
  EXPECT_TRUE(psi_g(Vec{Rat(1), Rat(0)}, *e.f, e.data.beta, &sp) == proj);
  EXPECT_TRUE(psi_g(Vec{Rat(0), Rat(0)}, *e.f, e.data.beta, &sp).is_zero());
}

TEST(PsiG, CharacterizesSpOfBeta) {
  // sp(V, beta) = {x in sp(V, omega) : [x, Psi_g] = 0 for spanning g}.
  const auto e = catalog_get("ex318");
  const Mat psi1 = psi_g(Vec{Rat(1), Rat(0)}, *e.f, e.data.beta);
  const Mat psi2 = psi_g(Vec{Rat(0), Rat(1)}, *e.f, e.data.beta);
  const Mat omega = e.data.beta.gram(*e.f);
  std::vector<Vec> rows;
  auto add_constraints = [&](auto entry_of) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Vec row = zero_vec(16);
        entry_of(row, i, j);
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  };
  // omega x + x^T omega = 0
  add_constraints([&](Vec& row, int i, int j) {
    for (int k = 0; k < 4; ++k) {
      row[std::size_t(k) * 4 + j] += omega.at(i, k);
      row[std::size_t(k) * 4 + i] += omega.at(k, j);
    }
  });
  for (const Mat* psi : {&psi1, &psi2})
    add_constraints([&](Vec& row, int i, int j) {
      for (int k = 0; k < 4; ++k) {
        row[std::size_t(i) * 4 + k] += psi->at(k, j);
        row[std::size_t(k) * 4 + j] -= psi->at(i, k);
      }
    });
  const auto cut = kernel(Mat::from_rows(rows));
  const auto direct = sp_of_beta(4, 2, e.data.beta);
  std::vector<Vec> direct_flat;
  for (const auto& m : direct) direct_flat.push_back(m.flatten());
  EXPECT_TRUE(subspace_equal(cut, direct_flat));
}

TEST(ConvexType, Witnesses) {
  const auto jac = catalog_get("jacobi(1)");
  const SymplecticForm form = make_symplectic_form(jac.data.beta, *jac.f);
  EXPECT_TRUE(check_convex_type(jac.data, form, *jac.convex_type_x));
  EXPECT_FALSE(check_convex_type(jac.data, form, Vec{Rat(1), Rat(0), Rat(0)}));  // x = H
  EXPECT_FALSE(check_convex_type(jac.data, form, zero_vec(3)));
}

TEST(EffectiveTorus, Checks) {
  const auto jac = catalog_get("jacobi(1)");
  EXPECT_TRUE(check_effective_torus(jac.data, jac.torus));
  EXPECT_FALSE(check_effective_torus(jac.data, {}));
  EXPECT_FALSE(check_effective_torus(jac.data, {zero_vec(3)}));
  EXPECT_THROW(check_effective_torus(jac.data, {jac.data.l.unit(0), jac.data.l.unit(1)}),
               NotAbelianError);
  const auto e318 = catalog_get("ex318");
  EXPECT_TRUE(check_effective_torus(e318.data, e318.torus));
}

TEST(JacobiBuilders, Dimensions) {
  EXPECT_EQ(build_jacobi(2, std_omega(1)).dim(), 6);
  EXPECT_EQ(build_jacobi(4, std_omega(2)).dim(), 15);
  const auto e = catalog_get("ex318");
  EXPECT_EQ(build_generalized_jacobi(4, 2, e.data.beta).dim(), 12);
  EXPECT_THROW(build_jacobi(2, Mat(2, 2)), OmegaSingularError);
}

TEST(ClosedForms, CenterAndDerived) {
  for (const char* name : {"jacobi(1)", "ex318", "heis(1)", "oscillator", "sl2"}) {
    const auto e = catalog_get(name);
    const LieAlgebra g = build(e.data);
    EXPECT_TRUE(subspace_equal(center(g), center_formula(e.data))) << name;
    EXPECT_TRUE(subspace_equal(derived_subalgebra(g), derived_formula(e.data))) << name;
  }
}

TEST(Commutant, SkewPartHasImaginarySpectrumAtProbes) {
  // The sharp-antisymmetric part of the commutant of a convex-type module
  // has no nonzero real eigenvalues; probe a rational grid exactly.
  const auto e = catalog_get("ex318");
  const SymplecticForm form = make_symplectic_form(e.data.beta, *e.f);
  const auto comm = commutant(e.data.rho, 4, &form);
  std::vector<Mat> skew;
  for (const auto& a : comm) {
    const Mat s = Rat(1, 2) * (a - sharp(a, form.omega));
    if (!s.is_zero()) skew.push_back(s);
  }
  ASSERT_FALSE(skew.empty());
  for (const auto& x : skew)
    for (const Rat lambda : {Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2), Rat(2), Rat(-2)}) {
      EXPECT_TRUE(eigenspace(x, lambda).empty());
      Mat shifted = x;
      for (int i = 0; i < 4; ++i) shifted.at(i, i) -= lambda;
      EXPECT_NE(det(shifted), 0);
    }
}

TEST(HElementCandidate, EmbedsIntoAmbientSymplectic) {
  // The H-element candidate of sp(V, beta) is also a convex-type witness
  // for the ambient form f o beta.
  const auto e = catalog_get("ex318");
  const Mat omega = e.data.beta.gram(*e.f);
  Mat candidate(4, 4);  // U on each copy
  candidate.at(0, 1) = 1;
  candidate.at(1, 0) = -1;
  candidate.at(2, 3) = 1;
  candidate.at(3, 2) = -1;
  EXPECT_TRUE(hamiltonian_positive_definite(omega, candidate));
}

TEST(FromMatrixBasis, RejectsBadInput) {
  EXPECT_THROW(from_matrix_basis({Mat::identity(2), Rat(2) * Mat::identity(2)}), InvalidDataError);
  // E alone spans a one-dimensional abelian algebra; {E, F} does not close
  // because [E, F] = H falls outside the span.
  Mat e(2, 2), f(2, 2);
  e.at(0, 1) = 1;
  f.at(1, 0) = 1;
  EXPECT_EQ(from_matrix_basis({e}).dim(), 1);
  EXPECT_THROW(from_matrix_basis({e, f}), InvalidDataError);
}
