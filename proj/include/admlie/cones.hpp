#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admlie/derivations.hpp"
#include "admlie/lie_algebra.hpp"
#include "admlie/linalg.hpp"
#include "admlie/spindler.hpp"

namespace admlie {

class WitnessNotInConeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotInEigenspaceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class HypothesisViolationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Element (w, c, x) of the Jacobi algebra hsp(V, Omega).
struct JacobiElement {
  Vec w;   // V part
  Rat c;   // value of f on the central part
  Mat x;   // sp(V, Omega) part
};

/// Quadratic polynomial p(v) = v^T Q v + l^T v + c on V.
struct QuadPolynomial {
  Mat q;
  Vec l;
  Rat c;
};

/// The cone W_f on build(data), pulled back from the non-negative
/// polynomials of the Jacobi algebra along (v, z, x) -> (v, f(z), rho(x)).
struct ConeQuery {
  SpindlerData data;
  Vec f;
  SymplecticForm form;  // omega = gram of f o beta, invertible
  LieAlgebra algebra;   // build(data)
  std::optional<Vec> convex_witness;  // l-coordinates; validated lazily
};

inline JacobiElement phi_f(const ConeQuery& query, const Vec& composite) {
  if (int(composite.size()) != query.data.total_dim())
    throw InvalidDataError("phi_f: element has wrong length");
  JacobiElement j;
  j.w = query.data.v_part(composite);
  j.c = dot(query.f, query.data.z_part(composite));
  j.x = query.data.rho_of(query.data.l_part(composite));
  if (!(j.x.transpose() * query.form.omega + query.form.omega * j.x).is_zero())
    throw InvalidDataError("phi_f image leaves sp(V, omega): beta is not l-invariant for f");
  return j;
}

inline JacobiElement phi_f(const ConeQuery& query, const Element& e) {
  if (e.parent->dim() != query.data.total_dim()) throw ParentMismatchError("phi_f: wrong parent");
  return phi_f(query, e.coords);
}

/// phi(w, c, x)(v) = 1/2 Omega(xv, v) + Omega(w, v) + c as an explicit
/// quadratic polynomial. The evaluation identity is re-verified on the
/// basis probe vectors.
inline QuadPolynomial to_polynomial(const JacobiElement& j, const Mat& omega) {
  const int n = omega.rows();
  QuadPolynomial p;
  const Mat a = j.x.transpose() * omega;  // bilinear form (v, w) -> Omega(xv, w)
  p.q = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) p.q.at(i, k) = (a.at(i, k) + a.at(k, i)) / 4;
  p.l = omega.transpose().apply(j.w);
  p.c = j.c;

  auto direct = [&](const Vec& v) {
    const Vec xv = j.x.apply(v);
    Rat val = 0;
    for (int i = 0; i < n; ++i) val += xv[i] * dot(omega.row(i), v);
    val /= 2;
    for (int i = 0; i < n; ++i) val += j.w[i] * dot(omega.row(i), v);
    return val + j.c;
  };
  auto through_matrix = [&](const Vec& v) {
    return dot(v, p.q.apply(v)) + dot(p.l, v) + p.c;
  };
  for (int i = 0; i < n; ++i) {
    Vec v = zero_vec(n);
    v[i] = 1;
    if (direct(v) != through_matrix(v)) throw Error("to_polynomial: evaluation identity fails");
    for (int k = i + 1; k < n; ++k) {
      v[k] = 1;
      if (direct(v) != through_matrix(v)) throw Error("to_polynomial: evaluation identity fails");
      v[k] = 0;
    }
  }
  return p;
}

/// Bordered symmetric matrix whose positive semidefiniteness is exactly
/// equivalent to p >= 0 on all of V.
inline Mat bordered_matrix(const QuadPolynomial& p) {
  const int n = p.q.rows();
  Mat b(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) b.at(i, k) = p.q.at(i, k);
    b.at(i, n) = p.l[i] / 2;
    b.at(n, i) = p.l[i] / 2;
  }
  b.at(n, n) = p.c;
  return b;
}

inline bool polynomial_nonnegative(const QuadPolynomial& p) {
  return psd_status(bordered_matrix(p)) != PsdStatus::Indefinite;
}

inline QuadPolynomial cone_polynomial(const ConeQuery& query, const Vec& composite) {
  return to_polynomial(phi_f(query, composite), query.form.omega);
}

inline bool in_cone(const ConeQuery& query, const Vec& composite) {
  return polynomial_nonnegative(cone_polynomial(query, composite));
}

/// Interior of the pulled-back polynomial cone: the bordered matrix is
/// positive definite. Note that points that are merely interior relative to
/// a grading eigenspace (the certified subspaces) are usually boundary
/// points of the full cone; relative interiority is what certify_span
/// establishes through its two-sided epsilon probes.
inline bool in_cone_interior(const ConeQuery& query, const Vec& composite) {
  return psd_status(bordered_matrix(cone_polynomial(query, composite))) ==
         PsdStatus::PositiveDefinite;
}

/// Checks that phi_f is a homomorphism into hsp(V, omega) on all basis
/// pairs of build(data).
inline void verify_phi_homomorphism(const ConeQuery& query) {
  const int n = query.data.total_dim();
  auto hsp_bracket = [&](const JacobiElement& a, const JacobiElement& b) {
    JacobiElement out;
    Vec xw = a.x.apply(b.w);
    add_scaled(xw, -1, b.x.apply(a.w));
    out.w = std::move(xw);
    out.c = dot(a.w, query.form.omega.apply(b.w));
    out.x = commutator(a.x, b.x);
    return out;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const JacobiElement lhs = phi_f(query, query.algebra.basis_bracket(i, j));
      const JacobiElement rhs =
          hsp_bracket(phi_f(query, query.algebra.unit(i)), phi_f(query, query.algebra.unit(j)));
      if (!(lhs.w == rhs.w && lhs.c == rhs.c && lhs.x == rhs.x))
        throw Error("phi_f is not a homomorphism on basis pair (" + std::to_string(i) + ", " +
                    std::to_string(j) + ")");
    }
}

inline ConeQuery make_cone_query(const SpindlerData& data, const Vec& f,
                                 std::optional<Vec> convex_witness = std::nullopt) {
  ConeQuery q;
  q.data = data;
  q.f = f;
  q.form = make_symplectic_form(data.beta, f);
  if (!try_inverse(q.form.omega)) throw OmegaSingularError("f o beta is not symplectic");
  q.algebra = build(data);
  q.convex_witness = std::move(convex_witness);
  verify_phi_homomorphism(q);
  return q;
}

/// Deterministic f-positive central direction inside the side eigenspace
/// of D_z, normalized to f = 1; zero when the side has no central part on
/// which f is nonzero (the witness then consists of the Jordan units alone).
inline Vec pick_central(const ConeQuery& query, const Mat& d_z, int side) {
  for (const auto& v : eigenspace(d_z, Rat(side))) {
    const Rat fv = dot(query.f, v);
    if (fv != 0) return scaled(v, 1 / fv);
  }
  return zero_vec(query.data.dim_z);
}

/// Witness element sum(x_k) + central for one side of a grading. Each x_k
/// must be an exact side-eigenvector of ad(h) inside s = [l, l]; the result
/// is verified to lie in the grading eigenspace. `central` may be zero when
/// the grading side contains no central directions.
inline Element witness_3grading(const ConeQuery& query, const Grading3& grading,
                                const ClassifiedDerivation& classified, int side,
                                const std::vector<Vec>& jordan_units, const Vec& central) {
  if (side != 1 && side != -1) throw InvalidDataError("side must be +1 or -1");
  if (int(central.size()) != query.data.dim_z) throw InvalidDataError("central part has wrong length");
  if (!is_zero(central) && dot(query.f, central) <= 0)
    throw InvalidDataError("central part must satisfy f(central) > 0");
  const auto s = detail::semisimple_part(query.data.l);
  Vec x_sum = zero_vec(query.data.dim_l());
  for (const auto& xk : jordan_units) {
    if (int(xk.size()) != query.data.dim_l()) throw InvalidDataError("jordan unit has wrong length");
    if (!s.span.contains(xk)) throw NotInEigenspaceError("jordan unit is not contained in [l, l]");
    Vec shifted = query.data.l.bracket_coords(classified.h, xk);
    add_scaled(shifted, Rat(-side), xk);
    if (!is_zero(shifted))
      throw NotInEigenspaceError("jordan unit is not an exact eigenvector of ad(h) for the side");
    add_scaled(x_sum, 1, xk);
  }
  const Vec witness = query.data.compose(zero_vec(query.data.dim_v), central, x_sum);
  if (!Subspace(grading.side(side), query.algebra.dim()).contains(witness))
    throw NotInEigenspaceError("assembled witness does not lie in the grading eigenspace");
  return Element(query.algebra, witness);
}

/// Proof object for span(W_f  intersect  S) = S: a witness in the cone and,
/// for every basis direction of S, a two-sided epsilon at which the
/// perturbed witness stays in the cone.
struct SpanCertificate {
  std::vector<Vec> subspace;
  Vec witness;
  std::vector<Rat> epsilons;
  std::vector<Vec> points;  // witness +- eps_i e_i, in direction order
};

/// Searches eps in {1, 1/2, 1/4, ...} per direction. A direction that
/// exhausts the halving budget makes the outcome inconclusive (empty),
/// never a disproof. A witness outside the cone is a hard error.
inline std::optional<SpanCertificate> certify_span(const ConeQuery& query,
                                                   const std::vector<Vec>& subspace,
                                                   const Vec& witness, int max_halvings = 40) {
  const Subspace span(subspace, query.algebra.dim());
  if (!span.contains(witness)) throw InvalidDataError("witness is not contained in the subspace");
  if (!in_cone(query, witness)) throw WitnessNotInConeError("supplied witness fails cone membership");

  SpanCertificate cert;
  cert.subspace = subspace;
  cert.witness = witness;
  for (const auto& dir : subspace) {
    Rat eps = 1;
    bool found = false;
    for (int k = 0; k <= max_halvings; ++k, eps /= 2) {
      Vec plus = witness;
      add_scaled(plus, eps, dir);
      if (!in_cone(query, plus)) continue;
      Vec minus = witness;
      add_scaled(minus, -eps, dir);
      if (!in_cone(query, minus)) continue;
      cert.epsilons.push_back(eps);
      cert.points.push_back(std::move(plus));
      cert.points.push_back(std::move(minus));
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }

  // Independent re-validation: every certificate point is in the cone and
  // the points span exactly the certified subspace.
  for (const auto& p : cert.points)
    if (!in_cone(query, p)) throw Error("certificate re-validation failed: point outside cone");
  if (!subspace.empty()) {
    std::vector<Vec> diffs;
    for (std::size_t i = 0; i < cert.points.size(); ++i) {
      Vec d = cert.points[i];
      add_scaled(d, -1, witness);
      diffs.push_back(std::move(d));
    }
    if (!subspace_equal(diffs, subspace))
      throw Error("certificate re-validation failed: points do not span the subspace");
  }
  return cert;
}

struct UBlockConeCheck {
  bool holds = false;
  std::string detail;
};

/// Exact decision of W_f intersect u = {central z with f(z) >= 0} inside
/// z(g), where u is the V + z block. A u-element (v, z, 0) maps to the
/// affine polynomial Omega(v, .) + f(z), which is non-negative everywhere
/// iff its linear part vanishes; invertibility of Omega turns that into
/// v = 0. No sampling is involved, but each V basis direction is probed as
/// a cross-check.
inline UBlockConeCheck u_block_cone_check(const ConeQuery& query) {
  UBlockConeCheck out;
  // Omega invertible was established by make_cone_query; v != 0 therefore
  // forces a nonzero linear part, and the bordered matrix of an affine
  // polynomial with nonzero linear part is indefinite.
  for (int p = 0; p < query.data.dim_v; ++p) {
    Vec u = zero_vec(query.algebra.dim());
    u[query.data.v_index(p)] = 1;
    if (in_cone(query, u)) {
      out.detail = "V basis direction " + std::to_string(p) + " unexpectedly lies in the cone";
      return out;
    }
    for (int r = 0; r < query.data.dim_z; ++r) {
      u[query.data.z_index(r)] = 1;
      if (in_cone(query, u)) {
        out.detail = "mixed u element unexpectedly lies in the cone";
        return out;
      }
      u[query.data.z_index(r)] = 0;
    }
  }
  const Subspace center_span(center(query.algebra), query.algebra.dim());
  for (int r = 0; r < query.data.dim_z; ++r) {
    Vec zr = zero_vec(query.algebra.dim());
    zr[query.data.z_index(r)] = 1;
    if (!center_span.contains(zr)) {
      out.detail = "z block is not central";
      return out;
    }
  }
  out.holds = true;
  out.detail = "W_f intersect u is the f-nonnegative half of the z block, contained in z(g)";
  return out;
}

struct NoGoReport {
  std::vector<std::string> outcomes;   // one entry per candidate
  std::vector<std::size_t> survivors;  // indices of candidates passing all tests
  UBlockConeCheck u_block;
};

/// Finite scan over candidate derivations of a solvable build: each
/// candidate either fails 3-grading detection, or has its (+-1)-eigenspaces
/// confined to the nilradical where cone intersection collapses into the
/// center, killing the span condition. Only candidates with both eigenspace
/// conditions trivial survive; the zero derivation always does. The scan is
/// a finite sample, not a proof over all of der(g).
inline NoGoReport solvable_no_go_scan(const ConeQuery& query, const std::vector<Mat>& candidates) {
  // Hypotheses: abelian reductive factor, solvable build, z(g) inside [g, g].
  for (int a = 0; a < query.data.dim_l(); ++a)
    for (int b = a + 1; b < query.data.dim_l(); ++b)
      if (!is_zero(query.data.l.basis_bracket(a, b)))
        throw HypothesisViolationError("reductive factor is not abelian");
  if (!is_solvable(query.algebra)) throw HypothesisViolationError("algebra is not solvable");
  {
    const Subspace derived(derived_subalgebra(query.algebra), query.algebra.dim());
    for (const auto& c : center(query.algebra))
      if (!derived.contains(c))
        throw HypothesisViolationError("z(g) is not contained in [g, g]");
  }

  NoGoReport report;
  report.u_block = u_block_cone_check(query);
  if (!report.u_block.holds)
    throw HypothesisViolationError("u-block cone characterization failed: " + report.u_block.detail);

  std::vector<Vec> u_basis, z_basis;
  for (int p = 0; p < query.data.dim_v; ++p) u_basis.push_back(query.algebra.unit(query.data.v_index(p)));
  for (int r = 0; r < query.data.dim_z; ++r) {
    u_basis.push_back(query.algebra.unit(query.data.z_index(r)));
    z_basis.push_back(query.algebra.unit(query.data.z_index(r)));
  }
  const Subspace u_span(u_basis, query.algebra.dim());
  const Subspace z_span(z_basis, query.algebra.dim());

  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    std::optional<Derivation> d;
    try {
      d.emplace(query.algebra, candidates[idx]);
    } catch (const NotADerivationError&) {
      report.outcomes.push_back("not-a-derivation");
      continue;
    }
    const auto grading = detect_3grading(*d);
    if (!grading) {
      report.outcomes.push_back("no-3-grading");
      continue;
    }
    bool in_u = true, in_z = true;
    for (int side : {-1, 1})
      for (const auto& v : grading->side(side)) {
        if (!u_span.contains(v)) in_u = false;
        if (!z_span.contains(v)) in_z = false;
      }
    if (!in_u) {
      report.outcomes.push_back("eigenspace-outside-nilradical");
      continue;
    }
    // W_f meets g_{+-1} only inside the z block, so the span condition
    // span(W_f intersect g_{+-1}) = g_{+-1} forces g_{+-1} inside z(g).
    if (!in_z) {
      report.outcomes.push_back("span-condition-fails");
      continue;
    }
    report.outcomes.push_back("survivor");
    report.survivors.push_back(idx);
  }
  return report;
}

}  // namespace admlie
