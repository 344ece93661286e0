#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admlie/lie_algebra.hpp"
#include "admlie/linalg.hpp"
#include "admlie/spindler.hpp"

namespace admlie {

class NotADerivationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotHeisenbergError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// One of the three classification conditions on grading-inducing
/// derivations failed; `condition` is 1, 2 or 3.
class ConditionViolationError : public ValidationError {
 public:
  ConditionViolationError(int condition, const std::string& what)
      : ValidationError("classification condition (" + std::to_string(condition) + "): " + what),
        condition(condition) {}
  int condition;
};

/// A linear map validated against D[x,y] = [Dx,y] + [x,Dy] on all basis pairs.
struct Derivation {
  const LieAlgebra* parent = nullptr;
  Mat matrix;

  Derivation() = default;
  Derivation(const LieAlgebra& g, Mat m) : parent(&g), matrix(std::move(m)) {
    if (matrix.rows() != g.dim() || matrix.cols() != g.dim())
      throw NotADerivationError("derivation matrix has wrong shape");
    for (int i = 0; i < g.dim(); ++i)
      for (int j = i + 1; j < g.dim(); ++j) {
        Vec lhs = matrix.apply(g.basis_bracket(i, j));
        Vec rhs = g.bracket_coords(matrix.col(i), g.unit(j));
        add_scaled(rhs, 1, g.bracket_coords(g.unit(i), matrix.col(j)));
        add_scaled(lhs, -1, rhs);
        if (!is_zero(lhs))
          throw NotADerivationError("Leibniz rule fails on basis pair (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      }
  }
};

/// Basis of der(g) as the exact kernel of the Leibniz constraint system
/// over End(g). Contains ad(g).
inline std::vector<Mat> derivation_algebra(const LieAlgebra& g) {
  const int n = g.dim();
  const int unknowns = n * n;  // row-major D
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vec cij = g.basis_bracket(i, j);
      for (int m = 0; m < n; ++m) {
        Vec row = zero_vec(unknowns);
        for (int k = 0; k < n; ++k)
          if (cij[k] != 0) row[std::size_t(m) * n + k] += cij[k];
        for (int r = 0; r < n; ++r) {
          const Vec crj = g.basis_bracket(r, j);
          if (crj[m] != 0) row[std::size_t(r) * n + i] -= crj[m];
          const Vec cir = g.basis_bracket(i, r);
          if (cir[m] != 0) row[std::size_t(r) * n + j] -= cir[m];
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
    }
  std::vector<Vec> basis_vecs =
      rows.empty() ? kernel(Mat(0, unknowns)) : kernel(Mat::from_rows(rows));
  std::vector<Mat> out;
  for (const auto& v : basis_vecs) out.push_back(Mat::unflatten(v, n, n));
  return out;
}

/// Dimension of ad(g) inside End(g).
inline int inner_derivation_dim(const LieAlgebra& g) {
  std::vector<Vec> flats;
  for (int i = 0; i < g.dim(); ++i) flats.push_back(g.ad_basis(i).flatten());
  if (flats.empty()) return 0;
  return rank(Mat::from_rows(flats));
}

/// D_z beta(v, w) = beta(D_V v, w) + beta(v, D_V w) on all basis pairs.
inline bool is_beta_compatible(const Mat& d_v, const Mat& d_z, const BetaTensor& beta) {
  const int dv = beta.dim_v();
  if (d_v.rows() != dv || d_v.cols() != dv || d_z.rows() != beta.dim_z() || d_z.cols() != beta.dim_z())
    throw InvalidDataError("beta-compatibility: shape mismatch");
  for (int p = 0; p < dv; ++p)
    for (int q = p + 1; q < dv; ++q) {
      Vec lhs = d_z.apply(beta.pair(p, q));
      for (int m = 0; m < dv; ++m) {
        if (d_v.at(m, p) != 0) add_scaled(lhs, -d_v.at(m, p), beta.pair(m, q));
        if (d_v.at(m, q) != 0) add_scaled(lhs, -d_v.at(m, q), beta.pair(p, m));
      }
      if (!is_zero(lhs)) return false;
    }
  return true;
}

struct HeisDerivationBlocks {
  Mat d_v;    // V -> V
  Mat d_vz;   // V -> z
  Mat d_z;    // z -> z
};

/// Block decomposition D(v, z) = (D_V v, D_{V,z} v + D_z z) of a derivation
/// of a generalized Heisenberg algebra (Spindler data with trivial l).
inline HeisDerivationBlocks decompose_heis_derivation(const SpindlerData& data, const Derivation& d) {
  if (data.dim_l() != 0) throw NotHeisenbergError("data has a nontrivial reductive factor");
  const LieAlgebra& g = *d.parent;
  if (g.dim() != data.total_dim()) throw NotHeisenbergError("derivation parent does not match data");
  std::vector<Vec> z_block;
  for (int r = 0; r < data.dim_z; ++r) z_block.push_back(g.unit(data.z_index(r)));
  if (!subspace_equal(center(g), z_block))
    throw NotHeisenbergError("the z block is not the center: beta is degenerate");

  HeisDerivationBlocks blocks{Mat(data.dim_v, data.dim_v), Mat(data.dim_z, data.dim_v),
                              Mat(data.dim_z, data.dim_z)};
  for (int p = 0; p < data.dim_v; ++p) {
    for (int m = 0; m < data.dim_v; ++m) blocks.d_v.at(m, p) = d.matrix.at(data.v_index(m), data.v_index(p));
    for (int r = 0; r < data.dim_z; ++r) blocks.d_vz.at(r, p) = d.matrix.at(data.z_index(r), data.v_index(p));
  }
  for (int r = 0; r < data.dim_z; ++r) {
    for (int s = 0; s < data.dim_z; ++s) blocks.d_z.at(s, r) = d.matrix.at(data.z_index(s), data.z_index(r));
    for (int m = 0; m < data.dim_v; ++m)
      if (d.matrix.at(data.v_index(m), data.z_index(r)) != 0)
        throw NotHeisenbergError("derivation does not preserve the center");
  }

  if (!is_beta_compatible(blocks.d_v, blocks.d_z, data.beta))
    throw NotADerivationError("extracted (D_V, D_z) is not beta-compatible");
  // ad(D_V) must preserve sp(V, beta).
  const auto sp = sp_of_beta(data.dim_v, data.dim_z, data.beta);
  const Mat zero_dz(data.dim_z, data.dim_z);
  for (const auto& b : sp)
    if (!is_beta_compatible(commutator(blocks.d_v, b), zero_dz, data.beta))
      throw NotADerivationError("[D_V, sp(V, beta)] leaves sp(V, beta)");
  return blocks;
}

/// Eigenspace decomposition g = g_{-1} + g_0 + g_1 of a derivation.
struct Grading3 {
  Derivation derivation;
  std::vector<Vec> minus, zero, plus;

  const std::vector<Vec>& side(int s) const {
    if (s == -1) return minus;
    if (s == 0) return zero;
    if (s == 1) return plus;
    throw Error("grading side must be -1, 0 or 1");
  }
};

/// Eigenspaces at {-1, 0, 1}; present iff they sum directly to g. Bracket
/// compatibility [g_i, g_j] in g_{i+j} is re-verified on all basis pairs.
inline std::optional<Grading3> detect_3grading(const Derivation& d) {
  const LieAlgebra& g = *d.parent;
  Grading3 out;
  out.derivation = d;
  out.minus = eigenspace(d.matrix, Rat(-1));
  out.zero = eigenspace(d.matrix, Rat(0));
  out.plus = eigenspace(d.matrix, Rat(1));
  if (!is_direct_sum({out.minus, out.zero, out.plus}, g.dim())) return std::nullopt;

  const std::array<int, 3> sides{-1, 0, 1};
  std::array<Subspace, 3> spans{Subspace(out.minus, g.dim()), Subspace(out.zero, g.dim()),
                                Subspace(out.plus, g.dim())};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const int target = sides[a] + sides[b];
      for (const auto& x : out.side(sides[a]))
        for (const auto& y : out.side(sides[b])) {
          const Vec br = g.bracket_coords(x, y);
          if (target < -1 || target > 1) {
            if (!is_zero(br)) return std::nullopt;
          } else if (!spans[target + 1].contains(br)) {
            return std::nullopt;
          }
        }
    }
  return out;
}

/// Grading-inducing derivation in classified form: an element h of s = [l,l],
/// a commutant part D_V with spectrum in {0, +-1/2}, and the induced action
/// D_z on z.
struct ClassifiedDerivation {
  Vec h;    // l-coordinates, contained in [l, l]
  Mat d_v;  // End_l(V) part
  Mat d_z;  // z -> z
  const SpindlerData* provenance = nullptr;
};

namespace detail {

struct SemisimplePart {
  std::vector<Vec> basis;  // s = [l, l] in l-coordinates
  Subspace span;
};

inline SemisimplePart semisimple_part(const LieAlgebra& l) {
  SemisimplePart s;
  s.basis = derived_subalgebra(l);
  s.span = Subspace(s.basis, l.dim());
  return s;
}

/// Matrix of ad(h) restricted to s, in the s basis.
inline Mat ad_on_subalgebra(const LieAlgebra& l, const Vec& h, const SemisimplePart& s) {
  Mat m(int(s.basis.size()), int(s.basis.size()));
  for (std::size_t j = 0; j < s.basis.size(); ++j) {
    const Vec br = l.bracket_coords(h, s.basis[j]);
    const auto coords = s.span.coordinates(br);
    if (!coords) throw ConditionViolationError(2, "[h, s] leaves s = [l, l]");
    for (std::size_t i = 0; i < coords->size(); ++i) m.at(int(i), int(j)) = (*coords)[i];
  }
  return m;
}

}  // namespace detail

/// Validates the classification conditions for (h, D_V, D_z) against the
/// given Spindler data. Throws ConditionViolationError with the number of
/// the first failing condition.
inline void validate_classified(const SpindlerData& data, const ClassifiedDerivation& cd) {
  const LieAlgebra& l = data.l;
  if (int(cd.h.size()) != l.dim()) throw InvalidDataError("h has wrong length");
  if (cd.d_v.rows() != data.dim_v || cd.d_v.cols() != data.dim_v)
    throw InvalidDataError("D_V has wrong shape");
  if (cd.d_z.rows() != data.dim_z || cd.d_z.cols() != data.dim_z)
    throw InvalidDataError("D_z has wrong shape");

  // Condition (2): h lies in s = [l, l] and ad(h) induces a 3-grading on s.
  const auto s = detail::semisimple_part(l);
  if (!s.span.contains(cd.h)) throw ConditionViolationError(2, "h is not contained in [l, l]");
  const Mat ad_h = detail::ad_on_subalgebra(l, cd.h, s);
  const auto sm = eigenspace(ad_h, Rat(-1));
  const auto s0 = eigenspace(ad_h, Rat(0));
  const auto sp = eigenspace(ad_h, Rat(1));
  if (!is_direct_sum({sm, s0, sp}, int(s.basis.size())))
    throw ConditionViolationError(2, "ad(h) does not induce a 3-grading on [l, l]");

  // Condition (1): the assembled derivation kills z(l). With h in [l, l]
  // this is automatic; it is re-checked here so that classified data built
  // from raw matrices cannot sneak around it.
  for (const auto& zl : center(l))
    if (!is_zero(l.bracket_coords(cd.h, zl)))
      throw ConditionViolationError(1, "[h, z(l)] is nonzero");

  // Condition (3): D_V is an l-module endomorphism, diagonalizable with
  // spectrum in {0, +-1/2}, with the kernel and odd part pinned to rho(h).
  for (int a = 0; a < data.dim_l(); ++a)
    if (!commutator(cd.d_v, data.rho[a]).is_zero())
      throw ConditionViolationError(3, "D_V does not commute with the l-action");
  const auto v_zero = eigenspace(cd.d_v, Rat(0));
  const auto v_minus = eigenspace(cd.d_v, Rat(-1, 2));
  const auto v_plus = eigenspace(cd.d_v, Rat(1, 2));
  if (!is_direct_sum({v_zero, v_minus, v_plus}, data.dim_v))
    throw ConditionViolationError(3, "D_V is not diagonalizable with spectrum in {0, -1/2, 1/2}");
  const Mat rho_h = data.rho_of(cd.h);
  if (!subspace_equal(v_zero, kernel(rho_h)))
    throw ConditionViolationError(3, "ker(D_V) differs from ker(rho(h))");
  std::vector<Vec> odd_dv = v_minus;
  odd_dv.insert(odd_dv.end(), v_plus.begin(), v_plus.end());
  std::vector<Vec> odd_h = eigenspace(rho_h, Rat(-1, 2));
  {
    const auto hp = eigenspace(rho_h, Rat(1, 2));
    odd_h.insert(odd_h.end(), hp.begin(), hp.end());
  }
  if (!subspace_equal(odd_dv, odd_h))
    throw ConditionViolationError(
        3, "the (+-1/2)-eigenspaces of D_V and rho(h) span different subspaces");

  // The pair (D_V, D_z) must be beta-compatible for the assembled map to be
  // a derivation at all.
  if (!is_beta_compatible(cd.d_v, cd.d_z, data.beta))
    throw NotADerivationError("(D_V, D_z) is not beta-compatible");
}

/// Assembled matrix D(v, z, x) = (D_V v + rho(h) v, D_z z, [h, x]).
inline Mat assemble_classified(const SpindlerData& data, const ClassifiedDerivation& cd) {
  const int n = data.total_dim();
  Mat m(n, n);
  const Mat v_block = cd.d_v + data.rho_of(cd.h);
  for (int i = 0; i < data.dim_v; ++i)
    for (int j = 0; j < data.dim_v; ++j) m.at(data.v_index(i), data.v_index(j)) = v_block.at(i, j);
  for (int i = 0; i < data.dim_z; ++i)
    for (int j = 0; j < data.dim_z; ++j) m.at(data.z_index(i), data.z_index(j)) = cd.d_z.at(i, j);
  for (int j = 0; j < data.dim_l(); ++j) {
    const Vec br = data.l.bracket_coords(cd.h, data.l.unit(j));
    for (int i = 0; i < data.dim_l(); ++i) m.at(data.l_index(i), data.l_index(j)) = br[i];
  }
  return m;
}

struct BuiltClassified {
  ClassifiedDerivation classified;
  Derivation derivation;
  Grading3 grading;
};

/// Validates (h, D_V, D_z), assembles the derivation on build(data), and
/// re-verifies both the Leibniz rule and the induced 3-grading.
inline BuiltClassified build_classified(const SpindlerData& data, const LieAlgebra& g, const Vec& h,
                                        const Mat& d_v, const Mat& d_z) {
  ClassifiedDerivation cd{h, d_v, d_z, &data};
  validate_classified(data, cd);
  if (g.dim() != data.total_dim()) throw InvalidDataError("algebra does not match Spindler data");
  Derivation d(g, assemble_classified(data, cd));  // Leibniz re-verified by the constructor
  auto grading = detect_3grading(d);
  if (!grading)
    throw ValidationError(
        "assembled derivation does not induce a 3-grading; D_z acts outside {-1, 0, 1} on a "
        "complement of beta(V, V)");
  return BuiltClassified{std::move(cd), std::move(d), std::move(*grading)};
}

struct ClassifyOutcome {
  std::optional<ClassifiedDerivation> classified;
  std::string diagnostic;  // set when classification fails
};

/// Reverse direction: extract (h, D_V, D_z) from a block-preserving
/// derivation. Absence of a 3-grading surfaces as a condition violation of
/// the extracted triple; the outcome then carries the diagnostic.
inline ClassifyOutcome classify_from_derivation(const SpindlerData& data, const Derivation& d) {
  ClassifyOutcome out;
  const Mat& m = d.matrix;
  if (m.rows() != data.total_dim()) {
    out.diagnostic = "derivation does not act on build(data)";
    return out;
  }
  auto block_of = [&](int idx) {
    if (idx < data.dim_v) return 0;
    if (idx < data.dim_v + data.dim_z) return 1;
    return 2;
  };
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (block_of(i) != block_of(j) && m.at(i, j) != 0) {
        out.diagnostic = "presentation not adapted: derivation does not preserve the V/z/l blocks";
        return out;
      }

  Mat d_l(data.dim_l(), data.dim_l());
  for (int i = 0; i < data.dim_l(); ++i)
    for (int j = 0; j < data.dim_l(); ++j) d_l.at(i, j) = m.at(data.l_index(i), data.l_index(j));

  // Condition (1): D must kill z(l).
  for (const auto& zl : center(data.l))
    if (!is_zero(d_l.apply(zl))) {
      out.diagnostic = "classification condition (1): D does not annihilate z(l)";
      return out;
    }

  // Solve ad(h) = D|_l for h in s = [l, l].
  const auto s = detail::semisimple_part(data.l);
  std::vector<Vec> cols;
  for (const auto& sk : s.basis) cols.push_back(data.l.ad_matrix(sk).flatten());
  Vec h = zero_vec(data.dim_l());
  if (!s.basis.empty()) {
    const auto coeff = solve(Mat::from_cols(cols), d_l.flatten());
    if (!coeff) {
      out.diagnostic = "classification condition (2): D restricted to l is not ad(h) for h in [l, l]";
      return out;
    }
    for (std::size_t k = 0; k < s.basis.size(); ++k) add_scaled(h, (*coeff)[k], s.basis[k]);
  } else if (!d_l.is_zero()) {
    out.diagnostic = "classification condition (2): D restricted to l is not ad(h) for h in [l, l]";
    return out;
  }

  Mat d_v(data.dim_v, data.dim_v);
  const Mat rho_h = data.rho_of(h);
  for (int i = 0; i < data.dim_v; ++i)
    for (int j = 0; j < data.dim_v; ++j)
      d_v.at(i, j) = m.at(data.v_index(i), data.v_index(j)) - rho_h.at(i, j);
  Mat d_z(data.dim_z, data.dim_z);
  for (int i = 0; i < data.dim_z; ++i)
    for (int j = 0; j < data.dim_z; ++j) d_z.at(i, j) = m.at(data.z_index(i), data.z_index(j));

  ClassifiedDerivation cd{std::move(h), std::move(d_v), std::move(d_z), &data};
  try {
    validate_classified(data, cd);
  } catch (const ValidationError& e) {
    out.diagnostic = e.what();
    return out;
  }
  if (!(assemble_classified(data, cd) == m)) {
    out.diagnostic = "extracted triple does not reassemble to the input derivation";
    return out;
  }
  out.classified = std::move(cd);
  return out;
}

/// Exact subspace identity for classified derivations:
/// z = [V_{1/2}, V_{1/2}] + [V_{-1/2}, V_{-1/2}] + ([V_0, V_0] + [V_{-1/2}, V_{1/2}])
/// with the three summands independent.
inline bool classified_z_decomposition_holds(const SpindlerData& data,
                                             const ClassifiedDerivation& cd) {
  auto beta_span = [&](const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::vector<Vec> vals;
    for (const auto& x : a)
      for (const auto& y : b) {
        Vec v = data.beta.eval(x, y);
        if (!is_zero(v)) vals.push_back(std::move(v));
      }
    return span_basis(vals);
  };
  const auto v_plus = eigenspace(cd.d_v, Rat(1, 2));
  const auto v_minus = eigenspace(cd.d_v, Rat(-1, 2));
  const auto v_zero = eigenspace(cd.d_v, Rat(0));
  const auto b1 = beta_span(v_plus, v_plus);
  const auto b2 = beta_span(v_minus, v_minus);
  std::vector<Vec> third = beta_span(v_zero, v_zero);
  {
    const auto mixed = beta_span(v_minus, v_plus);
    third.insert(third.end(), mixed.begin(), mixed.end());
  }
  const auto b3 = span_basis(third);
  return is_direct_sum({b1, b2, b3}, data.dim_z);
}

/// All linear combinations of the given matrices with coefficients drawn
/// from `coeffs`, in lexicographic coefficient order.
inline std::vector<Mat> linear_combinations(const std::vector<Mat>& basis,
                                            const std::vector<Rat>& coeffs) {
  std::vector<Mat> out;
  if (basis.empty()) return out;
  const int n = basis[0].rows();
  std::vector<std::size_t> idx(basis.size(), 0);
  while (true) {
    Mat m(n, basis[0].cols());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (coeffs[idx[k]] != 0) m = m + coeffs[idx[k]] * basis[k];
    out.push_back(std::move(m));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == coeffs.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return out;
}

}  // namespace admlie
