#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admlie/lie_algebra.hpp"
#include "admlie/linalg.hpp"

namespace admlie {

class InvalidDataError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class OmegaSingularError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotAbelianError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Skew bilinear map beta : V x V -> z, stored for p < q only.
class BetaTensor {
 public:
  BetaTensor() : dim_v_(0), dim_z_(0) {}
  BetaTensor(int dim_v, int dim_z) : dim_v_(dim_v), dim_z_(dim_z) {}

  int dim_v() const { return dim_v_; }
  int dim_z() const { return dim_z_; }

  void set(int p, int q, Vec value) {
    if (p < 0 || q < 0 || p >= dim_v_ || q >= dim_v_) throw InvalidDataError("beta index out of range");
    if (p >= q) throw InvalidDataError("beta entries are keyed by (p, q) with p < q");
    if (int(value.size()) != dim_z_) throw InvalidDataError("beta value has wrong length");
    if (is_zero(value))
      entries_.erase({p, q});
    else
      entries_[{p, q}] = std::move(value);
  }

  /// beta(f_p, f_q) for arbitrary p, q.
  Vec pair(int p, int q) const {
    if (p == q) return zero_vec(dim_z_);
    const bool flip = p > q;
    auto it = entries_.find(flip ? std::make_pair(q, p) : std::make_pair(p, q));
    if (it == entries_.end()) return zero_vec(dim_z_);
    return flip ? scaled(it->second, Rat(-1)) : it->second;
  }

  Vec eval(const Vec& v, const Vec& w) const {
    Vec out = zero_vec(dim_z_);
    for (const auto& [pq, val] : entries_) {
      const auto [p, q] = pq;
      const Rat f = v[p] * w[q] - v[q] * w[p];
      if (f != 0) add_scaled(out, f, val);
    }
    return out;
  }

  /// Gram matrix of the scalar form (g o beta) for a functional g on z.
  Mat gram(const Vec& g) const {
    if (int(g.size()) != dim_z_) throw InvalidDataError("functional has wrong length");
    Mat m(dim_v_, dim_v_);
    for (const auto& [pq, val] : entries_) {
      const auto [p, q] = pq;
      const Rat s = dot(g, val);
      m.at(p, q) = s;
      m.at(q, p) = -s;
    }
    return m;
  }

  const std::map<std::pair<int, int>, Vec>& entries() const { return entries_; }

  /// Canonical basis of span beta(V, V) inside z.
  std::vector<Vec> value_span() const {
    std::vector<Vec> vals;
    for (const auto& [pq, val] : entries_) vals.push_back(val);
    return span_basis(vals);
  }

 private:
  int dim_v_, dim_z_;
  std::map<std::pair<int, int>, Vec> entries_;
};

/// Input of the semidirect construction g(l, V, z, beta): a reductive factor
/// l, its action on V, and an l-invariant skew map beta with values in z.
/// The composite basis of the built algebra is ordered V-block, z-block,
/// l-block, matching the tuple order (v, z, x).
struct SpindlerData {
  LieAlgebra l;
  std::vector<Mat> rho;  // one dimV x dimV matrix per basis element of l
  int dim_v = 0;
  int dim_z = 0;
  BetaTensor beta;

  int dim_l() const { return l.dim(); }
  int total_dim() const { return dim_v + dim_z + dim_l(); }
  int v_index(int p) const { return p; }
  int z_index(int r) const { return dim_v + r; }
  int l_index(int a) const { return dim_v + dim_z + a; }

  /// Action matrix of an l-element given in l-coordinates.
  Mat rho_of(const Vec& x) const {
    Mat m(dim_v, dim_v);
    for (int a = 0; a < dim_l(); ++a)
      if (x[a] != 0) m = m + x[a] * rho[a];
    return m;
  }

  Vec v_part(const Vec& composite) const { return Vec(composite.begin(), composite.begin() + dim_v); }
  Vec z_part(const Vec& composite) const {
    return Vec(composite.begin() + dim_v, composite.begin() + dim_v + dim_z);
  }
  Vec l_part(const Vec& composite) const {
    return Vec(composite.begin() + dim_v + dim_z, composite.end());
  }
  Vec compose(const Vec& v, const Vec& z, const Vec& x) const {
    Vec out;
    out.reserve(total_dim());
    out.insert(out.end(), v.begin(), v.end());
    out.insert(out.end(), z.begin(), z.end());
    out.insert(out.end(), x.begin(), x.end());
    return out;
  }

  void validate() const {
    if (int(rho.size()) != dim_l()) throw InvalidDataError("rho must hold one matrix per basis element of l");
    for (const auto& m : rho)
      if (m.rows() != dim_v || m.cols() != dim_v) throw InvalidDataError("rho matrix has wrong shape");
    if (beta.dim_v() != dim_v || beta.dim_z() != dim_z) throw InvalidDataError("beta shape mismatch");
    // rho is a homomorphism: rho([x, y]) = [rho x, rho y] on basis pairs.
    for (int a = 0; a < dim_l(); ++a)
      for (int b = a + 1; b < dim_l(); ++b) {
        const Mat lhs = rho_of(l.basis_bracket(a, b));
        if (!(lhs == commutator(rho[a], rho[b])))
          throw InvalidDataError("rho is not a homomorphism on l basis pair (" + std::to_string(a) +
                                 ", " + std::to_string(b) + ")");
      }
    // l-invariance of beta: beta(x.v, w) + beta(v, x.w) = 0.
    for (int a = 0; a < dim_l(); ++a)
      for (int p = 0; p < dim_v; ++p)
        for (int q = p + 1; q < dim_v; ++q) {
          Vec s = zero_vec(dim_z);
          for (int m = 0; m < dim_v; ++m) {
            if (rho[a].at(m, p) != 0) add_scaled(s, rho[a].at(m, p), beta.pair(m, q));
            if (rho[a].at(m, q) != 0) add_scaled(s, rho[a].at(m, q), beta.pair(p, m));
          }
          if (!is_zero(s))
            throw InvalidDataError("beta is not l-invariant at l basis " + std::to_string(a) +
                                   ", V pair (" + std::to_string(p) + ", " + std::to_string(q) + ")");
        }
  }
};

/// Linear functional f on z together with the Gram matrix of f o beta.
struct SymplecticForm {
  Vec f;
  Mat omega;
};

inline SymplecticForm make_symplectic_form(const BetaTensor& beta, const Vec& f) {
  SymplecticForm s{f, beta.gram(f)};
  if (!s.omega.is_antisymmetric()) throw InvalidDataError("omega is not antisymmetric");
  return s;
}

struct BuildResult {
  LieAlgebra algebra;
  std::vector<std::string> warnings;
};

inline bool check_effective_torus_impl(const SpindlerData& data, const std::vector<Vec>& torus);

/// The semidirect-product algebra on V x z x l with bracket
/// [(v,z,x),(v',z',x')] = (x.v' - x'.v, beta(v,v'), [x,x']). The result is
/// re-validated against the Jacobi identity in full.
inline BuildResult build_report(const SpindlerData& data,
                                const std::vector<Vec>* certified_torus = nullptr,
                                Validation validation = Validation::Full) {
  data.validate();
  const int n = data.total_dim();
  std::map<std::pair<int, int>, Vec> table;
  auto set_entry = [&](int i, int j, Vec v) {
    if (is_zero(v)) return;
    if (i < j)
      table[{i, j}] = std::move(v);
    else
      table[{j, i}] = scaled(v, Rat(-1));
  };
  for (int p = 0; p < data.dim_v; ++p)
    for (int q = p + 1; q < data.dim_v; ++q) {
      const Vec bz = data.beta.pair(p, q);
      set_entry(data.v_index(p), data.v_index(q),
                data.compose(zero_vec(data.dim_v), bz, zero_vec(data.dim_l())));
    }
  for (int a = 0; a < data.dim_l(); ++a)
    for (int p = 0; p < data.dim_v; ++p) {
      Vec av = data.rho[a].col(p);
      set_entry(data.l_index(a), data.v_index(p),
                data.compose(av, zero_vec(data.dim_z), zero_vec(data.dim_l())));
    }
  for (int a = 0; a < data.dim_l(); ++a)
    for (int b = a + 1; b < data.dim_l(); ++b) {
      set_entry(data.l_index(a), data.l_index(b),
                data.compose(zero_vec(data.dim_v), zero_vec(data.dim_z), data.l.basis_bracket(a, b)));
    }

  std::vector<std::string> labels;
  for (int p = 0; p < data.dim_v; ++p) labels.push_back("v" + std::to_string(p));
  for (int r = 0; r < data.dim_z; ++r) labels.push_back("z" + std::to_string(r));
  for (int a = 0; a < data.dim_l(); ++a) labels.push_back("l:" + data.l.labels()[a]);

  BuildResult out;
  out.algebra = LieAlgebra::create(n, std::move(table), std::move(labels), validation);

  if (int(data.beta.value_span().size()) < data.dim_z)
    out.warnings.push_back(
        "beta(V, V) does not span z: the center is larger than the derived part and "
        "grading results about such summands are vacuous");

  if (certified_torus != nullptr && check_effective_torus_impl(data, *certified_torus)) {
    std::vector<Vec> u;
    for (int p = 0; p < data.dim_v; ++p) u.push_back(out.algebra.unit(data.v_index(p)));
    for (int r = 0; r < data.dim_z; ++r) u.push_back(out.algebra.unit(data.z_index(r)));
    out.algebra.set_metadata("nilradical", u);
  }
  return out;
}

inline LieAlgebra build(const SpindlerData& data, const std::vector<Vec>* certified_torus = nullptr,
                        Validation validation = Validation::Full) {
  return build_report(data, certified_torus, validation).algebra;
}

/// True iff the joint kernel of the torus action on V is trivial. The torus
/// must span an abelian subalgebra of l.
inline bool check_effective_torus(const SpindlerData& data, const std::vector<Vec>& torus) {
  for (const auto& t : torus)
    if (int(t.size()) != data.dim_l()) throw InvalidDataError("torus vector has wrong length");
  for (std::size_t i = 0; i < torus.size(); ++i)
    for (std::size_t j = i + 1; j < torus.size(); ++j)
      if (!is_zero(data.l.bracket_coords(torus[i], torus[j])))
        throw NotAbelianError("torus basis is not abelian");
  return check_effective_torus_impl(data, torus);
}

inline bool check_effective_torus_impl(const SpindlerData& data, const std::vector<Vec>& torus) {
  if (data.dim_v == 0) return true;
  if (torus.empty()) return false;
  Mat stacked(int(torus.size()) * data.dim_v, data.dim_v);
  for (std::size_t t = 0; t < torus.size(); ++t) {
    const Mat m = data.rho_of(torus[t]);
    for (int i = 0; i < data.dim_v; ++i)
      for (int j = 0; j < data.dim_v; ++j) stacked.at(int(t) * data.dim_v + i, j) = m.at(i, j);
  }
  return kernel(stacked).empty();
}

/// Basis of sp(V, beta) = {x in End(V) : beta(xv, w) + beta(v, xw) = 0},
/// solved as one exact kernel over End(V). Closure under the commutator is
/// re-verified entry by entry.
inline std::vector<Mat> sp_of_beta(int dim_v, int dim_z, const BetaTensor& beta) {
  if (beta.dim_v() != dim_v || beta.dim_z() != dim_z) throw InvalidDataError("beta shape mismatch");
  const int unknowns = dim_v * dim_v;  // row-major X
  std::vector<Vec> rows;
  for (int p = 0; p < dim_v; ++p)
    for (int q = p + 1; q < dim_v; ++q)
      for (int r = 0; r < dim_z; ++r) {
        Vec row = zero_vec(unknowns);
        bool nonzero = false;
        for (int m = 0; m < dim_v; ++m) {
          const Vec bmq = beta.pair(m, q);
          if (bmq[r] != 0) {
            row[std::size_t(m) * dim_v + p] += bmq[r];
            nonzero = true;
          }
          const Vec bpm = beta.pair(p, m);
          if (bpm[r] != 0) {
            row[std::size_t(m) * dim_v + q] += bpm[r];
            nonzero = true;
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
  std::vector<Vec> basis_vecs =
      rows.empty() ? kernel(Mat(0, unknowns)) : kernel(Mat::from_rows(rows));
  std::vector<Mat> basis;
  for (const auto& v : basis_vecs) basis.push_back(Mat::unflatten(v, dim_v, dim_v));

  auto satisfies = [&](const Mat& x) {
    for (int p = 0; p < dim_v; ++p)
      for (int q = p + 1; q < dim_v; ++q) {
        Vec s = zero_vec(dim_z);
        for (int m = 0; m < dim_v; ++m) {
          if (x.at(m, p) != 0) add_scaled(s, x.at(m, p), beta.pair(m, q));
          if (x.at(m, q) != 0) add_scaled(s, x.at(m, q), beta.pair(p, m));
        }
        if (!is_zero(s)) return false;
      }
    return true;
  };
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!satisfies(commutator(basis[i], basis[j])))
        throw Error("sp(V, beta) is not closed under the commutator");
  return basis;
}

/// The endomorphism X# with Omega(Xv, w) = Omega(v, X# w); an involutive
/// anti-automorphism of End(V) for invertible antisymmetric Omega.
inline Mat sharp(const Mat& x, const Mat& omega) {
  if (!omega.is_antisymmetric()) throw InvalidDataError("sharp: omega is not antisymmetric");
  auto inv = try_inverse(omega);
  if (!inv) throw OmegaSingularError("sharp: omega is singular");
  return (*inv) * x.transpose() * omega;
}

/// Basis of the commutant {A : [A, rho(x)] = 0 for all x}. When a form is
/// supplied, sharp-closure of the result is verified.
inline std::vector<Mat> commutant(const std::vector<Mat>& rho, int dim_v,
                                  const SymplecticForm* form = nullptr) {
  const int unknowns = dim_v * dim_v;
  std::vector<Vec> rows;
  for (const auto& r : rho) {
    if (r.rows() != dim_v || r.cols() != dim_v) throw InvalidDataError("commutant: matrix shape mismatch");
    for (int i = 0; i < dim_v; ++i)
      for (int j = 0; j < dim_v; ++j) {
        Vec row = zero_vec(unknowns);
        // ([A, r])_{ij} = sum_k A_{ik} r_{kj} - r_{ik} A_{kj}
        for (int k = 0; k < dim_v; ++k) {
          row[std::size_t(i) * dim_v + k] += r.at(k, j);
          row[std::size_t(k) * dim_v + j] -= r.at(i, k);
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  }
  std::vector<Vec> basis_vecs =
      rows.empty() ? kernel(Mat(0, unknowns)) : kernel(Mat::from_rows(rows));
  std::vector<Mat> basis;
  for (const auto& v : basis_vecs) basis.push_back(Mat::unflatten(v, dim_v, dim_v));
  if (form != nullptr && dim_v > 0) {
    std::vector<Vec> flat;
    for (const auto& m : basis) flat.push_back(m.flatten());
    const Subspace span(flat, unknowns);
    for (const auto& m : basis)
      if (!span.contains(sharp(m, form->omega).flatten()))
        throw Error("commutant is not closed under the sharp anti-automorphism");
  }
  return basis;
}

/// The unique Psi_g with (g o beta)(v, w) = Omega(Psi_g v, w). Symmetry with
/// respect to the form and commutation with sp(V, beta) are re-verified.
inline Mat psi_g(const Vec& g, const Vec& f, const BetaTensor& beta,
                 const std::vector<Mat>* sp_basis = nullptr) {
  const Mat omega = beta.gram(f);
  auto inv = try_inverse(omega);
  if (!inv) throw OmegaSingularError("psi_g: f o beta is singular");
  const Mat psi = (*inv) * beta.gram(g);
  if (!(sharp(psi, omega) == psi)) throw Error("psi_g is not symmetric with respect to omega");
  if (sp_basis != nullptr)
    for (const auto& b : *sp_basis)
      if (!commutator(psi, b).is_zero()) throw Error("psi_g does not commute with sp(V, beta)");
  return psi;
}

/// True iff the Hamiltonian H_x(v) = Omega(x.v, v) of the witness is a
/// positive-definite quadratic form, certifying convex type.
inline bool check_convex_type(const SpindlerData& data, const SymplecticForm& form,
                              const Vec& witness_x) {
  if (int(witness_x.size()) != data.dim_l()) throw InvalidDataError("convex-type witness has wrong length");
  const Mat a = data.rho_of(witness_x).transpose() * form.omega;
  Mat s(data.dim_v, data.dim_v);
  for (int p = 0; p < data.dim_v; ++p)
    for (int q = 0; q < data.dim_v; ++q) s.at(p, q) = (a.at(p, q) + a.at(q, p)) / 2;
  return psd_status(s) == PsdStatus::PositiveDefinite;
}

/// Same certificate for a candidate given directly as an endomorphism of V.
inline bool hamiltonian_positive_definite(const Mat& omega, const Mat& x) {
  const Mat a = x.transpose() * omega;
  Mat s(omega.rows(), omega.cols());
  for (int p = 0; p < omega.rows(); ++p)
    for (int q = 0; q < omega.cols(); ++q) s.at(p, q) = (a.at(p, q) + a.at(q, p)) / 2;
  return psd_status(s) == PsdStatus::PositiveDefinite;
}

/// Lie algebra spanned by explicit matrices; structure constants are solved
/// exactly and the span is required to be closed under the commutator.
inline LieAlgebra from_matrix_basis(const std::vector<Mat>& basis,
                                    std::vector<std::string> labels = {},
                                    Validation validation = Validation::Full) {
  const int m = int(basis.size());
  if (m == 0) return LieAlgebra::create(0, {}, {}, validation);
  const int d = basis[0].rows();
  std::vector<Vec> cols;
  for (const auto& b : basis) {
    if (b.rows() != d || b.cols() != basis[0].cols()) throw InvalidDataError("matrix basis shape mismatch");
    cols.push_back(b.flatten());
  }
  const Mat flat = Mat::from_cols(cols);
  if (rank(flat) != m) throw InvalidDataError("matrix basis is linearly dependent");
  std::vector<Vec> rhss;
  std::vector<std::pair<int, int>> keys;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      rhss.push_back(commutator(basis[i], basis[j]).flatten());
      keys.push_back({i, j});
    }
  const auto coords = solve_many(flat, rhss);
  std::map<std::pair<int, int>, Vec> table;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!coords[k]) throw InvalidDataError("matrix span is not closed under the commutator");
    if (!is_zero(*coords[k])) table[keys[k]] = *coords[k];
  }
  return LieAlgebra::create(m, std::move(table), std::move(labels), validation);
}

/// Closed form of the center of a build: {0} x z x z_{z(l)}(V), where the
/// last factor collects the central elements of l acting trivially on V.
inline std::vector<Vec> center_formula(const SpindlerData& data) {
  std::vector<Vec> out;
  for (int r = 0; r < data.dim_z; ++r) {
    Vec v = zero_vec(data.total_dim());
    v[data.z_index(r)] = 1;
    out.push_back(std::move(v));
  }
  const auto zl = center(data.l);
  if (!zl.empty() && data.dim_v > 0) {
    Mat stacked(data.dim_v * data.dim_v, int(zl.size()));
    for (std::size_t k = 0; k < zl.size(); ++k) {
      const Vec flat = data.rho_of(zl[k]).flatten();
      for (int i = 0; i < data.dim_v * data.dim_v; ++i) stacked.at(i, int(k)) = flat[i];
    }
    for (const auto& coeff : kernel(stacked)) {
      Vec x = zero_vec(data.dim_l());
      for (std::size_t k = 0; k < zl.size(); ++k) add_scaled(x, coeff[k], zl[k]);
      out.push_back(data.compose(zero_vec(data.dim_v), zero_vec(data.dim_z), x));
    }
  } else if (data.dim_v == 0) {
    for (const auto& x : zl)
      out.push_back(data.compose(zero_vec(data.dim_v), zero_vec(data.dim_z), x));
  }
  return span_basis(out);
}

/// Closed form of [g, g]: span(l.V) x span beta(V, V) x [l, l]. For builds
/// where V is spanned by the l-action (the convex-type situation) the first
/// factor is all of V.
inline std::vector<Vec> derived_formula(const SpindlerData& data) {
  std::vector<Vec> out;
  for (int a = 0; a < data.dim_l(); ++a)
    for (int p = 0; p < data.dim_v; ++p) {
      Vec av = data.rho[a].col(p);
      if (!is_zero(av)) out.push_back(data.compose(av, zero_vec(data.dim_z), zero_vec(data.dim_l())));
    }
  for (const auto& b : data.beta.value_span())
    out.push_back(data.compose(zero_vec(data.dim_v), b, zero_vec(data.dim_l())));
  for (const auto& s : derived_subalgebra(data.l))
    out.push_back(data.compose(zero_vec(data.dim_v), zero_vec(data.dim_z), s));
  return span_basis(out);
}

/// SpindlerData of the Jacobi-type algebra g(sp(V, beta), V, z, beta).
inline SpindlerData generalized_jacobi_data(int dim_v, int dim_z, const BetaTensor& beta) {
  SpindlerData data;
  data.dim_v = dim_v;
  data.dim_z = dim_z;
  data.beta = beta;
  data.rho = sp_of_beta(dim_v, dim_z, beta);
  data.l = from_matrix_basis(data.rho);
  return data;
}

inline LieAlgebra build_generalized_jacobi(int dim_v, int dim_z, const BetaTensor& beta) {
  return build(generalized_jacobi_data(dim_v, dim_z, beta));
}

/// hsp(V, Omega) = g(sp(V, Omega), V, R, Omega) for an invertible
/// antisymmetric Omega.
inline LieAlgebra build_jacobi(int dim_v, const Mat& omega) {
  if (!omega.is_antisymmetric()) throw InvalidDataError("jacobi: omega is not antisymmetric");
  if (!try_inverse(omega)) throw OmegaSingularError("jacobi: omega is singular");
  BetaTensor beta(dim_v, 1);
  for (int p = 0; p < dim_v; ++p)
    for (int q = p + 1; q < dim_v; ++q) beta.set(p, q, Vec{omega.at(p, q)});
  return build_generalized_jacobi(dim_v, 1, beta);
}

}  // namespace admlie
