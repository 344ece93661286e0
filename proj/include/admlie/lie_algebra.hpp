#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admlie/linalg.hpp"
#include "admlie/matrix.hpp"
#include "admlie/rational.hpp"

namespace admlie {

class ParentMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class Validation { Full, DeferJacobi };

/// Finite-dimensional Lie algebra over the rationals, given by structure
/// constants. Brackets of basis pairs are stored for i < j only; the (j, i)
/// values are implied by antisymmetry. The Jacobi identity is validated
/// exhaustively on construction unless explicitly deferred (oracle paths).
class LieAlgebra {
 public:
  LieAlgebra() : dim_(0) {}

  /// `table` maps (i, j) with i < j to the coordinates of [e_i, e_j].
  static LieAlgebra create(int dim, std::map<std::pair<int, int>, Vec> table,
                           std::vector<std::string> labels = {},
                           Validation validation = Validation::Full) {
    LieAlgebra g;
    g.dim_ = dim;
    if (labels.empty())
      for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
    if (int(labels.size()) != dim) throw ValidationError("label count does not match dimension");
    g.labels_ = std::move(labels);
    g.table_.assign(std::size_t(dim) * dim, {});
    for (auto& [ij, coords] : table) {
      const auto [i, j] = ij;
      if (i < 0 || j < 0 || i >= dim || j >= dim)
        throw ValidationError("structure constant index out of range");
      if (i >= j)
        throw ValidationError("structure table must be keyed by (i, j) with i < j");
      if (int(coords.size()) != dim)
        throw ValidationError("structure constant vector has wrong length");
      g.table_[std::size_t(i) * dim + j] = std::move(coords);
    }
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (!g.table_[std::size_t(i) * dim + j].empty()) g.pairs_.push_back({i, j});
    if (validation == Validation::Full) g.validate_jacobi();
    return g;
  }

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Coordinates of [e_i, e_j] for arbitrary i, j.
  Vec basis_bracket(int i, int j) const {
    if (i == j) return zero_vec(dim_);
    if (i < j) {
      const Vec& v = table_[std::size_t(i) * dim_ + j];
      return v.empty() ? zero_vec(dim_) : v;
    }
    const Vec& v = table_[std::size_t(j) * dim_ + i];
    if (v.empty()) return zero_vec(dim_);
    return scaled(v, Rat(-1));
  }

  Vec bracket_coords(const Vec& x, const Vec& y) const {
    Vec out = zero_vec(dim_);
    for (const auto& [i, j] : pairs_) {
      const Rat f = x[i] * y[j] - x[j] * y[i];
      if (f != 0) add_scaled(out, f, table_[std::size_t(i) * dim_ + j]);
    }
    return out;
  }

  /// acc += coeff * [e_i, e_j] without building the bracket vector.
  void add_basis_bracket(Vec& acc, const Rat& coeff, int i, int j) const {
    if (i == j || coeff == 0) return;
    const bool flip = i > j;
    const Vec& c = flip ? table_[std::size_t(j) * dim_ + i] : table_[std::size_t(i) * dim_ + j];
    if (c.empty()) return;
    add_scaled(acc, flip ? -coeff : coeff, c);
  }

  /// Matrix of ad(x): column j holds [x, e_j].
  Mat ad_matrix(const Vec& x) const {
    Mat m(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
      Vec e = zero_vec(dim_);
      e[j] = 1;
      const Vec col = bracket_coords(x, e);
      for (int i = 0; i < dim_; ++i) m.at(i, j) = col[i];
    }
    return m;
  }

  Mat ad_basis(int i) const {
    Vec e = zero_vec(dim_);
    e[i] = 1;
    return ad_matrix(e);
  }

  /// Full Jacobi validation over all basis triples, also available for
  /// deferred builds.
  void validate_jacobi() const {
    const Vec* empty = nullptr;
    auto entry = [&](int i, int j) -> const Vec* {  // i < j
      const Vec& c = table_[std::size_t(i) * dim_ + j];
      return c.empty() ? empty : &c;
    };
    Vec s(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        const Vec* cij = entry(i, j);
        for (int k = j + 1; k < dim_; ++k) {
          const Vec* cjk = entry(j, k);
          const Vec* cik = entry(i, k);
          if (!cij && !cjk && !cik) continue;
          std::fill(s.begin(), s.end(), Rat(0));
          if (cij)
            for (int a = 0; a < dim_; ++a) add_basis_bracket(s, (*cij)[a], a, k);
          if (cjk)
            for (int a = 0; a < dim_; ++a) add_basis_bracket(s, (*cjk)[a], a, i);
          if (cik)  // [e_k, e_i] = -[e_i, e_k]
            for (int a = 0; a < dim_; ++a) add_basis_bracket(s, -(*cik)[a], a, j);
          if (!is_zero(s))
            throw ValidationError("Jacobi identity fails on basis triple (" + std::to_string(i) +
                                  ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
        }
      }
  }

  Vec unit(int i) const {
    Vec e = zero_vec(dim_);
    e[i] = 1;
    return e;
  }

  /// Optional named distinguished subspaces (center, nilradical, ...). They
  /// are never trusted: consumers re-validate before use.
  const std::map<std::string, std::vector<Vec>>& metadata() const { return metadata_; }
  void set_metadata(const std::string& name, std::vector<Vec> basis) {
    for (const auto& v : basis)
      if (int(v.size()) != dim_) throw ValidationError("metadata subspace has wrong ambient dimension");
    metadata_[name] = std::move(basis);
  }

 private:
  int dim_;
  std::vector<std::string> labels_;
  std::vector<Vec> table_;  // (i, j) with i < j at i * dim + j; empty = zero
  std::vector<std::pair<int, int>> pairs_;  // keys of the nonzero entries
  std::map<std::string, std::vector<Vec>> metadata_;
};

/// Element of a Lie algebra in basis coordinates.
struct Element {
  const LieAlgebra* parent = nullptr;
  Vec coords;

  Element() = default;
  Element(const LieAlgebra& g, Vec c) : parent(&g), coords(std::move(c)) {
    if (int(coords.size()) != g.dim()) throw ValidationError("element length does not match algebra dimension");
  }
};

inline Element bracket(const Element& x, const Element& y) {
  if (x.parent != y.parent) throw ParentMismatchError("bracket of elements of different algebras");
  return Element(*x.parent, x.parent->bracket_coords(x.coords, y.coords));
}

inline Mat ad_matrix(const Element& x) { return x.parent->ad_matrix(x.coords); }

/// Basis of {x : [x, g] = 0}, computed as one kernel.
inline std::vector<Vec> center(const LieAlgebra& g) {
  const int n = g.dim();
  Mat constraints(n * n, n);
  for (int i = 0; i < n; ++i) {
    const Mat ad = g.ad_basis(i);  // ad(e_i); column of the stacked system
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) constraints.at(j * n + k, i) = ad.at(k, j);
  }
  return kernel(constraints);
}

/// Canonical basis of span{[a, b] : a in A, b in B}.
inline std::vector<Vec> bracket_span(const LieAlgebra& g, const std::vector<Vec>& a,
                                     const std::vector<Vec>& b) {
  std::vector<Vec> products;
  for (const auto& x : a)
    for (const auto& y : b) {
      Vec p = g.bracket_coords(x, y);
      if (!is_zero(p)) products.push_back(std::move(p));
    }
  return span_basis(products);
}

inline std::vector<Vec> full_basis(const LieAlgebra& g) {
  std::vector<Vec> out;
  for (int i = 0; i < g.dim(); ++i) out.push_back(g.unit(i));
  return out;
}

inline std::vector<Vec> derived_subalgebra(const LieAlgebra& g) {
  return bracket_span(g, full_basis(g), full_basis(g));
}

/// g = g^0 >= g^1 >= ... with g^{k+1} = [g, g^k], until stabilization.
inline std::vector<std::vector<Vec>> lower_central_series(const LieAlgebra& g) {
  std::vector<std::vector<Vec>> series;
  series.push_back(span_basis(full_basis(g)));
  while (true) {
    auto next = bracket_span(g, full_basis(g), series.back());
    if (subspace_equal(next, series.back())) break;
    const bool done = next.empty();
    series.push_back(std::move(next));
    if (done) break;
  }
  return series;
}

inline std::vector<std::vector<Vec>> derived_series(const LieAlgebra& g) {
  std::vector<std::vector<Vec>> series;
  series.push_back(span_basis(full_basis(g)));
  while (true) {
    auto next = bracket_span(g, series.back(), series.back());
    if (subspace_equal(next, series.back())) break;
    const bool done = next.empty();
    series.push_back(std::move(next));
    if (done) break;
  }
  return series;
}

inline bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().empty(); }

inline bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().empty(); }

/// True iff [g, span(s)] is contained in span(s).
inline bool subspace_is_ideal(const LieAlgebra& g, const std::vector<Vec>& s) {
  const Subspace span(s, g.dim());
  for (int i = 0; i < g.dim(); ++i)
    for (const auto& v : s)
      if (!span.contains(g.bracket_coords(g.unit(i), v))) return false;
  return true;
}

/// Re-validates declared metadata subspaces against their defining
/// equations; input files are user-authored and never trusted.
inline void validate_metadata(const LieAlgebra& g) {
  for (const auto& [name, basis] : g.metadata()) {
    if (name == "center") {
      const Subspace true_center(center(g), g.dim());
      for (const auto& v : basis)
        if (!true_center.contains(v))
          throw ValidationError("declared center contains a non-central vector");
    } else if (name == "nilradical") {
      if (!subspace_is_ideal(g, basis)) throw ValidationError("declared nilradical is not an ideal");
      const Subspace c(center(g), g.dim());
      for (const auto& x : basis)
        for (const auto& y : basis)
          if (!c.contains(g.bracket_coords(x, y)))
            throw ValidationError("declared nilradical has [u, u] outside the center");
    } else if (name == "levi") {
      const Subspace span(basis, g.dim());
      for (const auto& x : basis)
        for (const auto& y : basis)
          if (!span.contains(g.bracket_coords(x, y)))
            throw ValidationError("declared levi part is not bracket-closed");
    } else if (!subspace_is_ideal(g, basis)) {
      throw ValidationError("declared subspace '" + name + "' is not an ideal");
    }
  }
}

}  // namespace admlie
