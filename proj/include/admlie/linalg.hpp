#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "admlie/matrix.hpp"
#include "admlie/rational.hpp"

namespace admlie {

class NotSymmetricError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

namespace detail {

/// Integer row echelon form computed by fraction-free (Bareiss) elimination.
/// Row scaling and elimination preserve the row space and the kernel of the
/// original rational matrix.
struct IntEchelon {
  std::vector<std::vector<Int>> rows;
  std::vector<int> pivot_col;  // one entry per nonzero echelon row, increasing
  int cols = 0;
};

inline std::vector<Int> clear_denominators(const Vec& row) {
  Int l = 1;
  for (const auto& x : row) l = lcm(l, denominator(x));
  std::vector<Int> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    out[j] = numerator(row[j]) * (l / denominator(row[j]));
  return out;
}

inline IntEchelon bareiss_echelon(const Mat& m) {
  IntEchelon e;
  e.cols = m.cols();
  e.rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    auto r = clear_denominators(m.row(i));
    bool nonzero = false;
    for (const auto& x : r)
      if (x != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) e.rows.push_back(std::move(r));
  }

  Int prev = 1;
  std::size_t r = 0;
  for (int c = 0; c < e.cols && r < e.rows.size(); ++c) {
    // Pivot choice: smallest magnitude nonzero entry in column c keeps the
    // integer growth of the fraction-free updates down. Ties break on row
    // index so the result is deterministic.
    std::size_t pivot = e.rows.size();
    for (std::size_t i = r; i < e.rows.size(); ++i) {
      if (e.rows[i][c] == 0) continue;
      if (pivot == e.rows.size() || abs(e.rows[i][c]) < abs(e.rows[pivot][c])) pivot = i;
    }
    if (pivot == e.rows.size()) continue;
    std::swap(e.rows[r], e.rows[pivot]);
    const std::vector<Int>& prow = e.rows[r];
    const Int p = prow[c];
    // Every row below is updated, also those with a zero entry in the pivot
    // column: keeping all rows at the same Bareiss generation is what makes
    // the division by the previous pivot exact.
    for (std::size_t i = r + 1; i < e.rows.size(); ++i) {
      std::vector<Int>& row = e.rows[i];
      const Int f = row[c];
      for (int j = c + 1; j < e.cols; ++j) row[j] = (p * row[j] - f * prow[j]) / prev;
      row[c] = 0;
    }
    e.pivot_col.push_back(c);
    prev = p;
    ++r;
  }
  e.rows.resize(r);
  return e;
}

/// Solves the homogeneous triangular system of an echelon for the free
/// column `free_col` set to 1; remaining free columns are 0.
inline Vec kernel_vector(const IntEchelon& e, int free_col) {
  Vec x(e.cols, Rat(0));
  x[free_col] = 1;
  for (int r = int(e.pivot_col.size()) - 1; r >= 0; --r) {
    const int pc = e.pivot_col[r];
    Rat s = 0;
    for (int j = pc + 1; j < e.cols; ++j)
      if (e.rows[r][j] != 0 && x[j] != 0) s += Rat(e.rows[r][j]) * x[j];
    x[pc] = -s / Rat(e.rows[r][pc]);
  }
  return x;
}

inline void normalize_leading_one(Vec& v) {
  for (const auto& x : v)
    if (x != 0) {
      const Rat inv = 1 / x;
      for (auto& y : v) y *= inv;
      return;
    }
}

}  // namespace detail

inline int rank(const Mat& m) { return int(detail::bareiss_echelon(m).pivot_col.size()); }

/// Basis of {v : m v = 0}. Vectors are normalized with leading entry 1 and
/// ordered by their free column, so the result is deterministic.
inline std::vector<Vec> kernel(const Mat& m) {
  const auto e = detail::bareiss_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivot_col) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec v = detail::kernel_vector(e, c);
    detail::normalize_leading_one(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of ker(m - lambda I); empty iff lambda is not an eigenvalue.
inline std::vector<Vec> eigenspace(const Mat& m, const Rat& lambda) {
  if (!m.is_square()) throw Error("eigenspace of a non-square matrix");
  Mat shifted = m;
  for (int i = 0; i < m.rows(); ++i) shifted.at(i, i) -= lambda;
  return kernel(shifted);
}

/// One solution of m x = rhs, or nothing when the system is inconsistent.
inline std::optional<Vec> solve(const Mat& m, const Vec& rhs) {
  if (int(rhs.size()) != m.rows()) throw Error("solve: rhs length mismatch");
  Mat aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = rhs[i];
  }
  const auto e = detail::bareiss_echelon(aug);
  for (int c : e.pivot_col)
    if (c == m.cols()) return std::nullopt;  // pivot in the rhs column
  Vec x(m.cols(), Rat(0));
  for (int r = int(e.pivot_col.size()) - 1; r >= 0; --r) {
    const int pc = e.pivot_col[r];
    Rat s = Rat(e.rows[r][m.cols()]);
    for (int j = pc + 1; j < m.cols(); ++j)
      if (e.rows[r][j] != 0 && x[j] != 0) s -= Rat(e.rows[r][j]) * x[j];
    x[pc] = s / Rat(e.rows[r][pc]);
  }
  return x;
}

/// Solves m x = rhs for many right-hand sides with a single elimination.
inline std::vector<std::optional<Vec>> solve_many(const Mat& m, const std::vector<Vec>& rhss) {
  const int n = m.cols();
  const int k = int(rhss.size());
  Mat aug(m.rows(), n + k);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    for (int b = 0; b < k; ++b) {
      if (int(rhss[b].size()) != m.rows()) throw Error("solve_many: rhs length mismatch");
      aug.at(i, n + b) = rhss[b][i];
    }
  }
  // Eliminate with pivots restricted to the coefficient columns, keeping
  // rows that vanish there: a nonzero rhs entry in such a row flags that
  // system as inconsistent.
  auto rows_int = std::vector<std::vector<Int>>();
  for (int i = 0; i < aug.rows(); ++i) rows_int.push_back(detail::clear_denominators(aug.row(i)));
  std::vector<int> pivot_col;
  Int prev = 1;
  std::size_t r = 0;
  for (int c = 0; c < n && r < rows_int.size(); ++c) {
    std::size_t pivot = rows_int.size();
    for (std::size_t i = r; i < rows_int.size(); ++i) {
      if (rows_int[i][c] == 0) continue;
      if (pivot == rows_int.size() || abs(rows_int[i][c]) < abs(rows_int[pivot][c])) pivot = i;
    }
    if (pivot == rows_int.size()) continue;
    std::swap(rows_int[r], rows_int[pivot]);
    const Int p = rows_int[r][c];
    for (std::size_t i = r + 1; i < rows_int.size(); ++i) {
      const Int f = rows_int[i][c];
      for (int j = c + 1; j < n + k; ++j)
        rows_int[i][j] = (p * rows_int[i][j] - f * rows_int[r][j]) / prev;
      rows_int[i][c] = 0;
    }
    pivot_col.push_back(c);
    prev = p;
    ++r;
  }
  std::vector<std::optional<Vec>> out(k);
  for (int b = 0; b < k; ++b) {
    bool consistent = true;
    for (std::size_t i = r; i < rows_int.size() && consistent; ++i)
      if (rows_int[i][n + b] != 0) consistent = false;
    if (!consistent) continue;
    Vec x(n, Rat(0));
    for (int row = int(pivot_col.size()) - 1; row >= 0; --row) {
      const int pc = pivot_col[row];
      Rat s = Rat(rows_int[row][n + b]);
      for (int j = pc + 1; j < n; ++j)
        if (rows_int[row][j] != 0 && x[j] != 0) s -= Rat(rows_int[row][j]) * x[j];
      x[pc] = s / Rat(rows_int[row][pc]);
    }
    out[b] = std::move(x);
  }
  return out;
}

inline Rat det(const Mat& m) {
  if (!m.is_square()) throw Error("determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  // Fraction-free elimination on a denominator-cleared copy; track scalings.
  std::vector<std::vector<Int>> a;
  Rat scale = 1;
  for (int i = 0; i < n; ++i) {
    Int l = 1;
    const Vec row = m.row(i);
    for (const auto& x : row) l = lcm(l, denominator(x));
    scale /= Rat(l);
    std::vector<Int> r(n);
    for (int j = 0; j < n; ++j) r[j] = numerator(row[j]) * (l / denominator(row[j]));
    a.push_back(std::move(r));
  }
  Int prev = 1;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0 && (pivot < 0 || abs(a[i][c]) < abs(a[pivot][c]))) pivot = i;
    if (pivot < 0) return 0;
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      sign = -sign;
    }
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j) a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[c][c];
  }
  return Rat(sign) * Rat(a[n - 1][n - 1]) * scale;
}

inline std::optional<Mat> try_inverse(const Mat& m) {
  if (!m.is_square()) throw Error("inverse of a non-square matrix");
  const int n = m.rows();
  Mat inv(n, n);
  for (int j = 0; j < n; ++j) {
    Vec e(n, Rat(0));
    e[j] = 1;
    auto x = solve(m, e);
    if (!x) return std::nullopt;
    for (int i = 0; i < n; ++i) inv.at(i, j) = (*x)[i];
  }
  if (!(m * inv == Mat::identity(n))) return std::nullopt;  // rank-deficient square solve
  return inv;
}

enum class PsdStatus { PositiveDefinite, PositiveSemidefiniteSingular, Indefinite };

inline const char* to_string(PsdStatus s) {
  switch (s) {
    case PsdStatus::PositiveDefinite: return "positive-definite";
    case PsdStatus::PositiveSemidefiniteSingular: return "positive-semidefinite-singular";
    default: return "indefinite";
  }
}

/// Exact inertia-style classification of a symmetric rational matrix by
/// pivoted fraction-free Schur complements. A zero diagonal entry with a
/// nonzero row embeds an indefinite 2x2 block, so the loop can stop early.
inline PsdStatus psd_status(const Mat& m) {
  if (!m.is_square()) throw NotSymmetricError("psd_status: matrix is not square");
  if (!m.is_symmetric()) throw NotSymmetricError("psd_status: matrix is not symmetric");
  const int n = m.rows();
  // Symmetric scaling s -> d s d with positive integer d keeps the signature.
  Int l = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) l = lcm(l, denominator(m.at(i, j)));
  std::vector<std::vector<Int>> s(n, std::vector<Int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat v = m.at(i, j) * Rat(l * l);
      s[i][j] = numerator(v);
    }

  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  Int prev = 1;
  int pivots = 0;
  while (!active.empty()) {
    int pick = -1;
    bool all_zero = true;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const int i = active[a];
      const Int& d = s[i][i];
      if (d < 0) return PsdStatus::Indefinite;
      if (d == 0) {
        for (int b : active)
          if (s[i][b] != 0) return PsdStatus::Indefinite;
      } else {
        all_zero = false;
        if (pick < 0 || abs(s[i][i]) < abs(s[active[pick]][active[pick]])) pick = int(a);
      }
    }
    if (all_zero) break;  // remaining block vanishes
    const int k = active[pick];
    active.erase(active.begin() + pick);
    ++pivots;
    const Int p = s[k][k];
    for (int i : active)
      for (int j : active) s[i][j] = (p * s[i][j] - s[i][k] * s[k][j]) / prev;
    prev = p;
  }
  return pivots == n ? PsdStatus::PositiveDefinite : PsdStatus::PositiveSemidefiniteSingular;
}

// ---------------------------------------------------------------------------
// Subspace utilities. Subspaces are represented by row lists; the reduced
// row echelon form over the rationals gives a canonical basis, which makes
// equality tests and printed output deterministic.
// ---------------------------------------------------------------------------

inline std::vector<Vec> rref_rows(std::vector<Vec> rows) {
  if (rows.empty()) return rows;
  const int cols = int(rows[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < int(rows.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < int(rows.size()); ++i)
      if (rows[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    const Rat inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (int i = 0; i < int(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c];
      for (int j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Canonical basis of the span of `vectors`.
inline std::vector<Vec> span_basis(const std::vector<Vec>& vectors) { return rref_rows(vectors); }

/// Precomputed reduced basis supporting fast exact membership tests.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(const std::vector<Vec>& vectors, int ambient_dim = -1)
      : basis_(rref_rows(vectors)) {
    ambient_ = vectors.empty() ? ambient_dim : int(vectors[0].size());
    if (ambient_dim >= 0) ambient_ = ambient_dim;
    for (const auto& row : basis_) leads_.push_back(lead_col(row));
  }

  int dim() const { return int(basis_.size()); }
  int ambient() const { return ambient_; }
  const std::vector<Vec>& basis() const { return basis_; }

  bool contains(const Vec& v) const {
    Vec w = v;
    for (std::size_t r = 0; r < basis_.size(); ++r)
      if (w[leads_[r]] != 0) add_scaled(w, -w[leads_[r]], basis_[r]);
    return is_zero(w);
  }

  bool contains_all(const std::vector<Vec>& vs) const {
    for (const auto& v : vs)
      if (!contains(v)) return false;
    return true;
  }

  /// Coordinates of v in the reduced basis, if v lies in the span.
  std::optional<Vec> coordinates(const Vec& v) const {
    Vec w = v;
    Vec coeff(basis_.size(), Rat(0));
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (w[leads_[r]] != 0) {
        coeff[r] = w[leads_[r]];
        add_scaled(w, -coeff[r], basis_[r]);
      }
    }
    if (!is_zero(w)) return std::nullopt;
    return coeff;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  static int lead_col(const Vec& row) {
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) return int(j);
    return -1;
  }

  std::vector<Vec> basis_;
  std::vector<int> leads_;
  int ambient_ = 0;
};

inline bool subspace_equal(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  return rref_rows(a) == rref_rows(b);
}

/// True iff the concatenated vectors are independent and fill the ambient
/// space, i.e. the subspaces are complementary summands.
inline bool is_direct_sum(const std::vector<std::vector<Vec>>& subspaces, int ambient_dim) {
  std::vector<Vec> all;
  for (const auto& s : subspaces)
    for (const auto& v : s) {
      if (int(v.size()) != ambient_dim) throw Error("is_direct_sum: ambient dimension mismatch");
      all.push_back(v);
    }
  if (int(all.size()) != ambient_dim) return false;
  return rank(Mat::from_rows(all)) == ambient_dim;
}

}  // namespace admlie
