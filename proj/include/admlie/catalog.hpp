#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admlie/cones.hpp"
#include "admlie/derivations.hpp"
#include "admlie/spindler.hpp"

namespace admlie {

class UnknownNameError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Built-in instance together with the witnesses its verification pipelines
/// need: a convex-type element, a Cartan torus, the distinguished grading
/// data (h, D_V, D_z), per-ideal Jordan units, and declared tube-type
/// flags.
struct CatalogEntry {
  std::string name;
  SpindlerData data;
  std::optional<Vec> f;              // functional on z
  std::optional<Vec> convex_type_x;  // l-coordinates
  std::vector<Vec> torus;            // l-coordinates
  std::optional<Vec> h;              // l-coordinates
  std::optional<Mat> d_v, d_z;
  std::vector<Vec> jordan_units_plus, jordan_units_minus;  // l-coordinates
  std::optional<bool> tube_type;  // declared flag for the hermitian part

  bool has_classified() const { return h && d_v && d_z; }
};

namespace catalog_detail {

/// Standard basis of sp(2n, R) for J = [[0, I], [-I, 0]]: the gl(n) block
/// embeddings followed by the symmetric upper-right and lower-left blocks.
inline std::vector<Mat> sp_standard_basis(int n, std::vector<std::string>* labels = nullptr) {
  std::vector<Mat> basis;
  auto label = [&](const std::string& s) {
    if (labels) labels->push_back(s);
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Mat m(2 * n, 2 * n);
      m.at(a, b) = 1;
      m.at(n + b, n + a) = -1;
      basis.push_back(std::move(m));
      label("A(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Mat m(2 * n, 2 * n);
      m.at(a, n + b) = 1;
      m.at(b, n + a) = 1;
      basis.push_back(std::move(m));
      label("B(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Mat m(2 * n, 2 * n);
      m.at(n + a, b) = 1;
      m.at(n + b, a) = 1;
      basis.push_back(std::move(m));
      label("C(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  return basis;
}

inline Mat omega_standard(int n) {
  Mat j(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    j.at(a, n + a) = 1;
    j.at(n + a, a) = -1;
  }
  return j;
}

/// Coordinates of a 2n x 2n symplectic matrix in the standard basis. The
/// standard basis makes this a direct entry read-off.
inline Vec sp_coordinates(int n, const Mat& x) {
  const auto basis = sp_standard_basis(n);
  std::vector<Vec> cols;
  for (const auto& b : basis) cols.push_back(b.flatten());
  auto coords = solve(Mat::from_cols(cols), x.flatten());
  if (!coords) throw InvalidDataError("matrix is not symplectic");
  return *coords;
}

inline BetaTensor beta_from_omega(const Mat& omega) {
  BetaTensor beta(omega.rows(), 1);
  for (int p = 0; p < omega.rows(); ++p)
    for (int q = p + 1; q < omega.cols(); ++q)
      if (omega.at(p, q) != 0) beta.set(p, q, Vec{omega.at(p, q)});
  return beta;
}

inline Vec u_element_coords(int n) {
  // U = [[0, I], [-I, 0]] = sum_a B(a,a) - sum_a C(a,a).
  return sp_coordinates(n, omega_standard(n));
}

/// h with 2h = diag(-I_n, I_n); the orientation that puts the squares of
/// the first n coordinates on the +1 side of the grading.
inline Vec h_plus_squares(int n) {
  Mat m(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    m.at(a, a) = Rat(-1, 2);
    m.at(n + a, n + a) = Rat(1, 2);
  }
  return sp_coordinates(n, m);
}

inline Mat jordan_unit_matrix(int n, int side) {
  Mat m(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    if (side == 1)
      m.at(n + a, a) = -2;  // [[0,0],[-2I,0]], maps to the polynomial sum v_a^2
    else
      m.at(a, n + a) = 2;  // [[0,2I],[0,0]], maps to sum v_{n+a}^2
  }
  return m;
}

inline CatalogEntry reductive_entry(const std::string& name, int n) {
  CatalogEntry e;
  e.name = name;
  std::vector<std::string> labels;
  auto basis = sp_standard_basis(n, &labels);
  if (n == 1) labels = {"H", "E", "F"};
  e.data.l = from_matrix_basis(basis, labels);
  e.data.dim_v = 0;
  e.data.dim_z = 0;
  e.data.beta = BetaTensor(0, 0);
  for (int a = 0; a < e.data.dim_l(); ++a) e.data.rho.push_back(Mat(0, 0));
  e.convex_type_x = u_element_coords(n);
  e.torus = {u_element_coords(n)};
  // h = (1/2) diag(I_n, -I_n) induces the 3-grading of sp(2n, R).
  {
    Mat m(2 * n, 2 * n);
    for (int a = 0; a < n; ++a) {
      m.at(a, a) = Rat(1, 2);
      m.at(n + a, n + a) = Rat(-1, 2);
    }
    e.h = sp_coordinates(n, m);
  }
  e.d_v = Mat(0, 0);
  e.d_z = Mat(0, 0);
  e.tube_type = true;
  return e;
}

inline CatalogEntry jacobi_entry(int n) {
  CatalogEntry e;
  e.name = "jacobi(" + std::to_string(n) + ")";
  std::vector<std::string> labels;
  auto basis = sp_standard_basis(n, &labels);
  if (n == 1) labels = {"H", "E", "F"};
  e.data.l = from_matrix_basis(basis, labels);
  e.data.rho = std::move(basis);
  e.data.dim_v = 2 * n;
  e.data.dim_z = 1;
  e.data.beta = beta_from_omega(omega_standard(n));
  e.f = Vec{Rat(1)};
  e.convex_type_x = u_element_coords(n);
  e.torus = {u_element_coords(n)};
  e.h = h_plus_squares(n);
  e.d_v = Rat(1, 2) * Mat::identity(2 * n);
  e.d_z = Mat{{Rat(1)}};
  e.jordan_units_plus = {sp_coordinates(n, jordan_unit_matrix(n, 1))};
  e.jordan_units_minus = {sp_coordinates(n, jordan_unit_matrix(n, -1))};
  e.tube_type = true;
  return e;
}

inline CatalogEntry heis_entry(int n) {
  CatalogEntry e;
  e.name = "heis(" + std::to_string(n) + ")";
  e.data.l = LieAlgebra::create(0, {});
  e.data.dim_v = 2 * n;
  e.data.dim_z = 1;
  e.data.beta = beta_from_omega(omega_standard(n));
  e.f = Vec{Rat(1)};
  return e;
}

inline CatalogEntry oscillator_entry() {
  CatalogEntry e;
  e.name = "oscillator";
  e.data.l = LieAlgebra::create(1, {}, {"U"});
  e.data.rho = {Mat{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}}};
  e.data.dim_v = 2;
  e.data.dim_z = 1;
  e.data.beta = beta_from_omega(omega_standard(1));
  e.f = Vec{Rat(1)};
  e.convex_type_x = Vec{Rat(1)};
  e.torus = {Vec{Rat(1)}};
  return e;
}

inline CatalogEntry ex318_entry() {
  CatalogEntry e;
  e.name = "generalized_jacobi_ex318";
  auto basis = sp_standard_basis(1);
  e.data.l = from_matrix_basis(basis, {"H", "E", "F"});
  for (const auto& b : basis) {
    Mat diag(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        diag.at(i, j) = b.at(i, j);
        diag.at(2 + i, 2 + j) = b.at(i, j);
      }
    e.data.rho.push_back(std::move(diag));
  }
  e.data.dim_v = 4;
  e.data.dim_z = 2;
  e.data.beta = BetaTensor(4, 2);
  e.data.beta.set(0, 1, Vec{Rat(1), Rat(0)});
  e.data.beta.set(2, 3, Vec{Rat(0), Rat(1)});
  e.f = Vec{Rat(1), Rat(1)};
  e.convex_type_x = Vec{Rat(0), Rat(1), Rat(-1)};  // E - F
  e.torus = {Vec{Rat(0), Rat(1), Rat(-1)}};
  e.h = Vec{Rat(-1, 2), Rat(0), Rat(0)};  // 2h = diag(-1, 1) on each copy
  {
    Mat dv(4, 4);
    dv.at(0, 0) = dv.at(1, 1) = Rat(1, 2);
    dv.at(2, 2) = dv.at(3, 3) = Rat(-1, 2);
    e.d_v = dv;
    Mat dz(2, 2);
    dz.at(0, 0) = 1;
    dz.at(1, 1) = -1;
    e.d_z = dz;
  }
  e.jordan_units_plus = {Vec{Rat(0), Rat(0), Rat(-2)}};  // -2F
  e.jordan_units_minus = {Vec{Rat(0), Rat(2), Rat(0)}};  // 2E
  e.tube_type = true;
  return e;
}

/// Exterior square machinery for the fixed-space construction: V wedge V
/// with the induced action, its invariant and effective parts, and the
/// projection onto the invariant part.
struct WedgeSplit {
  int pairs;                         // dim of V wedge V
  std::vector<std::pair<int, int>> index;  // lex-ordered (p, q), p < q
  std::vector<Vec> fix;              // joint kernel of the induced action
  std::vector<Vec> eff;              // span of the action images
};

inline WedgeSplit wedge_split(const std::vector<Mat>& rho, int dim_v) {
  WedgeSplit w;
  for (int p = 0; p < dim_v; ++p)
    for (int q = p + 1; q < dim_v; ++q) w.index.push_back({p, q});
  w.pairs = int(w.index.size());
  auto coord = [&](int p, int q) {
    // position of e_p wedge e_q (p < q) in lex order
    int idx = 0;
    for (const auto& [a, b] : w.index) {
      if (a == p && b == q) return idx;
      ++idx;
    }
    throw Error("wedge index lookup failed");
  };
  std::vector<Mat> actions;
  for (const auto& r : rho) {
    Mat act(w.pairs, w.pairs);
    for (int col = 0; col < w.pairs; ++col) {
      const auto [p, q] = w.index[col];
      for (int m = 0; m < dim_v; ++m) {
        if (r.at(m, p) != 0 && m != q) {
          if (m < q)
            act.at(coord(m, q), col) += r.at(m, p);
          else
            act.at(coord(q, m), col) -= r.at(m, p);
        }
        if (r.at(m, q) != 0 && m != p) {
          if (p < m)
            act.at(coord(p, m), col) += r.at(m, q);
          else
            act.at(coord(m, p), col) -= r.at(m, q);
        }
      }
    }
    actions.push_back(std::move(act));
  }
  if (actions.empty()) {
    for (int i = 0; i < w.pairs; ++i) {
      Vec v = zero_vec(w.pairs);
      v[i] = 1;
      w.fix.push_back(std::move(v));
    }
    return w;
  }
  Mat stacked(w.pairs * int(actions.size()), w.pairs);
  for (std::size_t a = 0; a < actions.size(); ++a)
    for (int i = 0; i < w.pairs; ++i)
      for (int j = 0; j < w.pairs; ++j) stacked.at(int(a) * w.pairs + i, j) = actions[a].at(i, j);
  w.fix = kernel(stacked);
  std::vector<Vec> images;
  for (const auto& act : actions)
    for (int j = 0; j < w.pairs; ++j) {
      Vec c = act.col(j);
      if (!is_zero(c)) images.push_back(std::move(c));
    }
  w.eff = span_basis(images);
  if (!is_direct_sum({w.fix, w.eff}, w.pairs))
    throw ValidationError("wedge square does not split into fixed and effective parts");
  return w;
}

inline CatalogEntry ex319_entry(int n) {
  CatalogEntry e;
  e.name = "wedge_fix_ex319(" + std::to_string(n) + ")";
  std::vector<std::string> labels;
  auto basis = sp_standard_basis(n, &labels);
  if (n == 1) labels = {"H", "E", "F"};
  e.data.l = from_matrix_basis(basis, labels);
  e.data.rho = basis;
  e.data.dim_v = 2 * n;

  const WedgeSplit w = wedge_split(basis, 2 * n);
  if (w.fix.size() != 1)
    throw ValidationError("fixed part of V wedge V is not one-dimensional");
  e.data.dim_z = 1;
  // beta(f_p, f_q) = projection of e_p wedge e_q onto the fixed line.
  std::vector<Vec> cols = w.fix;
  cols.insert(cols.end(), w.eff.begin(), w.eff.end());
  const Mat basis_mat = Mat::from_cols(cols);
  std::vector<Vec> units;
  for (int col = 0; col < w.pairs; ++col) {
    Vec unit = zero_vec(w.pairs);
    unit[col] = 1;
    units.push_back(std::move(unit));
  }
  const auto coeffs = solve_many(basis_mat, units);
  BetaTensor beta(2 * n, 1);
  for (int col = 0; col < w.pairs; ++col) {
    const auto [p, q] = w.index[col];
    if (!coeffs[col]) throw Error("wedge projection solve failed");
    if ((*coeffs[col])[0] != 0) beta.set(p, q, Vec{(*coeffs[col])[0]});
  }
  e.data.beta = std::move(beta);

  // f = Omega read as a functional on V wedge V, restricted to the fixed
  // line; with this choice f o beta recovers Omega exactly.
  const Mat omega = omega_standard(n);
  Rat f_val = 0;
  for (int col = 0; col < w.pairs; ++col) {
    const auto [p, q] = w.index[col];
    f_val += w.fix[0][col] * omega.at(p, q);
  }
  if (f_val == 0) throw ValidationError("omega vanishes on the fixed line");
  e.f = Vec{f_val};
  if (!(e.data.beta.gram(*e.f) == omega))
    throw ValidationError("f o beta does not reproduce omega on the fixed-space build");

  e.convex_type_x = u_element_coords(n);
  e.torus = {u_element_coords(n)};
  e.h = h_plus_squares(n);
  e.d_v = Rat(1, 2) * Mat::identity(2 * n);
  e.d_z = Mat{{Rat(1)}};
  e.jordan_units_plus = {sp_coordinates(n, jordan_unit_matrix(n, 1))};
  e.jordan_units_minus = {sp_coordinates(n, jordan_unit_matrix(n, -1))};
  e.tube_type = true;
  return e;
}

inline int parse_size_arg(const std::string& name, const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw UnknownNameError("catalog entry '" + name + "' requires a size argument, e.g. " + name +
                           "(1)");
  int n = 0;
  try {
    n = std::stoi(text.substr(open + 1, text.size() - open - 2));
  } catch (const std::exception&) {
    throw UnknownNameError("bad size argument in '" + text + "'");
  }
  if (n < 1) throw UnknownNameError("size argument must be positive in '" + text + "'");
  if (2 * n > 8) throw UnknownNameError("catalog sizes are capped at dim V <= 8");
  return n;
}

}  // namespace catalog_detail

/// Materializes a named entry. Recognized names: sl2, sp2n(n), heis(n),
/// jacobi(n), generalized_jacobi_ex318 (alias ex318), oscillator,
/// wedge_fix_ex319(n) (alias ex319(n)).
inline CatalogEntry catalog_get(const std::string& name) {
  using namespace catalog_detail;
  if (name == "sl2") return reductive_entry("sl2", 1);
  if (name == "oscillator") return oscillator_entry();
  if (name == "generalized_jacobi_ex318" || name == "ex318") return ex318_entry();
  auto starts_with = [&](const char* prefix) { return name.rfind(prefix, 0) == 0; };
  if (starts_with("sp2n")) return reductive_entry(name, parse_size_arg("sp2n", name));
  if (starts_with("heis")) return heis_entry(parse_size_arg("heis", name));
  if (starts_with("jacobi")) return jacobi_entry(parse_size_arg("jacobi", name));
  if (starts_with("wedge_fix_ex319")) return ex319_entry(parse_size_arg("wedge_fix_ex319", name));
  if (starts_with("ex319")) return ex319_entry(parse_size_arg("ex319", name));
  throw UnknownNameError("unknown catalog entry '" + name + "'");
}

struct SelfCheckItem {
  std::string name;
  bool pass;
  std::string detail;
};

/// Runs every check a catalog entry ships witnesses for. All entries must
/// come out clean; this is also exposed through the catalog pipeline.
inline std::vector<SelfCheckItem> catalog_self_check(const CatalogEntry& e) {
  std::vector<SelfCheckItem> items;
  auto add = [&](const std::string& n, bool ok, const std::string& d = "") {
    items.push_back({n, ok, d});
  };

  e.data.validate();
  const auto built = build_report(e.data, e.torus.empty() ? nullptr : &e.torus);
  const LieAlgebra& g = built.algebra;
  add("build-jacobi-identity", true, "dim " + std::to_string(g.dim()));
  add("beta-spans-z", built.warnings.empty(),
      built.warnings.empty() ? "" : built.warnings.front());

  add("center-formula", subspace_equal(center(g), center_formula(e.data)));
  add("derived-formula", subspace_equal(derived_subalgebra(g), derived_formula(e.data)));

  if (e.convex_type_x) {
    bool ok = true;
    std::string detail;
    if (e.data.dim_v > 0 && e.f) {
      ok = check_convex_type(e.data, make_symplectic_form(e.data.beta, *e.f), *e.convex_type_x);
    } else {
      detail = "trivial module";
    }
    add("convex-type-witness", ok, detail);
  }
  if (!e.torus.empty()) add("effective-torus", check_effective_torus(e.data, e.torus));

  if (e.has_classified()) {
    try {
      const auto bc = build_classified(e.data, g, *e.h, *e.d_v, *e.d_z);
      add("classified-derivation", true,
          "grading dims (" + std::to_string(bc.grading.minus.size()) + ", " +
              std::to_string(bc.grading.zero.size()) + ", " +
              std::to_string(bc.grading.plus.size()) + ")");
      const auto round = classify_from_derivation(e.data, bc.derivation);
      const bool ok = round.classified && round.classified->h == *e.h &&
                      round.classified->d_v == *e.d_v && round.classified->d_z == *e.d_z;
      add("classify-round-trip", ok, ok ? "" : round.diagnostic);
      add("z-decomposition", classified_z_decomposition_holds(e.data, bc.classified));
    } catch (const ValidationError& err) {
      add("classified-derivation", false, err.what());
    }
  }

  if (e.name.rfind("wedge_fix_ex319", 0) == 0 && e.f) {
    const Mat omega = catalog_detail::omega_standard(e.data.dim_v / 2);
    add("omega-recovered-from-fixed-space", e.data.beta.gram(*e.f) == omega);
  }
  return items;
}

}  // namespace admlie
