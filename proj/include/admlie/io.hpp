#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "admlie/catalog.hpp"
#include "admlie/lie_algebra.hpp"
#include "admlie/spindler.hpp"

namespace admlie {

using nlohmann::json;

/// Parsed problem input: either a raw structure-constant algebra or a
/// Spindler presentation with optional witnesses, plus named derivation
/// matrices and functionals. Catalog references fill the same shape.
struct InputSpec {
  std::string source;
  std::optional<LieAlgebra> algebra;  // raw structure-constant input
  std::optional<CatalogEntry> entry;  // spindler or catalog input
  std::map<std::string, Mat> derivations;
  std::map<std::string, Vec> functionals;
  Validation validation = Validation::Full;
};

namespace io_detail {

inline void check_keys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
}

inline int get_int(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  if (!j.at(key).is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return j.at(key).get<int>();
}

inline Rat get_rat(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a rational as \"p/q\" string or integer");
}

inline Vec get_vec(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rationals");
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_rat(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Mat get_mat(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(get_vec(j[i], where + "[" + std::to_string(i) + "]"));
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw ParseError(where + ": ragged matrix");
  return Mat::from_rows(rows);
}

inline std::vector<Vec> get_vec_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_vec(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

/// Structure-constant algebra from a full (i, j, k, c) entry list. The
/// tensor may carry both orientations; antisymmetry is checked entry-wise
/// and violations are reported with their (i, j, k) triple.
inline LieAlgebra parse_algebra(const json& j, const std::string& where, Validation validation) {
  check_keys(j, {"dim", "labels", "structure", "metadata"}, where);
  const int dim = get_int(j, "dim", where);
  if (dim < 0) throw ParseError(where + ".dim: must be non-negative");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j.at("labels").is_array()) throw ParseError(where + ".labels: expected an array");
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) throw ParseError(where + ".labels: expected strings");
      labels.push_back(l.get<std::string>());
    }
  }

  std::map<std::tuple<int, int, int>, Rat> tensor;
  if (j.contains("structure")) {
    const json& st = j.at("structure");
    if (!st.is_array()) throw ParseError(where + ".structure: expected an array");
    for (std::size_t idx = 0; idx < st.size(); ++idx) {
      const std::string ew = where + ".structure[" + std::to_string(idx) + "]";
      check_keys(st[idx], {"i", "j", "k", "c"}, ew);
      const int i = get_int(st[idx], "i", ew);
      const int jj = get_int(st[idx], "j", ew);
      const int k = get_int(st[idx], "k", ew);
      if (i < 0 || jj < 0 || k < 0 || i >= dim || jj >= dim || k >= dim)
        throw ParseError(ew + ": index out of range");
      const Rat c = get_rat(st[idx].at("c"), ew + ".c");
      auto [it, fresh] = tensor.insert({{i, jj, k}, c});
      if (!fresh && it->second != c)
        throw ValidationError("conflicting structure constants at (" + std::to_string(i) + ", " +
                              std::to_string(jj) + ", " + std::to_string(k) + ")");
    }
  }
  for (const auto& [ijk, c] : tensor) {
    const auto [i, jj, k] = ijk;
    if (i == jj && c != 0)
      throw ValidationError("antisymmetry violated at (" + std::to_string(i) + ", " +
                            std::to_string(jj) + ", " + std::to_string(k) + ")");
    // A missing mirror entry is implied; a present one must be the negative.
    auto it = tensor.find({jj, i, k});
    if (it != tensor.end() && it->second != -c)
      throw ValidationError("antisymmetry violated at (" + std::to_string(i) + ", " +
                            std::to_string(jj) + ", " + std::to_string(k) + ")");
  }

  std::map<std::pair<int, int>, Vec> table;
  for (const auto& [ijk, c] : tensor) {
    const auto [i, jj, k] = ijk;
    if (c == 0) continue;
    const int a = std::min(i, jj), b = std::max(i, jj);
    const Rat value = i < jj ? c : -c;
    auto& v = table[{a, b}];
    if (v.empty()) v = zero_vec(dim);
    v[k] = value;
  }
  LieAlgebra g = LieAlgebra::create(dim, std::move(table), std::move(labels), validation);

  if (j.contains("metadata")) {
    const json& md = j.at("metadata");
    if (!md.is_object()) throw ParseError(where + ".metadata: expected an object");
    for (const auto& [name, basis] : md.items())
      g.set_metadata(name, get_vec_list(basis, where + ".metadata." + name));
  }
  return g;
}

inline SpindlerData parse_spindler(const json& j, const std::string& where, Validation validation) {
  check_keys(j, {"l", "dim_v", "dim_z", "rho", "beta"}, where);
  SpindlerData data;
  if (!j.contains("l")) throw ParseError(where + ": missing field 'l'");
  data.l = parse_algebra(j.at("l"), where + ".l", validation);
  data.dim_v = get_int(j, "dim_v", where);
  data.dim_z = get_int(j, "dim_z", where);
  if (data.dim_v < 0 || data.dim_z < 0) throw ParseError(where + ": dimensions must be non-negative");
  data.beta = BetaTensor(data.dim_v, data.dim_z);
  if (j.contains("rho")) {
    if (!j.at("rho").is_array()) throw ParseError(where + ".rho: expected an array of matrices");
    for (std::size_t a = 0; a < j.at("rho").size(); ++a)
      data.rho.push_back(get_mat(j.at("rho")[a], where + ".rho[" + std::to_string(a) + "]"));
  }
  if (data.rho.empty() && data.l.dim() > 0)
    data.rho.assign(data.l.dim(), Mat(data.dim_v, data.dim_v));
  if (j.contains("beta")) {
    const json& b = j.at("beta");
    if (!b.is_array()) throw ParseError(where + ".beta: expected an array of entries");
    for (std::size_t idx = 0; idx < b.size(); ++idx) {
      const std::string ew = where + ".beta[" + std::to_string(idx) + "]";
      check_keys(b[idx], {"p", "q", "z"}, ew);
      const int p = get_int(b[idx], "p", ew);
      const int q = get_int(b[idx], "q", ew);
      if (!b[idx].contains("z")) throw ParseError(ew + ": missing field 'z'");
      try {
        data.beta.set(p, q, get_vec(b[idx].at("z"), ew + ".z"));
      } catch (const InvalidDataError& e) {
        throw ParseError(ew + ": " + e.what());
      }
    }
  }
  data.validate();
  return data;
}

inline void parse_witnesses(const json& j, const std::string& where, CatalogEntry& entry) {
  check_keys(j,
             {"convex_type_x", "torus", "h", "d_v", "d_z", "jordan_units_plus",
              "jordan_units_minus", "tube_type"},
             where);
  if (j.contains("convex_type_x")) entry.convex_type_x = get_vec(j.at("convex_type_x"), where + ".convex_type_x");
  if (j.contains("torus")) entry.torus = get_vec_list(j.at("torus"), where + ".torus");
  if (j.contains("h")) entry.h = get_vec(j.at("h"), where + ".h");
  if (j.contains("d_v")) entry.d_v = get_mat(j.at("d_v"), where + ".d_v");
  if (j.contains("d_z")) entry.d_z = get_mat(j.at("d_z"), where + ".d_z");
  if (j.contains("jordan_units_plus"))
    entry.jordan_units_plus = get_vec_list(j.at("jordan_units_plus"), where + ".jordan_units_plus");
  if (j.contains("jordan_units_minus"))
    entry.jordan_units_minus = get_vec_list(j.at("jordan_units_minus"), where + ".jordan_units_minus");
  if (j.contains("tube_type")) {
    if (!j.at("tube_type").is_boolean()) throw ParseError(where + ".tube_type: expected a boolean");
    entry.tube_type = j.at("tube_type").get<bool>();
  }
}

}  // namespace io_detail

inline constexpr const char* kInputSchema = "admlie-input/1";

/// Parses an input document. Unknown fields are rejected at every level.
inline InputSpec parse_input(const json& doc, const std::string& source,
                             Validation validation = Validation::Full) {
  using namespace io_detail;
  InputSpec spec;
  spec.source = source;
  spec.validation = validation;
  check_keys(doc, {"schema", "algebra", "spindler", "derivations", "functionals", "witnesses"},
             "input");
  if (doc.contains("schema")) {
    if (!doc.at("schema").is_string() || doc.at("schema").get<std::string>() != kInputSchema)
      throw ParseError("input.schema: expected \"" + std::string(kInputSchema) + "\"");
  }
  const bool has_algebra = doc.contains("algebra");
  const bool has_spindler = doc.contains("spindler");
  if (has_algebra == has_spindler)
    throw ParseError("input: exactly one of 'algebra' or 'spindler' is required");
  if (has_algebra) {
    spec.algebra = parse_algebra(doc.at("algebra"), "input.algebra", validation);
  } else {
    CatalogEntry entry;
    entry.name = source;
    entry.data = parse_spindler(doc.at("spindler"), "input.spindler", validation);
    if (doc.contains("witnesses")) parse_witnesses(doc.at("witnesses"), "input.witnesses", entry);
    spec.entry = std::move(entry);
  }
  if (doc.contains("derivations")) {
    const json& d = doc.at("derivations");
    if (!d.is_object()) throw ParseError("input.derivations: expected an object");
    for (const auto& [name, m] : d.items())
      spec.derivations[name] = get_mat(m, "input.derivations." + name);
  }
  if (doc.contains("functionals")) {
    const json& f = doc.at("functionals");
    if (!f.is_object()) throw ParseError("input.functionals: expected an object");
    for (const auto& [name, v] : f.items())
      spec.functionals[name] = get_vec(v, "input.functionals." + name);
  }
  if (spec.entry && !spec.entry->f && spec.functionals.count("f"))
    spec.entry->f = spec.functionals.at("f");
  return spec;
}

/// Loads an input from a file path or a catalog pseudo-path catalog:<name>.
inline InputSpec load_input(const std::string& path_or_catalog,
                            Validation validation = Validation::Full) {
  if (path_or_catalog.rfind("catalog:", 0) == 0) {
    InputSpec spec;
    spec.source = path_or_catalog;
    spec.entry = catalog_get(path_or_catalog.substr(8));
    spec.validation = validation;
    return spec;
  }
  std::ifstream in(path_or_catalog);
  if (!in) throw ParseError("cannot open input file '" + path_or_catalog + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in '" + path_or_catalog + "': " + e.what());
  }
  return parse_input(doc, path_or_catalog, validation);
}

/// Loads a bare derivation matrix: either [[...]] or {"matrix": [[...]]}.
inline Mat load_derivation_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open derivation file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
  if (doc.is_object()) {
    io_detail::check_keys(doc, {"matrix"}, "derivation");
    if (!doc.contains("matrix")) throw ParseError("derivation: missing field 'matrix'");
    return io_detail::get_mat(doc.at("matrix"), "derivation.matrix");
  }
  return io_detail::get_mat(doc, "derivation");
}

/// Parses a comma- or space-separated list of rationals (--functional flag).
inline Vec parse_rational_list(const std::string& text) {
  Vec out;
  std::string token;
  std::istringstream stream(text);
  while (std::getline(stream, token, ',')) {
    std::istringstream inner(token);
    std::string word;
    while (inner >> word) out.push_back(parse_rat(word));
  }
  return out;
}

// --- JSON serialization helpers for reports -------------------------------

inline json to_json(const Rat& r) { return rat_to_string(r); }

inline json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_to_string(x));
  return a;
}

inline json to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return rows;
}

inline json to_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

}  // namespace admlie
