#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "admlie/catalog.hpp"
#include "admlie/cones.hpp"
#include "admlie/derivations.hpp"
#include "admlie/io.hpp"
#include "admlie/report.hpp"

namespace admlie {

struct PipelineOptions {
  std::optional<Vec> functional;  // overrides the input's f
  std::optional<Mat> derivation;  // --derivation matrix
  int max_halvings = 40;
};

namespace pipeline_detail {

class Timer {
 public:
  explicit Timer(Report& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    report_.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
  }

 private:
  Report& report_;
  std::chrono::steady_clock::time_point start_;
};

inline LieAlgebra build_from_spec(const InputSpec& spec, std::vector<std::string>* warnings = nullptr) {
  if (spec.algebra) return *spec.algebra;
  if (!spec.entry) throw ValidationError("input carries no algebra");
  const auto& e = *spec.entry;
  auto result = build_report(e.data, e.torus.empty() ? nullptr : &e.torus, spec.validation);
  if (warnings) *warnings = result.warnings;
  return result.algebra;
}

inline Vec resolve_functional(const InputSpec& spec, const PipelineOptions& opt) {
  if (opt.functional) return *opt.functional;
  if (spec.entry && spec.entry->f) return *spec.entry->f;
  auto it = spec.functionals.find("f");
  if (it != spec.functionals.end()) return it->second;
  throw ValidationError("no functional f supplied (use --functional or a 'functionals.f' entry)");
}

inline json grading_dims(const Grading3& g) {
  json j;
  j["minus"] = g.minus.size();
  j["zero"] = g.zero.size();
  j["plus"] = g.plus.size();
  return j;
}

inline json polynomial_json(const QuadPolynomial& p) {
  json j;
  j["q"] = to_json(p.q);
  j["l"] = to_json(p.l);
  j["c"] = rat_to_string(p.c);
  return j;
}

inline json certificate_json(const SpanCertificate& cert) {
  json j;
  j["witness"] = to_json(cert.witness);
  j["subspace"] = to_json(cert.subspace);
  j["epsilons"] = to_json(Vec(cert.epsilons.begin(), cert.epsilons.end()));
  j["points"] = to_json(cert.points);
  return j;
}

/// Reads classification data out of the input: an explicit derivation
/// matrix wins, otherwise the shipped (h, D_V, D_z) triple is used.
struct ClassificationSource {
  std::optional<BuiltClassified> built;
  std::string failure;  // first failing condition when classification fails
};

inline ClassificationSource classification_source(const CatalogEntry& e, const LieAlgebra& g,
                                                  const PipelineOptions& opt) {
  ClassificationSource src;
  if (opt.derivation) {
    Derivation d(g, *opt.derivation);
    auto outcome = classify_from_derivation(e.data, d);
    if (!outcome.classified) {
      src.failure = outcome.diagnostic;
      return src;
    }
    auto grading = detect_3grading(d);
    if (!grading) {
      src.failure = "derivation does not induce a 3-grading";
      return src;
    }
    src.built = BuiltClassified{std::move(*outcome.classified), std::move(d), std::move(*grading)};
    return src;
  }
  if (!e.has_classified())
    throw ValidationError("no derivation supplied and the input ships no (h, D_V, D_z) data");
  try {
    src.built = build_classified(e.data, g, *e.h, *e.d_v, *e.d_z);
  } catch (const ValidationError& err) {
    src.failure = err.what();
  }
  return src;
}

}  // namespace pipeline_detail

/// Parse, validate and summarize an input algebra.
inline Report cmd_build(const InputSpec& spec, const PipelineOptions& opt = {}) {
  using namespace pipeline_detail;
  Report r;
  Timer timer(r);
  r.pipeline = "build";
  r.input = spec.source;
  (void)opt;

  std::vector<std::string> warnings;
  const LieAlgebra g = build_from_spec(spec, &warnings);
  r.add("input-validates", true);
  r.add_verdict("jacobi-identity", spec.validation == Validation::Full ? "pass" : "inconclusive",
                spec.validation == Validation::Full ? "" : "deferred by flag");

  const auto center_basis = center(g);
  const auto derived = derived_subalgebra(g);
  r.data["dim"] = g.dim();
  r.data["labels"] = g.labels();
  r.data["center"] = to_json(center_basis);
  r.data["center_dim"] = center_basis.size();
  r.data["derived_dim"] = derived.size();
  r.data["solvable"] = is_solvable(g);
  r.data["nilpotent"] = is_nilpotent(g);
  r.data["warnings"] = warnings;

  validate_metadata(g);
  r.add("metadata-validates", true);

  if (spec.entry) {
    r.add("center-matches-closed-form", subspace_equal(center_basis, center_formula(spec.entry->data)));
    r.add("derived-matches-closed-form", subspace_equal(derived, derived_formula(spec.entry->data)));
  }
  return r;
}

/// Derivation algebra basis with the inner/outer dimension split.
inline Report cmd_derivations(const InputSpec& spec, const PipelineOptions& opt = {}) {
  using namespace pipeline_detail;
  Report r;
  Timer timer(r);
  r.pipeline = "derivations";
  r.input = spec.source;
  (void)opt;

  const LieAlgebra g = build_from_spec(spec);
  const auto basis = derivation_algebra(g);
  const int inner = inner_derivation_dim(g);
  r.data["dim_der"] = basis.size();
  r.data["dim_inner"] = inner;
  r.data["dim_outer"] = int(basis.size()) - inner;
  {
    json b = json::array();
    for (const auto& m : basis) b.push_back(to_json(m));
    r.data["basis"] = b;
  }

  bool all_valid = true;
  for (const auto& m : basis) {
    try {
      Derivation d(g, m);
    } catch (const NotADerivationError&) {
      all_valid = false;
    }
  }
  r.add("kernel-elements-are-derivations", all_valid);

  std::vector<Vec> flat;
  for (const auto& m : basis) flat.push_back(m.flatten());
  const Subspace span(flat, g.dim() * g.dim());
  bool inner_contained = true;
  for (int i = 0; i < g.dim(); ++i)
    if (!span.contains(g.ad_basis(i).flatten())) inner_contained = false;
  r.add("inner-derivations-contained", inner_contained);

  if (spec.entry && spec.entry->data.dim_l() == 0 && spec.entry->data.dim_v > 0) {
    bool blocks_ok = true;
    std::string detail;
    try {
      for (const auto& m : basis) decompose_heis_derivation(spec.entry->data, Derivation(g, m));
    } catch (const ValidationError& e) {
      blocks_ok = false;
      detail = e.what();
    }
    r.add("heisenberg-blocks-beta-compatible", blocks_ok, detail);
  }
  return r;
}

/// 3-grading detection plus classification against a Spindler presentation.
inline Report cmd_classify(const InputSpec& spec, const PipelineOptions& opt = {}) {
  using namespace pipeline_detail;
  Report r;
  Timer timer(r);
  r.pipeline = "classify";
  r.input = spec.source;

  const LieAlgebra g = build_from_spec(spec);

  if (!spec.entry) {
    if (!opt.derivation) throw ValidationError("classify on a raw algebra requires --derivation");
    Derivation d(g, *opt.derivation);
    r.add("derivation-valid", true);
    const auto grading = detect_3grading(d);
    r.add("induces-3-grading", bool(grading));
    if (grading) r.data["grading_dims"] = grading_dims(*grading);
    r.data["note"] = "classification into (h, D_V, D_z) requires a spindler input";
    return r;
  }

  const auto src = classification_source(*spec.entry, g, opt);
  if (!src.built) {
    static const char* names[3] = {"condition-1", "condition-2", "condition-3"};
    int failed = 0;
    if (src.failure.find("condition (1)") != std::string::npos) failed = 1;
    if (src.failure.find("condition (2)") != std::string::npos) failed = 2;
    if (src.failure.find("condition (3)") != std::string::npos) failed = 3;
    for (int k = 1; k <= 3; ++k) {
      if (k == failed)
        r.add(names[k - 1], false, src.failure);
      else
        r.add_verdict(names[k - 1], failed == 0 ? "inconclusive" : (k < failed ? "pass" : "inconclusive"),
                      failed == 0 ? src.failure : "");
    }
    r.add("induces-3-grading", false, src.failure);
    return r;
  }

  const BuiltClassified& bc = *src.built;
  r.add("condition-1", true);
  r.add("condition-2", true);
  r.add("condition-3", true);
  r.add("beta-compatible", is_beta_compatible(bc.classified.d_v, bc.classified.d_z, spec.entry->data.beta));
  r.add("induces-3-grading", true);
  r.data["grading_dims"] = grading_dims(bc.grading);
  r.data["h"] = to_json(bc.classified.h);
  r.data["d_v"] = to_json(bc.classified.d_v);
  r.data["d_z"] = to_json(bc.classified.d_z);
  if (spec.entry->tube_type) r.data["tube_type_declared"] = *spec.entry->tube_type;

  const auto round = classify_from_derivation(spec.entry->data, bc.derivation);
  const bool round_ok = round.classified && round.classified->h == bc.classified.h &&
                        round.classified->d_v == bc.classified.d_v &&
                        round.classified->d_z == bc.classified.d_z;
  r.add("round-trip", round_ok, round_ok ? "" : round.diagnostic);
  return r;
}

/// Full span-certification pipeline: build, classify, construct witnesses on
/// both sides, certify, and re-validate the certificates.
inline Report cmd_cone_span(const InputSpec& spec, const PipelineOptions& opt = {}) {
  using namespace pipeline_detail;
  Report r;
  Timer timer(r);
  r.pipeline = "cone-span";
  r.input = spec.source;

  if (!spec.entry) throw ValidationError("cone-span requires a spindler input or catalog entry");
  const CatalogEntry& e = *spec.entry;
  const Vec f = resolve_functional(spec, opt);
  const LieAlgebra g = build_from_spec(spec);

  const ConeQuery query = make_cone_query(e.data, f, e.convex_type_x);
  r.add("symplectic-form", true, "omega is invertible");
  if (query.convex_witness && e.data.dim_v > 0)
    r.add("convex-type-witness",
          check_convex_type(e.data, query.form, *query.convex_witness));

  const auto src = classification_source(e, g, opt);
  if (!src.built) {
    r.add("classification", false, src.failure);
    return r;
  }
  r.add("classification", true);
  r.data["grading_dims"] = grading_dims(src.built->grading);

  for (int side : {1, -1}) {
    const std::string tag = side == 1 ? "plus" : "minus";
    const auto& units = side == 1 ? e.jordan_units_plus : e.jordan_units_minus;
    if (units.empty()) {
      r.add_verdict("span-certified-" + tag, "inconclusive", "no jordan units supplied");
      continue;
    }
    const Vec central = pick_central(query, src.built->classified.d_z, side);
    const Element witness =
        witness_3grading(query, src.built->grading, src.built->classified, side, units, central);
    r.data["witness_polynomial_" + tag] = polynomial_json(cone_polynomial(query, witness.coords));
    try {
      const auto cert = certify_span(query, src.built->grading.side(side), witness.coords,
                                     opt.max_halvings);
      if (!cert) {
        r.add_verdict("span-certified-" + tag, "inconclusive", "epsilon search exhausted");
        continue;
      }
      r.add("span-certified-" + tag, true,
            std::to_string(cert->points.size()) + " cone points re-validated");
      r.data["certificate_" + tag] = certificate_json(*cert);
    } catch (const WitnessNotInConeError& err) {
      r.add("span-certified-" + tag, false, err.what());
    }
  }
  return r;
}

/// No-go scan on a solvable input: hypotheses, the exact u-block cone
/// collapse, and a finite candidate sweep.
inline Report cmd_no_go(const InputSpec& spec, const PipelineOptions& opt = {}) {
  using namespace pipeline_detail;
  Report r;
  Timer timer(r);
  r.pipeline = "no-go";
  r.input = spec.source;

  if (!spec.entry) throw ValidationError("no-go requires a spindler input or catalog entry");
  const CatalogEntry& e = *spec.entry;
  const Vec f = resolve_functional(spec, opt);
  const ConeQuery query = make_cone_query(e.data, f, e.convex_type_x);

  std::vector<Mat> candidates;
  std::string candidate_source;
  if (opt.derivation) {
    candidates.push_back(*opt.derivation);
    candidate_source = "explicit";
  } else if (!spec.derivations.empty()) {
    for (const auto& [name, m] : spec.derivations) candidates.push_back(m);
    candidate_source = "input-file";
  } else {
    const auto basis = derivation_algebra(query.algebra);
    r.data["dim_der"] = basis.size();
    if (basis.size() <= 6) {
      candidates = linear_combinations(
          basis, {Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2)});
      candidate_source = "all combinations of the derivation basis with coefficients in {0, +-1, +-1/2}";
    } else {
      candidates.push_back(Mat(query.algebra.dim(), query.algebra.dim()));
      for (const auto& b : basis)
        for (const Rat& c : {Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2), Rat(2), Rat(-2)})
          candidates.push_back(c * b);
      candidate_source = "basis rescalings (basis too large for full combinations)";
    }
  }
  r.data["candidate_source"] = candidate_source;
  r.data["candidates"] = candidates.size();

  const NoGoReport scan = solvable_no_go_scan(query, candidates);
  r.add("hypothesis-l-abelian", true);
  r.add("hypothesis-solvable", true);
  r.add("hypothesis-center-in-derived", true);
  r.add("u-block-cone-in-center", scan.u_block.holds, scan.u_block.detail);

  json tally = json::object();
  for (const auto& o : scan.outcomes) {
    if (!tally.contains(o)) tally[o] = 0;
    tally[o] = tally[o].get<int>() + 1;
  }
  r.data["outcomes"] = scan.outcomes;
  r.data["outcome_tally"] = tally;
  json survivors = json::array();
  bool all_zero = true;
  for (auto idx : scan.survivors) {
    survivors.push_back(idx);
    if (!candidates[idx].is_zero()) all_zero = false;
  }
  r.data["survivors"] = survivors;
  r.add("survivors-all-zero", all_zero,
        all_zero ? "the zero derivation is the unique survivor" : "nonzero survivor found");
  return r;
}

/// Materialize a catalog entry and run its shipped self-checks.
inline Report cmd_catalog(const std::string& name) {
  using namespace pipeline_detail;
  Report r;
  Timer timer(r);
  r.pipeline = "catalog";
  r.input = "catalog:" + name;

  const CatalogEntry entry = catalog_get(name);
  r.data["name"] = entry.name;
  r.data["dim"] = entry.data.total_dim();
  r.data["dim_v"] = entry.data.dim_v;
  r.data["dim_z"] = entry.data.dim_z;
  r.data["dim_l"] = entry.data.dim_l();
  if (entry.tube_type) r.data["tube_type_declared"] = *entry.tube_type;
  for (const auto& item : catalog_self_check(entry)) r.add(item.name, item.pass, item.detail);
  return r;
}

}  // namespace admlie
