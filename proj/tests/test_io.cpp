#include "admlie/io.hpp"

#include <gtest/gtest.h>

#include "admlie/pipelines.hpp"

using namespace admlie;
using nlohmann::json;

namespace {

json sl2_doc() {
  return json::parse(R"({
    "schema": "admlie-input/1",
    "algebra": {
      "dim": 3,
      "labels": ["H", "E", "F"],
      "structure": [
        {"i": 0, "j": 1, "k": 1, "c": "2"},
        {"i": 0, "j": 2, "k": 2, "c": "-2"},
        {"i": 1, "j": 2, "k": 0, "c": "1"}
      ]
    }
  })");
}

json oscillator_doc() {
  return json::parse(R"({
    "spindler": {
      "l": {"dim": 1, "labels": ["U"]},
      "dim_v": 2,
      "dim_z": 1,
      "rho": [[["0", "1"], ["-1", "0"]]],
      "beta": [{"p": 0, "q": 1, "z": ["1"]}]
    },
    "functionals": {"f": ["1"]},
    "witnesses": {"convex_type_x": ["1"], "torus": [["1"]]}
  })");
}

}  // namespace

TEST(Io, ParsesStructureConstantAlgebra) {
  const InputSpec spec = parse_input(sl2_doc(), "test");
  ASSERT_TRUE(spec.algebra);
  EXPECT_EQ(spec.algebra->dim(), 3);
  EXPECT_EQ(spec.algebra->labels()[0], "H");
  EXPECT_EQ(spec.algebra->bracket_coords(spec.algebra->unit(0), spec.algebra->unit(1)),
            scaled(spec.algebra->unit(1), 2));
}

TEST(Io, MirroredEntriesAllowed) {
  json doc = sl2_doc();
  doc["algebra"]["structure"].push_back({{"i", 1}, {"j", 0}, {"k", 1}, {"c", "-2"}});
  EXPECT_NO_THROW(parse_input(doc, "test"));
}

TEST(Io, AntisymmetryViolationNamesTriple) {
  json doc = sl2_doc();
  doc["algebra"]["structure"].push_back({{"i", 1}, {"j", 0}, {"k", 1}, {"c", "2"}});
  try {
    parse_input(doc, "test");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("antisymmetry"), std::string::npos);
    EXPECT_NE(msg.find("(0, 1, 1)"), std::string::npos);
  }
}

TEST(Io, DiagonalEntryViolatesAntisymmetry) {
  json doc = sl2_doc();
  doc["algebra"]["structure"].push_back({{"i", 2}, {"j", 2}, {"k", 0}, {"c", "1"}});
  EXPECT_THROW(parse_input(doc, "test"), ValidationError);
}

TEST(Io, UnknownFieldsRejected) {
  json doc = sl2_doc();
  doc["extra"] = 1;
  EXPECT_THROW(parse_input(doc, "test"), ParseError);
  doc = sl2_doc();
  doc["algebra"]["typo"] = 1;
  EXPECT_THROW(parse_input(doc, "test"), ParseError);
  doc = oscillator_doc();
  doc["witnesses"]["mystery"] = 1;
  EXPECT_THROW(parse_input(doc, "test"), ParseError);
}

TEST(Io, ExactlyOneAlgebraKind) {
  json doc = sl2_doc();
  doc["spindler"] = oscillator_doc()["spindler"];
  EXPECT_THROW(parse_input(doc, "test"), ParseError);
  EXPECT_THROW(parse_input(json::object(), "test"), ParseError);
}

TEST(Io, BadRationalsAndShapes) {
  json doc = sl2_doc();
  doc["algebra"]["structure"][0]["c"] = "2.5";
  EXPECT_THROW(parse_input(doc, "test"), ParseError);
  doc = oscillator_doc();
  doc["spindler"]["rho"][0] = json::array({json::array({"1"})});
  EXPECT_THROW(parse_input(doc, "test"), Error);
  doc = sl2_doc();
  doc["schema"] = "something-else";
  EXPECT_THROW(parse_input(doc, "test"), ParseError);
}

TEST(Io, ParsesSpindlerInput) {
  const InputSpec spec = parse_input(oscillator_doc(), "test");
  ASSERT_TRUE(spec.entry);
  EXPECT_EQ(spec.entry->data.total_dim(), 4);
  ASSERT_TRUE(spec.entry->f);
  EXPECT_EQ(*spec.entry->f, Vec{Rat(1)});
  ASSERT_TRUE(spec.entry->convex_type_x);
  const Report r = cmd_build(spec);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.data.at("dim"), 4);
  EXPECT_EQ(r.data.at("solvable"), true);
}

TEST(Io, MetadataParsedAndValidated) {
  json doc = oscillator_doc();
  doc["spindler"]["l"]["metadata"] = {{"center", {{"1"}}}};
  const InputSpec spec = parse_input(doc, "test");
  EXPECT_NO_THROW(validate_metadata(spec.entry->data.l));
}

TEST(Io, CatalogPseudoPaths) {
  const InputSpec spec = load_input("catalog:jacobi(1)");
  ASSERT_TRUE(spec.entry);
  EXPECT_EQ(spec.entry->data.total_dim(), 6);
  EXPECT_THROW(load_input("catalog:bogus"), UnknownNameError);
}

TEST(Io, RationalLists) {
  EXPECT_EQ(parse_rational_list("1,1"), (Vec{Rat(1), Rat(1)}));
  EXPECT_EQ(parse_rational_list("1/2 -3, 4"), (Vec{Rat(1, 2), Rat(-3), Rat(4)}));
  EXPECT_THROW(parse_rational_list("x"), ParseError);
}

TEST(Pipelines, BuildReportShape) {
  const Report r = cmd_build(load_input("catalog:heis(1)"));
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.data.at("center_dim"), 1);
  EXPECT_EQ(r.data.at("nilpotent"), true);
  const json j = report_to_json(r);
  EXPECT_EQ(j.at("schema"), kReportSchema);
  EXPECT_EQ(j.at("pipeline"), "build");
}

TEST(Pipelines, ClassifyShippedAndNegative) {
  const Report good = cmd_classify(load_input("catalog:jacobi(1)"));
  EXPECT_TRUE(good.all_pass());
  EXPECT_EQ(good.data.at("grading_dims").at("plus"), 3);

  PipelineOptions opt;
  Mat conformal(6, 6);
  conformal.at(0, 0) = conformal.at(1, 1) = 1;
  conformal.at(2, 2) = 2;
  opt.derivation = conformal;
  const Report bad = cmd_classify(load_input("catalog:jacobi(1)"), opt);
  EXPECT_FALSE(bad.all_pass());
}

TEST(Pipelines, ConeSpanOnJacobi) {
  const Report r = cmd_cone_span(load_input("catalog:jacobi(1)"));
  EXPECT_TRUE(r.all_pass());
  const json poly = r.data.at("witness_polynomial_plus");
  EXPECT_EQ(poly.at("c"), "1");
  EXPECT_EQ(poly.at("q")[0][0], "1");
  EXPECT_EQ(poly.at("q")[1][1], "0");
  EXPECT_TRUE(r.data.contains("certificate_plus"));
  EXPECT_TRUE(r.data.contains("certificate_minus"));
}

TEST(Pipelines, NoGoOnOscillator) {
  const Report r = cmd_no_go(load_input("catalog:oscillator"));
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.data.at("survivors").size(), 1u);
  EXPECT_EQ(r.data.at("outcome_tally").at("survivor"), 1);
}

TEST(Pipelines, CatalogCommand) {
  const Report r = cmd_catalog("jacobi(1)");
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.data.at("dim"), 6);
}

TEST(Pipelines, FunctionalOverride) {
  PipelineOptions opt;
  opt.functional = Vec{Rat(2)};
  const Report r = cmd_cone_span(load_input("catalog:jacobi(1)"), opt);
  EXPECT_TRUE(r.all_pass());
}

TEST(Pipelines, MissingFunctionalIsValidationError) {
  InputSpec spec = load_input("catalog:jacobi(1)");
  spec.entry->f.reset();
  EXPECT_THROW(cmd_cone_span(spec), ValidationError);
}
