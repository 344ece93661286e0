// Batch front end: parse inputs, run verification pipelines, emit
// deterministic machine-readable reports.
//
// Exit codes: 0 all checks pass, 1 at least one check failed or was
// inconclusive, 2 validation error, 3 parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "admlie/io.hpp"
#include "admlie/pipelines.hpp"
#include "admlie/report.hpp"

namespace {

struct CommonArgs {
  std::string input;
  std::string functional;
  std::string derivation;
  std::string report_path;
  int max_halvings = 40;
  bool defer_jacobi = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_input = true) {
  auto* in = cmd->add_option("--input", args.input, "input file path or catalog:<name>");
  if (needs_input) in->required();
  cmd->add_option("--functional", args.functional,
                  "functional f on z as comma-separated rationals, e.g. \"1,1\"");
  cmd->add_option("--derivation", args.derivation, "JSON file with a derivation matrix");
  cmd->add_option("--max-halvings", args.max_halvings, "epsilon search budget per direction");
  cmd->add_option("--report", args.report_path, "also write the report to this file");
  cmd->add_flag("--defer-jacobi-check", args.defer_jacobi,
                "skip construction-time Jacobi validation (oracle paths only)");
}

int emit(const admlie::Report& report, const CommonArgs& args) {
  const std::string text = admlie::render_report(report);
  std::cout << text;
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path);
    if (!out) {
      std::cerr << "error: cannot write report to '" << args.report_path << "'\n";
      return 2;
    }
    out << text;
  }
  return admlie::report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification pipelines for Lie algebras with invariant cones"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string catalog_name;

  auto* build = app.add_subcommand("build", "parse, validate and summarize an algebra");
  add_common(build, args);
  auto* derivations = app.add_subcommand("derivations", "derivation algebra and inner/outer split");
  add_common(derivations, args);
  auto* classify = app.add_subcommand("classify", "3-grading detection and classification");
  add_common(classify, args);
  auto* cone_span = app.add_subcommand("cone-span", "span certificates for both grading sides");
  add_common(cone_span, args);
  auto* no_go = app.add_subcommand("no-go", "solvable no-go scan over candidate derivations");
  add_common(no_go, args);
  auto* catalog = app.add_subcommand("catalog", "materialize a catalog entry and self-check it");
  catalog->add_option("name", catalog_name, "catalog entry name, e.g. jacobi(1)")->required();
  catalog->add_option("--report", args.report_path, "also write the report to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    admlie::PipelineOptions options;
    options.max_halvings = args.max_halvings;
    if (!args.functional.empty()) options.functional = admlie::parse_rational_list(args.functional);
    if (!args.derivation.empty()) options.derivation = admlie::load_derivation_matrix(args.derivation);

    if (catalog->parsed()) return emit(admlie::cmd_catalog(catalog_name), args);

    const auto validation =
        args.defer_jacobi ? admlie::Validation::DeferJacobi : admlie::Validation::Full;
    const admlie::InputSpec spec = admlie::load_input(args.input, validation);

    if (build->parsed()) return emit(admlie::cmd_build(spec, options), args);
    if (derivations->parsed()) return emit(admlie::cmd_derivations(spec, options), args);
    if (classify->parsed()) return emit(admlie::cmd_classify(spec, options), args);
    if (cone_span->parsed()) return emit(admlie::cmd_cone_span(spec, options), args);
    if (no_go->parsed()) return emit(admlie::cmd_no_go(spec, options), args);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const admlie::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const admlie::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
