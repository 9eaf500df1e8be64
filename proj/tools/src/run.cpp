#include "fusionopt/cli/commands.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <string>
#include <typeinfo>

namespace fusionopt::cli {

namespace {

std::string error_kind(const Error& e) {
  if (dynamic_cast<const InputError*>(&e)) return "input_error";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension_error";
  if (dynamic_cast<const IndexError*>(&e)) return "index_error";
  if (dynamic_cast<const EnumerationLimitError*>(&e)) return "enumeration_refused";
  if (dynamic_cast<const NotAFrameError*>(&e)) return "not_a_frame";
  if (dynamic_cast<const NotADualError*>(&e)) return "not_a_dual";
  if (dynamic_cast<const PreconditionError*>(&e)) return "hypothesis_violated";
  if (dynamic_cast<const SingularMatrixError*>(&e)) return "singular_matrix";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid_argument";
  return "error";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual fusion frame analysis: duality, erasure errors, optimality certificates."};
  app.name("fusionopt");
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol_value;
  bool json = false;
  app.add_option("--tol", tol_value, "Override both rank and residual tolerances")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "Emit the machine-readable JSON report");

  std::string file;
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "Frame specification document (JSON)")->required();
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify the fusion frame and report its bounds");
  add_file(classify_cmd);

  auto* verify_cmd = app.add_subcommand("verify-dual", "Check the document's dual against the frame");
  add_file(verify_cmd);

  ErasureRequest erasure_req;
  std::size_t r_value = 0;
  std::string norm_text = "frobenius";
  auto* erasure_cmd = app.add_subcommand("erasure", "Erasure error tables and worst cases");
  add_file(erasure_cmd);
  auto* r_opt = erasure_cmd->add_option("--r", r_value, "Number of erased members")->check(CLI::PositiveNumber);
  erasure_cmd->add_option("--norm", norm_text, "frobenius or operator")
      ->check(CLI::IsMember({"frobenius", "operator"}));
  erasure_cmd->add_option("--fixed", erasure_req.fixed, "Known erased indices, 1-based, comma separated")
      ->delimiter(',');
  erasure_cmd->add_flag("--bridge", erasure_req.bridge, "Analyse the bridged discrete frame");

  CertifyRequest certify_req;
  std::string which = "canonical";
  auto* certify_cmd = app.add_subcommand("certify", "Sufficient-condition optimality certificates");
  add_file(certify_cmd);
  certify_cmd->add_option("--which", which, "canonical, dual or tight")
      ->check(CLI::IsMember({"canonical", "dual", "tight"}));
  certify_cmd->add_option("--probes", certify_req.probes, "Random probe duals tried against the canonical dual");
  certify_cmd->add_option("--seed", certify_req.seed, "Probe seed");

  ConstructRequest construct_req;
  std::string what = "bridge";
  std::size_t index_value = 0;
  auto* construct_cmd = app.add_subcommand("construct", "Constructive dual families");
  add_file(construct_cmd);
  construct_cmd->add_option("--what", what, "parseval-family, expand or bridge")
      ->required()
      ->check(CLI::IsMember({"parseval-family", "expand", "bridge"}));
  auto* index_opt = construct_cmd->add_option("--index", index_value, "Member index for expand, 1-based");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const LoadedDocument in = load_document(file);
    const Tolerance tol = resolve_tolerance(in.doc, tol_value);
    Report report;
    if (*classify_cmd) {
      report = cmd_classify(in, tol);
    } else if (*verify_cmd) {
      report = cmd_verify_dual(in, tol);
    } else if (*erasure_cmd) {
      if (*r_opt) erasure_req.r = r_value;
      erasure_req.norm = *parse_norm_kind(norm_text);
      report = cmd_erasure(in, erasure_req, tol);
    } else if (*certify_cmd) {
      certify_req.which = which == "dual"    ? CertifyWhich::dual
                          : which == "tight" ? CertifyWhich::tight
                                             : CertifyWhich::canonical;
      report = cmd_certify(in, certify_req, tol);
    } else {
      construct_req.what = what == "parseval-family" ? ConstructWhat::parseval_family
                           : what == "expand"        ? ConstructWhat::expand
                                                     : ConstructWhat::bridge;
      if (*index_opt) construct_req.index = index_value;
      report = cmd_construct(in, construct_req, tol);
    }
    out << (json ? report.dump(2) + "\n" : render_text(report));
    return 0;
  } catch (const Error& e) {
    if (json) {
      Report body;
      body["error"]["kind"] = error_kind(e);
      body["error"]["message"] = e.what();
      if (const auto* ie = dynamic_cast<const InputError*>(&e)) {
        if (!ie->field_path().empty()) body["error"]["field"] = ie->field_path();
        if (ie->line() > 0) {
          body["error"]["line"] = ie->line();
          body["error"]["column"] = ie->column();
        }
      }
      out << body.dump(2) << "\n";
    }
    err << "fusionopt: " << error_kind(e) << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fusionopt::cli
