#pragma once

#include "fusionopt/cli/document.hpp"
#include "fusionopt/erasures.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fusionopt::cli {

/// Machine-readable report; key order is insertion order.
using Report = nlohmann::ordered_json;

struct ErasureRequest {
  std::optional<std::size_t> r;
  NormKind norm = NormKind::frobenius;
  std::vector<std::size_t> fixed;  ///< 1-based; non-empty selects fixed mode
  bool bridge = false;             ///< analyse the bridged discrete frame
};

enum class CertifyWhich { canonical, dual, tight };

struct CertifyRequest {
  CertifyWhich which = CertifyWhich::canonical;
  std::size_t probes = 0;  ///< probe duals for refutation; 0 disables
  std::uint64_t seed = 1;
};

enum class ConstructWhat { parseval_family, expand, bridge };

struct ConstructRequest {
  ConstructWhat what = ConstructWhat::bridge;
  std::optional<std::size_t> index;  ///< 1-based member for expand
};

Report cmd_classify(const LoadedDocument& in, const Tolerance& tol);
Report cmd_verify_dual(const LoadedDocument& in, const Tolerance& tol);
Report cmd_erasure(const LoadedDocument& in, const ErasureRequest& req, const Tolerance& tol);
Report cmd_certify(const LoadedDocument& in, const CertifyRequest& req, const Tolerance& tol);
Report cmd_construct(const LoadedDocument& in, const ConstructRequest& req, const Tolerance& tol);

/// Aligned plain text; numbers at 12 significant digits. The document echo
/// is left to the JSON rendering.
std::string render_text(const Report& report);

/// Full command line entry point. Returns the process exit code: 0 when
/// the analysis ran (whatever its verdict), 2 for input or usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fusionopt::cli
