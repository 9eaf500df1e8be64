#pragma once

// Frame specification documents: a small JSON format describing a fusion
// frame, optionally a candidate dual, a discrete basis and tolerance
// overrides. Scalars are JSON numbers or exact fractions written as strings
// ("5/7", "-1/2").

#include "fusionopt/error.hpp"
#include "fusionopt/fusion.hpp"
#include "fusionopt/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fusionopt::cli {

/// Malformed input. Carries either a source location (JSON syntax) or a
/// field path (schema violations); the message already includes both.
class InputError : public Error {
 public:
  InputError(const std::string& message, std::string field_path = {}, std::size_t line = 0,
             std::size_t column = 0);

  const std::string& field_path() const { return path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

struct MemberSpec {
  /// Absent: 1 for the frame, the matching frame weight for the dual.
  std::optional<double> weight;
  std::vector<Vector> vectors;
};

struct FrameSpecDocument {
  std::size_t ambient_dim = 0;
  std::vector<MemberSpec> subspaces;
  std::optional<std::vector<MemberSpec>> dual;
  std::optional<std::vector<Vector>> basis;
  std::optional<double> rank_eps;
  std::optional<double> residual_eps;
};

struct LoadedDocument {
  std::string source;  ///< file name as given
  std::string raw;     ///< exact bytes read
  FrameSpecDocument doc;
};

/// "5/7" → 0.714…, "2" → 2, "1e-3" → 0.001.
double parse_fraction(std::string_view text);

FrameSpecDocument parse_document(std::string_view text);
LoadedDocument load_document(const std::filesystem::path& path);

/// 64-bit FNV-1a over the raw bytes, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

/// Tolerance from the document overrides, replaced wholesale by `cli_tol`.
Tolerance resolve_tolerance(const FrameSpecDocument& doc, std::optional<double> cli_tol);

FusionFrame build_frame(const FrameSpecDocument& doc, const Tolerance& tol);
/// Throws InputError when the document has no dual section.
FusionFrame build_dual(const FrameSpecDocument& doc, const Tolerance& tol);
/// The document basis, or the standard basis.
std::vector<Vector> basis_or_standard(const FrameSpecDocument& doc);

/// Re-parseable document for a frame (and dual): subspaces given by their
/// orthonormal bases.
nlohmann::ordered_json document_echo(const FusionFrame& w, const FusionFrame* v,
                                     const std::optional<std::vector<Vector>>& basis);

}  // namespace fusionopt::cli
