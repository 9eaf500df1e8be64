#include "fusionopt/cli/document.hpp"

#include "fusionopt/discrete.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fusionopt::cli {

namespace {

using json = nlohmann::json;

std::string describe(const std::string& message, const std::string& path, std::size_t line,
                     std::size_t column) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
  if (!path.empty()) out += path + ": ";
  return out + message;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InputError(message, path);
}

double to_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidArgument("not a number: \"" + std::string(text) + "\"");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double scalar_at(const json& node, const std::string& path) {
  double value = 0.0;
  if (node.is_number()) {
    value = node.get<double>();
  } else if (node.is_string()) {
    try {
      value = parse_fraction(node.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  } else {
    fail(path, "expected a number or a fraction string");
  }
  if (!std::isfinite(value)) fail(path, "value is not finite");
  return value;
}

Vector vector_at(const json& node, const std::string& path, std::size_t n) {
  if (!node.is_array()) fail(path, "expected an array of " + std::to_string(n) + " numbers");
  if (node.size() != n) {
    fail(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(node.size()));
  }
  Vector v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = scalar_at(node[k], path + "[" + std::to_string(k) + "]");
  return v;
}

std::vector<MemberSpec> members_at(const json& node, const std::string& path, std::size_t n) {
  if (!node.is_array()) fail(path, "expected an array of subspaces");
  if (node.empty()) fail(path, "at least one subspace is required");
  std::vector<MemberSpec> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string here = path + "[" + std::to_string(i) + "]";
    const json& m = node[i];
    if (!m.is_object()) fail(here, "expected an object with \"weight\" and \"vectors\"");
    MemberSpec spec;
    if (m.contains("weight")) {
      spec.weight = scalar_at(m["weight"], here + ".weight");
      if (!(*spec.weight > 0.0)) fail(here + ".weight", "weight must be positive");
    }
    if (!m.contains("vectors")) fail(here, "missing \"vectors\"");
    const json& vecs = m["vectors"];
    if (!vecs.is_array()) fail(here + ".vectors", "expected an array of vectors");
    for (std::size_t k = 0; k < vecs.size(); ++k)
      spec.vectors.push_back(vector_at(vecs[k], here + ".vectors[" + std::to_string(k) + "]", n));
    for (const auto& [key, _] : m.items()) {
      if (key != "weight" && key != "vectors") fail(here + "." + key, "unknown field");
    }
    out.push_back(std::move(spec));
  }
  return out;
}

FusionFrame frame_from(std::size_t n, const std::vector<MemberSpec>& specs, const Tolerance& tol,
                       const std::vector<MemberSpec>* primal = nullptr) {
  std::vector<FusionMember> members;
  members.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const double fallback = primal ? (*primal)[i].weight.value_or(1.0) : 1.0;
    members.push_back({orthonormal_basis(n, specs[i].vectors, tol), specs[i].weight.value_or(fallback)});
  }
  return FusionFrame(n, std::move(members));
}

nlohmann::ordered_json members_json(const FusionFrame& w) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& m : w.members()) {
    nlohmann::ordered_json item;
    item["weight"] = m.weight;
    auto vecs = nlohmann::ordered_json::array();
    for (const auto& v : m.subspace.basis_vectors()) vecs.push_back(v.raw());
    item["vectors"] = std::move(vecs);
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

InputError::InputError(const std::string& message, std::string field_path, std::size_t line,
                       std::size_t column)
    : Error(describe(message, field_path, line, column)),
      path_(std::move(field_path)),
      line_(line),
      column_(column) {}

double parse_fraction(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return to_double(text);
  const double num = to_double(trim(text.substr(0, slash)));
  const double den = to_double(trim(text.substr(slash + 1)));
  if (den == 0.0) throw InvalidArgument("zero denominator in \"" + std::string(text) + "\"");
  return num / den;
}

FrameSpecDocument parse_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Byte offset → 1-based line and column.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    const auto colon = what.rfind(": ");
    throw InputError("invalid JSON (" + (colon == std::string::npos ? what : what.substr(colon + 2)) + ")",
                     {}, line, column);
  }
  if (!root.is_object()) fail("$", "document must be a JSON object");

  FrameSpecDocument doc;
  if (!root.contains("ambient_dim")) fail("$", "missing \"ambient_dim\"");
  const json& dim = root["ambient_dim"];
  if (!dim.is_number_integer() || dim.get<long long>() <= 0) {
    fail("ambient_dim", "expected a positive integer");
  }
  doc.ambient_dim = dim.get<std::size_t>();

  if (root.contains("field")) {
    if (!root["field"].is_string() || root["field"].get<std::string>() != "real") {
      fail("field", "only \"real\" is supported");
    }
  }
  if (!root.contains("subspaces")) fail("$", "missing \"subspaces\"");
  doc.subspaces = members_at(root["subspaces"], "subspaces", doc.ambient_dim);

  if (root.contains("dual")) {
    doc.dual = members_at(root["dual"], "dual", doc.ambient_dim);
    if (doc.dual->size() != doc.subspaces.size()) {
      fail("dual", "has " + std::to_string(doc.dual->size()) + " members but \"subspaces\" has " +
                       std::to_string(doc.subspaces.size()));
    }
  }
  if (root.contains("basis")) {
    const json& b = root["basis"];
    if (!b.is_array()) fail("basis", "expected an array of vectors");
    std::vector<Vector> basis;
    for (std::size_t k = 0; k < b.size(); ++k)
      basis.push_back(vector_at(b[k], "basis[" + std::to_string(k) + "]", doc.ambient_dim));
    doc.basis = std::move(basis);
  }
  if (root.contains("tolerance")) {
    const json& t = root["tolerance"];
    if (!t.is_object()) fail("tolerance", "expected an object");
    for (const auto& [key, value] : t.items()) {
      const double v = scalar_at(value, "tolerance." + key);
      if (!(v > 0.0)) fail("tolerance." + key, "must be positive");
      if (key == "rank_eps") {
        doc.rank_eps = v;
      } else if (key == "residual_eps") {
        doc.residual_eps = v;
      } else {
        fail("tolerance." + key, "unknown field");
      }
    }
  }
  for (const auto& [key, _] : root.items()) {
    if (key != "ambient_dim" && key != "field" && key != "subspaces" && key != "dual" && key != "basis" &&
        key != "tolerance" && key != "description") {
      fail(key, "unknown field");
    }
  }
  return doc;
}

LoadedDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  LoadedDocument out;
  out.source = path.string();
  out.raw = buf.str();
  out.doc = parse_document(out.raw);
  return out;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

Tolerance resolve_tolerance(const FrameSpecDocument& doc, std::optional<double> cli_tol) {
  if (cli_tol) return Tolerance::uniform(*cli_tol);
  Tolerance tol;
  return Tolerance(doc.rank_eps.value_or(tol.rank_eps), doc.residual_eps.value_or(tol.residual_eps));
}

FusionFrame build_frame(const FrameSpecDocument& doc, const Tolerance& tol) {
  return frame_from(doc.ambient_dim, doc.subspaces, tol);
}

FusionFrame build_dual(const FrameSpecDocument& doc, const Tolerance& tol) {
  if (!doc.dual) throw InputError("document has no \"dual\" section", "dual");
  return frame_from(doc.ambient_dim, *doc.dual, tol, &doc.subspaces);
}

std::vector<Vector> basis_or_standard(const FrameSpecDocument& doc) {
  if (doc.basis) return *doc.basis;
  return standard_basis(doc.ambient_dim);
}

nlohmann::ordered_json document_echo(const FusionFrame& w, const FusionFrame* v,
                                     const std::optional<std::vector<Vector>>& basis) {
  nlohmann::ordered_json doc;
  doc["ambient_dim"] = w.ambient_dim();
  doc["field"] = "real";
  doc["subspaces"] = members_json(w);
  if (v) doc["dual"] = members_json(*v);
  if (basis) {
    auto b = nlohmann::ordered_json::array();
    for (const auto& e : *basis) b.push_back(e.raw());
    doc["basis"] = std::move(b);
  }
  return doc;
}

}  // namespace fusionopt::cli
