#include "fusionopt/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace fusionopt::cli {

namespace {

std::string scalar(const Report& v) {
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_flat_array(const Report& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Report& x) { return x.is_primitive(); });
}

bool is_matrix(const Report& v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Report& x) {
           return x.is_array() && !x.empty() && std::all_of(x.begin(), x.end(),
                                                           [](const Report& y) { return y.is_number(); });
         });
}

std::string inline_array(const Report& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += scalar(v[k]);
  }
  return s + "]";
}

void emit(std::ostringstream& out, const Report& v, int indent);

void emit_matrix(std::ostringstream& out, const Report& v, int indent) {
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 0;
  for (const auto& row : v) {
    auto& r = cells.emplace_back();
    for (const auto& x : row) {
      r.push_back(scalar(x));
      width = std::max(width, r.back().size());
    }
  }
  for (const auto& r : cells) {
    out << std::string(indent, ' ');
    for (const auto& c : r) out << std::string(width - c.size() + 2, ' ') << c;
    out << '\n';
  }
}

void emit_object(std::ostringstream& out, const Report& v, int indent) {
  std::size_t width = 0;
  for (const auto& [key, _] : v.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : v.items()) {
    out << std::string(indent, ' ') << key;
    if (value.is_primitive() || is_flat_array(value)) {
      out << std::string(width - key.size() + 2, ' ')
          << (value.is_array() ? inline_array(value) : scalar(value)) << '\n';
    } else {
      out << '\n';
      emit(out, value, indent + 2);
    }
  }
}

void emit(std::ostringstream& out, const Report& v, int indent) {
  if (v.is_object()) {
    emit_object(out, v, indent);
  } else if (is_matrix(v)) {
    emit_matrix(out, v, indent);
  } else if (v.is_array()) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      const Report& item = v[k];
      if (item.is_primitive() || is_flat_array(item)) {
        out << std::string(indent, ' ') << "- " << (item.is_array() ? inline_array(item) : scalar(item)) << '\n';
      } else {
        out << std::string(indent, ' ') << "- [" << k + 1 << "]\n";
        emit(out, item, indent + 4);
      }
    }
  } else {
    out << std::string(indent, ' ') << scalar(v) << '\n';
  }
}

}  // namespace

std::string render_text(const Report& report) {
  Report shown = report;
  if (shown.is_object()) shown.erase("document");
  std::ostringstream out;
  emit(out, shown, 0);
  return out.str();
}

}  // namespace fusionopt::cli
