#include "fusionopt/erasures.hpp"

#include "fusionopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fusionopt {

std::string_view to_string(NormKind kind) {
  return kind == NormKind::frobenius ? "frobenius" : "operator";
}

std::optional<NormKind> parse_norm_kind(std::string_view text) {
  if (text == "frobenius") return NormKind::frobenius;
  if (text == "operator") return NormKind::operator_norm;
  return std::nullopt;
}

double matrix_norm(const Matrix& a, NormKind kind, const Tolerance& tol) {
  return kind == NormKind::frobenius ? frobenius_norm(a) : operator_norm(a, tol);
}

ErasureMask::ErasureMask(std::size_t total, std::vector<std::size_t> erased)
    : total_(total), erased_(std::move(erased)) {
  std::sort(erased_.begin(), erased_.end());
  if (std::adjacent_find(erased_.begin(), erased_.end()) != erased_.end()) {
    throw IndexError("erasure mask: repeated index");
  }
  if (!erased_.empty() && erased_.back() >= total_) {
    throw IndexError("erasure mask: index " + std::to_string(erased_.back()) + " out of range for " +
                     std::to_string(total_) + " elements");
  }
}

bool ErasureMask::contains(std::size_t k) const {
  return std::binary_search(erased_.begin(), erased_.end(), k);
}

ErasureMask ErasureMask::member_block(const DiscreteFrame& bridged, std::size_t member) {
  if (!bridged.labels()) throw PreconditionError("member_block: frame carries no bridge labels");
  std::vector<std::size_t> idx;
  const auto& labels = *bridged.labels();
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k].member == member) idx.push_back(k);
  return ErasureMask(bridged.size(), std::move(idx));
}

std::uint64_t binomial(std::size_t m, std::size_t r) {
  if (r > m) return 0;
  r = std::min(r, m - r);
  constexpr std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    const std::uint64_t factor = m - r + k;
    if (acc > top / factor) return top;
    acc = acc * factor / k;
  }
  return acc;
}

void for_each_subset(std::size_t m, std::size_t r,
                     const std::function<void(std::span<const std::size_t>)>& visit) {
  if (r > m) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    visit(idx);
    // Advance to the next combination in lexicographic order.
    std::size_t pos = r;
    while (pos > 0 && idx[pos - 1] == m - r + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t k = pos; k < r; ++k) idx[k] = idx[k - 1] + 1;
  }
}

ErasureReport worst_over_subsets(std::span<const Matrix> components, std::size_t r, NormKind norm,
                                 const Tolerance& tol, bool keep_table) {
  const std::size_t m = components.size();
  if (r < 1 || r >= m) {
    throw IndexError("erasure size r = " + std::to_string(r) + " must satisfy 1 ≤ r < " +
                     std::to_string(m));
  }
  const std::uint64_t count = binomial(m, r);
  if (count > kEnumerationCap) {
    throw EnumerationLimitError("refusing to enumerate C(" + std::to_string(m) + ", " +
                                std::to_string(r) + ") = " + std::to_string(count) +
                                " subsets (cap " + std::to_string(kEnumerationCap) + ")");
  }

  const std::size_t rows = components.front().rows();
  const std::size_t cols = components.front().cols();
  std::vector<double> values;
  values.reserve(count);
  double worst = 0.0;
  for_each_subset(m, r, [&](std::span<const std::size_t> subset) {
    Matrix sum(rows, cols);
    for (std::size_t k : subset) sum += components[k];
    const double v = matrix_norm(sum, norm, tol);
    worst = std::max(worst, v);
    values.push_back(v);
  });

  ErasureReport report;
  report.r = r;
  report.norm_kind = norm;
  report.worst_value = worst;
  std::size_t pos = 0;
  for_each_subset(m, r, [&](std::span<const std::size_t> subset) {
    const double v = values[pos++];
    std::vector<std::size_t> s(subset.begin(), subset.end());
    if (worst - v <= kRelativeTieTolerance * worst) report.argmax_subsets.push_back(s);
    if (keep_table) report.per_subset_values.push_back({std::move(s), v});
  });
  return report;
}

Matrix fusion_error_operator(const DualPair& pair, const ErasureMask& mask) {
  if (mask.total() != pair.size()) {
    throw IndexError("fusion_error_operator: mask is over " + std::to_string(mask.total()) +
                     " members, pair has " + std::to_string(pair.size()));
  }
  Matrix sum(pair.ambient_dim(), pair.ambient_dim());
  for (std::size_t i : mask.erased()) sum += pair.component(i);
  return sum;
}

ErasureReport worst_case_error(const DualPair& pair, std::size_t r, NormKind norm, const Tolerance& tol,
                               bool keep_table) {
  return worst_over_subsets(pair.components(), r, norm, tol, keep_table);
}

namespace {

std::vector<Matrix> rank_one_components(const DiscreteFrame& f, const DiscreteFrame& g) {
  if (f.size() != g.size() || f.ambient_dim() != g.ambient_dim()) {
    throw DimensionError("discrete erasure: frames differ in length or ambient dimension");
  }
  std::vector<Matrix> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out.push_back(outer(g[k], f[k]));
  return out;
}

}  // namespace

Matrix discrete_error_operator(const DiscreteFrame& f, const DiscreteFrame& g, const ErasureMask& mask) {
  if (f.size() != g.size() || f.ambient_dim() != g.ambient_dim()) {
    throw DimensionError("discrete_error_operator: frames differ in length or ambient dimension");
  }
  if (mask.total() != f.size()) throw IndexError("discrete_error_operator: mask length mismatch");
  Matrix sum(f.ambient_dim(), f.ambient_dim());
  for (std::size_t k : mask.erased()) sum += outer(g[k], f[k]);
  return sum;
}

ErasureReport discrete_worst_case(const DiscreteFrame& f, const DiscreteFrame& g, std::size_t r,
                                  NormKind norm, const Tolerance& tol, bool keep_table) {
  const auto components = rank_one_components(f, g);
  return worst_over_subsets(components, r, norm, tol, keep_table);
}

double partial_erasure_error(const DiscreteFrame& f, const DiscreteFrame& g, const ErasureMask& mask,
                             NormKind norm, const Tolerance& tol) {
  return matrix_norm(discrete_error_operator(f, g, mask), norm, tol);
}

double partial_erasure_error(const DualPair& pair, const ErasureMask& mask, NormKind norm,
                             const Tolerance& tol) {
  return matrix_norm(fusion_error_operator(pair, mask), norm, tol);
}

}  // namespace fusionopt
