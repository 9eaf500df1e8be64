#pragma once

#include "fusionopt/discrete.hpp"
#include "fusionopt/duality.hpp"
#include "fusionopt/linalg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fusionopt {

enum class NormKind { frobenius, operator_norm };

std::string_view to_string(NormKind kind);
/// Accepts "frobenius" and "operator"; nullopt otherwise.
std::optional<NormKind> parse_norm_kind(std::string_view text);

double matrix_norm(const Matrix& a, NormKind kind, const Tolerance& tol = {});

/// Largest number of subsets an exhaustive worst-case search will visit.
inline constexpr std::uint64_t kEnumerationCap = 1'000'000;

/// Relative gap inside which two erasure values count as tied for the max.
inline constexpr double kRelativeTieTolerance = 1e-12;

/// A set of erased indices out of `total`.
class ErasureMask {
 public:
  /// Throws IndexError for out-of-range or repeated indices.
  ErasureMask(std::size_t total, std::vector<std::size_t> erased);

  std::size_t total() const { return total_; }
  const std::vector<std::size_t>& erased() const { return erased_; }
  std::size_t size() const { return erased_.size(); }
  bool contains(std::size_t k) const;

  /// Λ_i = {(i, j) : j} on a bridged frame.
  static ErasureMask member_block(const DiscreteFrame& bridged, std::size_t member);

 private:
  std::size_t total_;
  std::vector<std::size_t> erased_;  // sorted ascending
};

struct SubsetValue {
  std::vector<std::size_t> subset;
  double value = 0.0;
};

struct ErasureReport {
  std::size_t r = 0;
  NormKind norm_kind = NormKind::frobenius;
  double worst_value = 0.0;
  /// Every subset within kRelativeTieTolerance of the max, lexicographic.
  std::vector<std::vector<std::size_t>> argmax_subsets;
  /// Filled when requested; lexicographic order.
  std::vector<SubsetValue> per_subset_values;
};

/// C(m, r), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t m, std::size_t r);

/// Visits every r-subset of {0, …, m−1} in lexicographic order.
void for_each_subset(std::size_t m, std::size_t r,
                     const std::function<void(std::span<const std::size_t>)>& visit);

/// Σ_{i∈J} ω_i ν_i π_{V_i} S_W⁻¹ π_{W_i}.
Matrix fusion_error_operator(const DualPair& pair, const ErasureMask& mask);

/// max over |J| = r of ‖fusion_error_operator(J)‖. Requires 1 ≤ r < m and
/// C(m, r) ≤ kEnumerationCap.
ErasureReport worst_case_error(const DualPair& pair, std::size_t r, NormKind norm,
                               const Tolerance& tol = {}, bool keep_table = false);

/// Σ_{k∈Λ} g_k f_kᵀ.
Matrix discrete_error_operator(const DiscreteFrame& f, const DiscreteFrame& g, const ErasureMask& mask);

/// d_r(F, G) by exhaustive enumeration.
ErasureReport discrete_worst_case(const DiscreteFrame& f, const DiscreteFrame& g, std::size_t r,
                                  NormKind norm, const Tolerance& tol = {}, bool keep_table = false);

/// Error norm for one known erasure set.
double partial_erasure_error(const DiscreteFrame& f, const DiscreteFrame& g, const ErasureMask& mask,
                             NormKind norm, const Tolerance& tol = {});
double partial_erasure_error(const DualPair& pair, const ErasureMask& mask, NormKind norm,
                             const Tolerance& tol = {});

/// Worst case over r-subsets of arbitrary component operators; the shared
/// engine behind the fusion and discrete variants.
ErasureReport worst_over_subsets(std::span<const Matrix> components, std::size_t r, NormKind norm,
                                 const Tolerance& tol = {}, bool keep_table = false);

}  // namespace fusionopt
