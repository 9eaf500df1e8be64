#pragma once

// Sufficient-condition certificates for 1-loss optimal duals, the
// constructive families that preserve optimality, and transport of dual
// pairs under unitary and invertible maps.
//
// Nothing in this header claims global optimality from search: a
// certificate either applies or it does not, and probe search can only
// refute.

#include "fusionopt/discrete.hpp"
#include "fusionopt/duality.hpp"
#include "fusionopt/erasures.hpp"
#include "fusionopt/fusion.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fusionopt {

enum class CertificateKind {
  canonical,      ///< canonical dual; Riesz hypothesis on the Λ₂ side
  dual,           ///< given dual; Riesz hypothesis on the Λ_{1,v} side
  tight_uniform,  ///< tight frame, ω_i²√dim W_i constant, ν_i ≤ ω_i
  riesz_basis,    ///< W is a Riesz fusion basis, so every dual qualifies
};

enum class Verdict { certified_optimal, not_applicable };

/// Which index set the Riesz hypothesis was tested on.
enum class RieszSide { none, lambda1, lambda2 };

std::string_view to_string(CertificateKind kind);
std::string_view to_string(Verdict verdict);
std::string_view to_string(RieszSide side);

struct Certificate {
  CertificateKind kind = CertificateKind::canonical;
  /// max_i of the per-member Frobenius error values.
  double c_value = 0.0;
  std::vector<double> member_values;
  std::vector<std::size_t> lambda1;  ///< argmax members (0-based)
  std::vector<std::size_t> lambda2;  ///< the rest
  std::size_t h1_dim = 0;
  std::size_t h2_dim = 0;
  std::size_t intersection_dim = 0;
  RieszSide riesz_side = RieszSide::none;
  bool lambda_side_riesz = false;
  Verdict verdict = Verdict::not_applicable;
  /// Tight certificate only: α and the guaranteed d₁ bound c/α.
  std::optional<double> tight_bound;
  std::optional<double> d1_bound;
  /// Some W_i differs from the whole space. Reported, never required.
  bool is_nontrivial = true;
  std::vector<std::string> notes;

  bool certified() const { return verdict == Verdict::certified_optimal; }
};

/// Throws NotAFrameError when w does not span.
Certificate certify_canonical_optimal(const FusionFrame& w, const Tolerance& tol = {});

/// Throws NotADualError when the pair fails verify_dual.
Certificate certify_dual_optimal(const DualPair& pair, const Tolerance& tol = {});

/// Never throws on mathematical grounds; failed hypotheses give not_applicable.
Certificate certify_tight_uniform(const FusionFrame& w, const FusionFrame& v, const Tolerance& tol = {});

/// W is a Riesz fusion basis and (V, v) is a dual. Throws NotADualError for a non-dual pair.
Certificate certify_riesz_basis(const DualPair& pair, const Tolerance& tol = {});

enum class VariantKind {
  zero_component,  ///< V_i = (S⁻¹W_i)^⊥, replaced by {0}
  trimmed,         ///< (S⁻¹W_i)^⊥ ⊊ V_i, replaced by S⁻¹W_i ∩ V_i
  extended,        ///< V_i ⊕ span{u}, u ⊥ V_i and u ⊥ S⁻¹W_i
};

std::string_view to_string(VariantKind kind);

struct FamilyVariant {
  VariantKind kind = VariantKind::zero_component;
  std::size_t member = 0;
  FusionFrame family;
  std::optional<Vector> direction;  ///< extended variants only
  bool is_dual = false;
  double duality_residual = 0.0;
  /// Every d_r table (r ≤ max_r, both norms) matches the input pair's.
  bool values_preserved = false;
  double max_value_deviation = 0.0;
};

/// Variants of member i that leave π_{V_i} S⁻¹ π_{W_i} unchanged. Empty when
/// none applies. Value tables are compared for r = 1 … min(max_r, m − 1).
std::vector<FamilyVariant> expand_optimal_family(const DualPair& pair, std::size_t i,
                                                 const Tolerance& tol = {}, std::size_t max_r = 2);

struct ParsevalFamily {
  std::vector<Vector> basis;
  DiscreteFrame frame;
  /// duals[0] is `frame` itself, duals[1] is {π_{V_i} e_j}.
  std::vector<DiscreteFrame> duals;
  double parseval_residual = 0.0;  ///< ‖S_F − I‖_F
  std::vector<double> dual_residuals;
  std::vector<double> d1_operator;  ///< d₁ of each dual, operator norm
};

/// Basis used when none is supplied: per member, the first coordinate vector
/// with a nonzero projection onto S^{-1/2}W_i, projected and normalized; then
/// completed against e_1, e_2, … in index order.
std::vector<Vector> parseval_family_basis(const FusionFrame& w, const Tolerance& tol = {});

/// Requires a Riesz fusion basis with unit weights and S^{-1/2}W_i ⊆ V_i.
/// Throws PreconditionError naming the violated hypothesis.
ParsevalFamily parseval_optimal_family(const FusionFrame& w, const std::vector<Subspace>& extensions,
                                       const Tolerance& tol = {},
                                       std::optional<std::vector<Vector>> basis = std::nullopt);

struct BlockErrorComparison {
  std::size_t member = 0;
  double perturbed = 0.0;  ///< ‖Σ_{k∈Λ_i} g_k f_kᵀ‖_F for G = S_F⁻¹F + u
  double canonical = 0.0;  ///< same with G = S_F⁻¹F
};

/// Block-erasure errors of a perturbed dual of the bridged frame
/// F = {ω_i π_{W_i} S_W⁻¹ e_j} against the canonical dual, one entry per member.
/// Throws PreconditionError when W is not a Riesz fusion basis or u is not admissible.
std::vector<BlockErrorComparison> riesz_bridge_partial_optimal(const FusionFrame& w,
                                                               std::span<const Vector> basis,
                                                               const DualPerturbation& u,
                                                               const Tolerance& tol = {});

/// (uW, uV). Throws PreconditionError when uᵀu ≠ I.
DualPair transport_by_unitary(const DualPair& pair, const Matrix& u, const Tolerance& tol = {});

struct InvarianceFailure {
  std::size_t member = 0;
  bool primal = true;  ///< false: the dual subspace V_i failed
};

/// Members i where uᵀu W_i ⊄ W_i or uᵀu V_i ⊄ V_i.
std::vector<InvarianceFailure> invariance_failures(const DualPair& pair, const Matrix& u,
                                                   const Tolerance& tol = {});

/// (uW, uV) for invertible u with uᵀu W_i ⊆ W_i and uᵀu V_i ⊆ V_i.
/// Throws PreconditionError listing every failing member.
DualPair transport_by_invertible(const DualPair& pair, const Matrix& u, const Tolerance& tol = {});

enum class ProbeKind { extension, expansion_variant, lift, weight_reallocation };

std::string_view to_string(ProbeKind kind);

struct Probe {
  ProbeKind kind = ProbeKind::extension;
  FusionFrame dual;
};

/// Random duals of w built around the canonical one: enlarged subspaces
/// V_i ⊇ S⁻¹W_i, expansion variants, component-preserving lifts, and weight
/// reallocations ω_iν_i = ω_i² + c_i with Σ c_i π_{W_i} = 0. Every returned
/// probe passes verify_dual. Deterministic for a given seed.
std::vector<Probe> probe_duals(const FusionFrame& w, std::size_t count, std::uint64_t seed,
                               const Tolerance& tol = {});

struct Refutation {
  std::size_t probes_evaluated = 0;
  double canonical_value = 0.0;
  double best_value = 0.0;
  /// A probe beat the canonical dual by more than the slack.
  bool refuted = false;
  std::optional<Probe> witness;
};

/// Searches the probe family for a dual with strictly smaller d_r than the
/// canonical one. A negative result is inconclusive.
Refutation refute_by_probes(const FusionFrame& w, std::size_t count, std::uint64_t seed,
                            std::size_t r = 1, NormKind norm = NormKind::frobenius,
                            const Tolerance& tol = {}, double slack = 1e-9);

}  // namespace fusionopt
