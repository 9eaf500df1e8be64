#pragma once

#include "fusionopt/fusion.hpp"
#include "fusionopt/linalg.hpp"

#include <vector>

namespace fusionopt {

/// A fusion frame (W, w) together with a candidate dual family (V, v).
///
/// The candidate need not be a fusion frame itself (zero members are
/// allowed); `verify_dual` is the only authority on duality. S_W⁻¹ and the
/// duality residual are computed once at construction.
class DualPair {
 public:
  /// Throws NotAFrameError when W does not span, DimensionError when the
  /// families disagree on member count or ambient dimension.
  DualPair(FusionFrame primal, FusionFrame dual_candidate, const Tolerance& tol = {});

  /// Pair with the canonical dual {(S_W⁻¹ W_i, ω_i)}.
  static DualPair canonical(const FusionFrame& primal, const Tolerance& tol = {});

  const FusionFrame& primal() const { return primal_; }
  const FusionFrame& dual_candidate() const { return dual_; }
  std::size_t size() const { return primal_.size(); }
  std::size_t ambient_dim() const { return primal_.ambient_dim(); }

  const Matrix& frame_operator_inverse() const { return s_inv_; }
  /// ω_i ν_i π_{V_i} S_W⁻¹ π_{W_i}: the error operator of component i.
  const Matrix& component(std::size_t i) const { return components_.at(i); }
  const std::vector<Matrix>& components() const { return components_; }
  /// Σ_i component(i).
  const Matrix& reconstruction() const { return reconstruction_; }
  /// ‖reconstruction − I‖_F.
  double duality_residual() const { return residual_; }

 private:
  FusionFrame primal_;
  FusionFrame dual_;
  Matrix s_inv_;
  std::vector<Matrix> components_;
  Matrix reconstruction_;
  double residual_ = 0.0;
};

struct DualCheck {
  bool is_dual = false;
  double residual = 0.0;
  Matrix reconstruction;
  /// Warning only: the candidate family does not span the space.
  bool candidate_is_frame = true;
};

DualCheck verify_dual(const DualPair& pair, const Tolerance& tol = {});

/// For a Riesz fusion basis W: (V, v) is a dual iff S_W⁻¹ W_i ⊆ V_i for all i.
/// Throws PreconditionError when W is not a Riesz fusion basis.
bool riesz_dual_family_check(const FusionFrame& w, const FusionFrame& v, const Tolerance& tol = {});

/// A left inverse of the analysis operator, one n × n block per member:
/// f ↦ Σ_i block_i (ω_i π_{W_i} f). Component-restricted maps are block
/// selections, so M_J masking never needs ⊕W_i coordinates.
struct LeftInverseMap {
  std::vector<Matrix> blocks;
};

/// ‖Σ_i block_i ω_i π_{W_i} − I‖_F.
double left_inverse_defect(const FusionFrame& w, const LeftInverseMap& a);

/// blocks_i = ν_i π_{V_i} S_W⁻¹, i.e. T_V φ_vw.
LeftInverseMap left_inverse_from_dual(const DualPair& pair);

/// True iff block_j maps W_j onto V_j for every j (mutual containment).
/// Throws PreconditionError when `a` is not a left inverse.
bool component_preserving_check(const FusionFrame& w, const FusionFrame& v, const LeftInverseMap& a,
                                const Tolerance& tol = {});

/// X_i = π_{V_i} S_W⁻¹ W_i with weights ν_i. Throws NotADualError for a non-dual pair.
FusionFrame lift_to_component_preserving(const DualPair& pair, const Tolerance& tol = {});

}  // namespace fusionopt
