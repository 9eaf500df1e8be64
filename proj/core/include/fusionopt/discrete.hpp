#pragma once

#include "fusionopt/fusion.hpp"
#include "fusionopt/linalg.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fusionopt {

/// Provenance of a bridged vector: member i, basis vector j (both 0-based).
struct BridgeLabel {
  std::size_t member = 0;
  std::size_t basis_index = 0;

  friend bool operator==(const BridgeLabel&, const BridgeLabel&) = default;
};

/// A finite sequence {f_k} in ℝⁿ, optionally labelled with bridge provenance.
class DiscreteFrame {
 public:
  DiscreteFrame(std::size_t ambient_dim, std::vector<Vector> vectors,
                std::optional<std::vector<BridgeLabel>> labels = std::nullopt);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const Vector& operator[](std::size_t k) const { return vectors_.at(k); }
  const std::optional<std::vector<BridgeLabel>>& labels() const { return labels_; }

  /// n × m matrix whose columns are the vectors (θ_F).
  Matrix synthesis() const;

  /// Indices k with ‖f_k‖ ≤ eps.
  std::vector<std::size_t> zero_indices(double eps) const;
  /// Subsequence at the given indices, labels carried along.
  DiscreteFrame select(std::span<const std::size_t> indices) const;
  /// Drops the zero vectors (the "nonzero-compacted" view).
  DiscreteFrame compacted(double eps) const;

 private:
  std::size_t ambient_;
  std::vector<Vector> vectors_;
  std::optional<std::vector<BridgeLabel>> labels_;
};

/// {u_k} with Σ_k u_k f_kᵀ = 0, so that {S_F⁻¹ f_k + u_k} is again a dual.
struct DualPerturbation {
  std::vector<Vector> u_vectors;
};

enum class BridgeMode {
  canonical_weighted,  ///< ω_i π_{W_i} S_W⁻¹ e_j
  parseval_sqrt,       ///< π_{S_W^{-1/2} W_i} e_j, unit weights only
};

struct DiscreteDualCheck {
  bool is_dual = false;
  double residual = 0.0;  ///< ‖Σ g_k f_kᵀ − I‖_F
};

Matrix discrete_frame_operator(const DiscreteFrame& f);
bool is_discrete_frame(const DiscreteFrame& f, const Tolerance& tol = {});

/// {S_F⁻¹ f_k}, labels preserved. Throws NotAFrameError when S_F is singular.
DiscreteFrame discrete_canonical_dual(const DiscreteFrame& f, const Tolerance& tol = {});

DiscreteDualCheck verify_discrete_dual(const DiscreteFrame& f, const DiscreteFrame& g,
                                       const Tolerance& tol = {});

/// ‖Σ u_k f_kᵀ‖_F; zero (within residual_eps) for a valid perturbation.
double perturbation_defect(const DiscreteFrame& f, const DualPerturbation& u);

/// {S_F⁻¹ f_k + u_k}. Throws PreconditionError when u violates Σ u_k f_kᵀ = 0.
DiscreteFrame dual_from_perturbation(const DiscreteFrame& f, const DualPerturbation& u,
                                     const Tolerance& tol = {});

/// Projects arbitrary columns r_k onto the admissible set: U = R (I − θ_Fᵀ S_F⁻¹ θ_F).
/// `raw` is n × m.
DualPerturbation project_to_perturbation(const DiscreteFrame& f, const Matrix& raw,
                                         const Tolerance& tol = {});

std::vector<Vector> standard_basis(std::size_t n);

/// Discrete frame generated by a fusion frame and an orthonormal basis, in
/// member-major order (i, j) with labels attached. Zero vectors are kept.
DiscreteFrame bridge_fusion_to_discrete(const FusionFrame& w, std::span<const Vector> basis,
                                        BridgeMode mode, const Tolerance& tol = {});

/// {ν_i π_{V_i} e_j}, labels aligned with bridge_fusion_to_discrete.
DiscreteFrame bridge_dual_to_discrete(const FusionFrame& v, std::span<const Vector> basis,
                                      const Tolerance& tol = {});

/// Halving construction for a known erasure set J: g_k = ½ S_F⁻¹ f_k on J and
/// the remaining u_k from the minimum-norm solution of the duality constraint.
struct HalvingResult {
  bool feasible = false;
  double constraint_residual = 0.0;  ///< ‖Σ u_k f_kᵀ‖_F after solving
  std::optional<DiscreteFrame> dual;
  DualPerturbation perturbation;
};

HalvingResult halving_dual(const DiscreteFrame& f, std::span<const std::size_t> erased,
                           const Tolerance& tol = {});

}  // namespace fusionopt
