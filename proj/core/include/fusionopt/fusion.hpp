#pragma once

#include "fusionopt/linalg.hpp"

#include <utility>
#include <vector>

namespace fusionopt {

struct FusionMember {
  Subspace subspace;
  double weight = 1.0;
};

/// A weighted family of subspaces {(W_i, ω_i)} of ℝⁿ.
///
/// Weights must be positive and all subspaces must share the ambient
/// dimension. Spanning is *not* enforced: a non-spanning family is still
/// representable so that it can be diagnosed (see `classify`).
class FusionFrame {
 public:
  FusionFrame(std::size_t ambient_dim, std::vector<FusionMember> members);

  /// Unit-weight family.
  static FusionFrame uniform(std::size_t ambient_dim, std::vector<Subspace> subspaces);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<FusionMember>& members() const { return members_; }
  const FusionMember& operator[](std::size_t i) const { return members_.at(i); }
  const Subspace& subspace(std::size_t i) const { return members_.at(i).subspace; }
  double weight(std::size_t i) const { return members_.at(i).weight; }

  std::vector<Subspace> subspaces() const;
  std::vector<double> weights() const;

  /// Same subspaces, new weights (one per member, all > 0).
  FusionFrame with_weights(std::vector<double> weights) const;

 private:
  std::size_t ambient_;
  std::vector<FusionMember> members_;
};

struct FrameBounds {
  double lower = 0.0;  ///< A: smallest eigenvalue of S_W
  double upper = 0.0;  ///< B: largest eigenvalue of S_W
};

struct FrameClassification {
  bool is_frame = false;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool is_tight = false;
  bool is_parseval = false;
  bool is_riesz_fusion_basis = false;
  bool is_orthonormal_fusion_basis = false;
  /// Some W_i differs from the whole space.
  bool is_nontrivial = false;
};

/// S_W = Σ ω_i² π_{W_i}.
Matrix frame_operator(const FusionFrame& w);
FrameBounds frame_bounds(const FusionFrame& w);
FrameClassification classify(const FusionFrame& w, const Tolerance& tol = {});

/// Span of the members equals the ambient space.
bool spans_space(const FusionFrame& w, const Tolerance& tol = {});

/// Finite-dimensional Riesz test for a subfamily: Σ dim W_i equals the
/// dimension of their span. An empty selection is vacuously Riesz.
bool is_riesz_for_span(const FusionFrame& w, std::span<const std::size_t> indices,
                       const Tolerance& tol = {});

/// Optimal constants A, B with A Σ‖f_i‖² ≤ ‖Σ f_i‖² ≤ B Σ‖f_i‖² (f_i ∈ W_i),
/// from the spectrum of the block synthesis map.
FrameBounds riesz_constants(const FusionFrame& w);

/// {(S_W⁻¹ W_i, ω_i)}. Throws NotAFrameError when S_W is singular.
FusionFrame canonical_dual(const FusionFrame& w, const Tolerance& tol = {});

/// {(u W_i, ω_i)}.
FusionFrame transform(const FusionFrame& w, const Matrix& u, const Tolerance& tol = {});

}  // namespace fusionopt
