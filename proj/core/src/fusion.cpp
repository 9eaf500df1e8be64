#include "fusionopt/fusion.hpp"

#include "fusionopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fusionopt {

FusionFrame::FusionFrame(std::size_t ambient_dim, std::vector<FusionMember> members)
    : ambient_(ambient_dim), members_(std::move(members)) {
  if (ambient_ == 0) throw InvalidArgument("fusion frame: ambient dimension must be positive");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& m = members_[i];
    if (!(m.weight > 0.0) || !std::isfinite(m.weight)) {
      throw InvalidArgument("fusion frame: weight of member " + std::to_string(i) +
                            " must be finite and positive");
    }
    if (m.subspace.ambient_dim() != ambient_) {
      throw DimensionError("fusion frame: member " + std::to_string(i) + " lives in dimension " +
                           std::to_string(m.subspace.ambient_dim()) + ", expected " +
                           std::to_string(ambient_));
    }
  }
}

FusionFrame FusionFrame::uniform(std::size_t ambient_dim, std::vector<Subspace> subspaces) {
  std::vector<FusionMember> members;
  members.reserve(subspaces.size());
  for (auto& s : subspaces) members.push_back({std::move(s), 1.0});
  return FusionFrame(ambient_dim, std::move(members));
}

std::vector<Subspace> FusionFrame::subspaces() const {
  std::vector<Subspace> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.subspace);
  return out;
}

std::vector<double> FusionFrame::weights() const {
  std::vector<double> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.weight);
  return out;
}

FusionFrame FusionFrame::with_weights(std::vector<double> weights) const {
  if (weights.size() != members_.size()) throw DimensionError("with_weights: count mismatch");
  std::vector<FusionMember> members = members_;
  for (std::size_t i = 0; i < members.size(); ++i) members[i].weight = weights[i];
  return FusionFrame(ambient_, std::move(members));
}

Matrix frame_operator(const FusionFrame& w) {
  Matrix s(w.ambient_dim(), w.ambient_dim());
  for (const auto& m : w.members()) s += (m.weight * m.weight) * projector(m.subspace);
  return s;
}

FrameBounds frame_bounds(const FusionFrame& w) {
  const auto eig = symmetric_eigen(frame_operator(w));
  FrameBounds b;
  b.lower = std::max(0.0, eig.values.front());
  b.upper = eig.values.back();
  return b;
}

bool spans_space(const FusionFrame& w, const Tolerance& tol) {
  const auto parts = w.subspaces();
  return subspace_sum(w.ambient_dim(), parts, tol).dim() == w.ambient_dim();
}

bool is_riesz_for_span(const FusionFrame& w, std::span<const std::size_t> indices,
                       const Tolerance& tol) {
  std::vector<Subspace> parts;
  std::size_t total = 0;
  for (std::size_t i : indices) {
    parts.push_back(w.subspace(i));
    total += w.subspace(i).dim();
  }
  return subspace_sum(w.ambient_dim(), parts, tol).dim() == total;
}

FrameClassification classify(const FusionFrame& w, const Tolerance& tol) {
  FrameClassification c;
  const auto bounds = frame_bounds(w);
  c.lower_bound = bounds.lower;
  c.upper_bound = bounds.upper;
  c.is_frame = spans_space(w, tol) && bounds.lower > tol.rank_eps;
  if (!c.is_frame) c.lower_bound = bounds.lower <= tol.rank_eps ? 0.0 : bounds.lower;

  const double scale = std::max(1.0, c.upper_bound);
  c.is_tight = c.is_frame && (c.upper_bound - c.lower_bound) <= tol.residual_eps * scale;
  c.is_parseval = c.is_tight && std::abs(c.lower_bound - 1.0) <= tol.residual_eps &&
                  std::abs(c.upper_bound - 1.0) <= tol.residual_eps;

  std::size_t total_dim = 0;
  for (const auto& m : w.members()) {
    total_dim += m.subspace.dim();
    if (m.subspace.dim() != w.ambient_dim()) c.is_nontrivial = true;
  }
  c.is_riesz_fusion_basis = c.is_frame && total_dim == w.ambient_dim();

  if (c.is_riesz_fusion_basis) {
    bool orthogonal = true;
    for (std::size_t i = 0; i < w.size() && orthogonal; ++i) {
      if (std::abs(w.weight(i) - 1.0) > tol.residual_eps) orthogonal = false;
      for (std::size_t j = i + 1; j < w.size() && orthogonal; ++j) {
        const Matrix cross = w.subspace(i).basis().transpose() * w.subspace(j).basis();
        if (frobenius_norm(cross) > tol.residual_eps) orthogonal = false;
      }
    }
    c.is_orthonormal_fusion_basis = orthogonal;
  }
  return c;
}

FrameBounds riesz_constants(const FusionFrame& w) {
  std::vector<Vector> blocks;
  for (const auto& m : w.members())
    for (auto& v : m.subspace.basis_vectors()) blocks.push_back(std::move(v));
  if (blocks.empty()) return {};
  const Matrix synthesis = Matrix::from_columns(w.ambient_dim(), blocks);
  const auto eig = symmetric_eigen(synthesis.transpose() * synthesis);
  return {std::max(0.0, eig.values.front()), eig.values.back()};
}

FusionFrame canonical_dual(const FusionFrame& w, const Tolerance& tol) {
  Matrix s_inv;
  try {
    s_inv = spd_inverse(frame_operator(w), tol);
  } catch (const SingularMatrixError&) {
    throw NotAFrameError("canonical_dual: the family does not span the space");
  }
  std::vector<FusionMember> members;
  members.reserve(w.size());
  for (const auto& m : w.members()) members.push_back({image_subspace(s_inv, m.subspace, tol), m.weight});
  return FusionFrame(w.ambient_dim(), std::move(members));
}

FusionFrame transform(const FusionFrame& w, const Matrix& u, const Tolerance& tol) {
  std::vector<FusionMember> members;
  members.reserve(w.size());
  for (const auto& m : w.members()) members.push_back({image_subspace(u, m.subspace, tol), m.weight});
  return FusionFrame(w.ambient_dim(), std::move(members));
}

}  // namespace fusionopt
