#include "fusionopt/duality.hpp"

#include "fusionopt/error.hpp"

#include <string>

namespace fusionopt {

DualPair::DualPair(FusionFrame primal, FusionFrame dual_candidate, const Tolerance& tol)
    : primal_(std::move(primal)), dual_(std::move(dual_candidate)) {
  if (primal_.size() != dual_.size()) {
    throw DimensionError("dual pair: primal has " + std::to_string(primal_.size()) +
                         " members, candidate has " + std::to_string(dual_.size()));
  }
  if (primal_.ambient_dim() != dual_.ambient_dim()) {
    throw DimensionError("dual pair: ambient dimensions differ");
  }
  try {
    s_inv_ = spd_inverse(frame_operator(primal_), tol);
  } catch (const SingularMatrixError&) {
    throw NotAFrameError("dual pair: primal family does not span the space");
  }
  const std::size_t n = primal_.ambient_dim();
  reconstruction_ = Matrix(n, n);
  components_.reserve(primal_.size());
  for (std::size_t i = 0; i < primal_.size(); ++i) {
    const double scale = primal_.weight(i) * dual_.weight(i);
    Matrix c = scale * (projector(dual_.subspace(i)) * s_inv_ * projector(primal_.subspace(i)));
    reconstruction_ += c;
    components_.push_back(std::move(c));
  }
  residual_ = frobenius_norm(reconstruction_ - Matrix::identity(n));
}

DualPair DualPair::canonical(const FusionFrame& primal, const Tolerance& tol) {
  return DualPair(primal, canonical_dual(primal, tol), tol);
}

DualCheck verify_dual(const DualPair& pair, const Tolerance& tol) {
  DualCheck out;
  out.residual = pair.duality_residual();
  out.is_dual = out.residual <= tol.residual_eps;
  out.reconstruction = pair.reconstruction();
  out.candidate_is_frame = spans_space(pair.dual_candidate(), tol);
  return out;
}

bool riesz_dual_family_check(const FusionFrame& w, const FusionFrame& v, const Tolerance& tol) {
  if (!classify(w, tol).is_riesz_fusion_basis) {
    throw PreconditionError("riesz_dual_family_check: primal is not a Riesz fusion basis");
  }
  if (w.size() != v.size()) throw DimensionError("riesz_dual_family_check: member count mismatch");
  const FusionFrame canon = canonical_dual(w, tol);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!subspace_contains(v.subspace(i), canon.subspace(i), tol)) return false;
  }
  return true;
}

double left_inverse_defect(const FusionFrame& w, const LeftInverseMap& a) {
  if (a.blocks.size() != w.size()) throw DimensionError("left inverse: one block per member expected");
  const std::size_t n = w.ambient_dim();
  Matrix sum(n, n);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (a.blocks[i].rows() != n || a.blocks[i].cols() != n) {
      throw DimensionError("left inverse: block " + std::to_string(i) + " is not n × n");
    }
    sum += w.weight(i) * (a.blocks[i] * projector(w.subspace(i)));
  }
  return frobenius_norm(sum - Matrix::identity(n));
}

LeftInverseMap left_inverse_from_dual(const DualPair& pair) {
  LeftInverseMap a;
  a.blocks.reserve(pair.size());
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const auto& v = pair.dual_candidate();
    a.blocks.push_back(v.weight(i) * (projector(v.subspace(i)) * pair.frame_operator_inverse()));
  }
  return a;
}

bool component_preserving_check(const FusionFrame& w, const FusionFrame& v, const LeftInverseMap& a,
                                const Tolerance& tol) {
  if (w.size() != v.size()) throw DimensionError("component_preserving_check: member count mismatch");
  const double defect = left_inverse_defect(w, a);
  if (defect > tol.residual_eps) {
    throw PreconditionError("component_preserving_check: map is not a left inverse (defect " +
                            std::to_string(defect) + ")");
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Subspace image = image_subspace(a.blocks[j], w.subspace(j), tol);
    if (!subspace_equal(image, v.subspace(j), tol)) return false;
  }
  return true;
}

FusionFrame lift_to_component_preserving(const DualPair& pair, const Tolerance& tol) {
  if (pair.duality_residual() > tol.residual_eps) {
    throw NotADualError("lift_to_component_preserving: pair is not a dual (residual " +
                        std::to_string(pair.duality_residual()) + ")");
  }
  const auto& w = pair.primal();
  const auto& v = pair.dual_candidate();
  std::vector<FusionMember> members;
  members.reserve(pair.size());
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const Matrix map = projector(v.subspace(i)) * pair.frame_operator_inverse();
    members.push_back({image_subspace(map, w.subspace(i), tol), v.weight(i)});
  }
  return FusionFrame(w.ambient_dim(), std::move(members));
}

}  // namespace fusionopt
