#include "fusionopt/discrete.hpp"

#include "fusionopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace fusionopt {

namespace {

Matrix checked_frame_inverse(const DiscreteFrame& f, const Tolerance& tol) {
  try {
    return spd_inverse(discrete_frame_operator(f), tol);
  } catch (const SingularMatrixError&) {
    throw NotAFrameError("discrete frame does not span the space");
  }
}

void check_orthonormal_basis(std::size_t n, std::span<const Vector> basis, const Tolerance& tol) {
  if (basis.size() != n) {
    throw PreconditionError("bridge: basis has " + std::to_string(basis.size()) +
                            " vectors, expected " + std::to_string(n));
  }
  const Matrix q = Matrix::from_columns(n, basis);
  if (!is_orthonormal_columns(q, tol)) throw PreconditionError("bridge: basis is not orthonormal");
}

}  // namespace

DiscreteFrame::DiscreteFrame(std::size_t ambient_dim, std::vector<Vector> vectors,
                             std::optional<std::vector<BridgeLabel>> labels)
    : ambient_(ambient_dim), vectors_(std::move(vectors)), labels_(std::move(labels)) {
  if (ambient_ == 0) throw InvalidArgument("discrete frame: ambient dimension must be positive");
  for (std::size_t k = 0; k < vectors_.size(); ++k) {
    if (vectors_[k].dim() != ambient_) {
      throw DimensionError("discrete frame: vector " + std::to_string(k) + " has dimension " +
                           std::to_string(vectors_[k].dim()) + ", expected " +
                           std::to_string(ambient_));
    }
    if (!vectors_[k].is_finite()) throw InvalidArgument("discrete frame: non-finite entry");
  }
  if (labels_ && labels_->size() != vectors_.size()) {
    throw DimensionError("discrete frame: label count differs from vector count");
  }
}

Matrix DiscreteFrame::synthesis() const { return Matrix::from_columns(ambient_, vectors_); }

std::vector<std::size_t> DiscreteFrame::zero_indices(double eps) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < vectors_.size(); ++k)
    if (vectors_[k].norm() <= eps) out.push_back(k);
  return out;
}

DiscreteFrame DiscreteFrame::select(std::span<const std::size_t> indices) const {
  std::vector<Vector> vecs;
  std::optional<std::vector<BridgeLabel>> labs;
  if (labels_) labs.emplace();
  for (std::size_t k : indices) {
    if (k >= vectors_.size()) throw IndexError("select: index out of range");
    vecs.push_back(vectors_[k]);
    if (labels_) labs->push_back((*labels_)[k]);
  }
  return DiscreteFrame(ambient_, std::move(vecs), std::move(labs));
}

DiscreteFrame DiscreteFrame::compacted(double eps) const {
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < vectors_.size(); ++k)
    if (vectors_[k].norm() > eps) keep.push_back(k);
  return select(keep);
}

Matrix discrete_frame_operator(const DiscreteFrame& f) {
  const Matrix theta = f.synthesis();
  return theta * theta.transpose();
}

bool is_discrete_frame(const DiscreteFrame& f, const Tolerance& tol) {
  return orthonormal_basis(f.ambient_dim(), f.vectors(), tol).dim() == f.ambient_dim();
}

DiscreteFrame discrete_canonical_dual(const DiscreteFrame& f, const Tolerance& tol) {
  const Matrix s_inv = checked_frame_inverse(f, tol);
  std::vector<Vector> out;
  out.reserve(f.size());
  for (const auto& v : f.vectors()) out.push_back(s_inv * v);
  return DiscreteFrame(f.ambient_dim(), std::move(out), f.labels());
}

DiscreteDualCheck verify_discrete_dual(const DiscreteFrame& f, const DiscreteFrame& g,
                                       const Tolerance& tol) {
  if (f.size() != g.size() || f.ambient_dim() != g.ambient_dim()) {
    throw DimensionError("verify_discrete_dual: frames differ in length or ambient dimension");
  }
  Matrix recon(f.ambient_dim(), f.ambient_dim());
  for (std::size_t k = 0; k < f.size(); ++k) recon += outer(g[k], f[k]);
  DiscreteDualCheck out;
  out.residual = frobenius_norm(recon - Matrix::identity(f.ambient_dim()));
  out.is_dual = out.residual <= tol.residual_eps;
  return out;
}

double perturbation_defect(const DiscreteFrame& f, const DualPerturbation& u) {
  if (u.u_vectors.size() != f.size()) throw DimensionError("perturbation length differs from frame");
  Matrix sum(f.ambient_dim(), f.ambient_dim());
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (u.u_vectors[k].dim() != f.ambient_dim()) throw DimensionError("perturbation vector dimension");
    sum += outer(u.u_vectors[k], f[k]);
  }
  return frobenius_norm(sum);
}

DiscreteFrame dual_from_perturbation(const DiscreteFrame& f, const DualPerturbation& u,
                                     const Tolerance& tol) {
  const double defect = perturbation_defect(f, u);
  if (defect > tol.residual_eps) {
    throw PreconditionError("dual_from_perturbation: Σ u_k f_kᵀ has norm " + std::to_string(defect) +
                            ", expected 0");
  }
  DiscreteFrame canonical = discrete_canonical_dual(f, tol);
  std::vector<Vector> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out.push_back(canonical[k] + u.u_vectors[k]);
  return DiscreteFrame(f.ambient_dim(), std::move(out), f.labels());
}

DualPerturbation project_to_perturbation(const DiscreteFrame& f, const Matrix& raw,
                                         const Tolerance& tol) {
  if (raw.rows() != f.ambient_dim() || raw.cols() != f.size()) {
    throw DimensionError("project_to_perturbation: raw matrix must be n × m");
  }
  const Matrix theta = f.synthesis();
  const Matrix s_inv = checked_frame_inverse(f, tol);
  const Matrix row_projector = theta.transpose() * s_inv * theta;
  const Matrix u = raw - raw * row_projector;
  return {u.columns()};
}

std::vector<Vector> standard_basis(std::size_t n) {
  std::vector<Vector> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.push_back(Vector::unit(n, j));
  return out;
}

DiscreteFrame bridge_fusion_to_discrete(const FusionFrame& w, std::span<const Vector> basis,
                                        BridgeMode mode, const Tolerance& tol) {
  const std::size_t n = w.ambient_dim();
  check_orthonormal_basis(n, basis, tol);

  std::vector<Matrix> maps;
  maps.reserve(w.size());
  const Matrix s = frame_operator(w);
  try {
    if (mode == BridgeMode::canonical_weighted) {
      const Matrix s_inv = spd_inverse(s, tol);
      for (const auto& m : w.members()) maps.push_back(m.weight * (projector(m.subspace) * s_inv));
    } else {
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (std::abs(w.weight(i) - 1.0) > tol.residual_eps) {
          throw PreconditionError("bridge parseval_sqrt: member " + std::to_string(i) +
                                  " has weight " + std::to_string(w.weight(i)) + ", expected 1");
        }
      }
      const Matrix s_inv_sqrt = spd_inv_sqrt(s, tol);
      for (const auto& m : w.members()) maps.push_back(projector(image_subspace(s_inv_sqrt, m.subspace, tol)));
    }
  } catch (const SingularMatrixError&) {
    throw NotAFrameError("bridge: the fusion family does not span the space");
  }

  std::vector<Vector> vecs;
  std::vector<BridgeLabel> labels;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      vecs.push_back(maps[i] * basis[j]);
      labels.push_back({i, j});
    }
  }
  return DiscreteFrame(n, std::move(vecs), std::move(labels));
}

DiscreteFrame bridge_dual_to_discrete(const FusionFrame& v, std::span<const Vector> basis,
                                      const Tolerance& tol) {
  const std::size_t n = v.ambient_dim();
  check_orthonormal_basis(n, basis, tol);
  std::vector<Vector> vecs;
  std::vector<BridgeLabel> labels;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Matrix p = v.weight(i) * projector(v.subspace(i));
    for (std::size_t j = 0; j < n; ++j) {
      vecs.push_back(p * basis[j]);
      labels.push_back({i, j});
    }
  }
  return DiscreteFrame(n, std::move(vecs), std::move(labels));
}

HalvingResult halving_dual(const DiscreteFrame& f, std::span<const std::size_t> erased,
                           const Tolerance& tol) {
  const std::size_t n = f.ambient_dim();
  std::set<std::size_t> lost(erased.begin(), erased.end());
  if (lost.size() != erased.size()) throw IndexError("halving_dual: repeated erasure index");
  for (std::size_t k : lost)
    if (k >= f.size()) throw IndexError("halving_dual: erasure index out of range");

  const DiscreteFrame canonical = discrete_canonical_dual(f, tol);
  std::vector<Vector> u(f.size(), Vector(n));
  Matrix rhs(n, n);
  for (std::size_t k : lost) {
    u[k] = -0.5 * canonical[k];
    rhs -= outer(f[k], u[k]);
  }

  std::vector<std::size_t> free_idx;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!lost.count(k)) free_idx.push_back(k);

  if (!free_idx.empty()) {
    const Matrix f_free = f.select(free_idx).synthesis();
    // Minimum-norm solution of F_free U_freeᵀ = rhs.
    const Matrix ut = f_free.transpose() * psd_pseudo_inverse(f_free * f_free.transpose(), tol) * rhs;
    for (std::size_t r = 0; r < free_idx.size(); ++r) u[free_idx[r]] = ut.row(r);
  }

  HalvingResult out;
  out.perturbation = {u};
  out.constraint_residual = perturbation_defect(f, out.perturbation);
  out.feasible = out.constraint_residual <= tol.residual_eps;
  if (out.feasible) {
    std::vector<Vector> g;
    g.reserve(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) g.push_back(canonical[k] + u[k]);
    out.dual = DiscreteFrame(n, std::move(g), f.labels());
  }
  return out;
}

}  // namespace fusionopt
