#include "fusionopt/error.hpp"
#include "fusionopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fusionopt {

namespace {

// Relative margin inside which pivot candidates count as tied; ties go to the
// lowest index so that exact fixtures keep their natural column order.
constexpr double kPivotTie = 1e-12;

void orthogonalize_against(Vector& v, const std::vector<Vector>& q) {
  for (const auto& qk : q) {
    const double c = qk.dot(v);
    if (c != 0.0) v -= c * qk;
  }
}

std::size_t pick_pivot(const std::vector<Vector>& residuals, const std::vector<bool>& active,
                       double& best_norm) {
  std::size_t best = residuals.size();
  best_norm = -1.0;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (!active[i]) continue;
    const double nr = residuals[i].norm();
    if (best == residuals.size() || nr > best_norm * (1.0 + kPivotTie)) {
      best = i;
      best_norm = nr;
    }
  }
  return best;
}

void check_same_ambient(const Subspace& a, const Subspace& b, const char* what) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionError(std::string(what) + ": ambient dimensions differ (" +
                         std::to_string(a.ambient_dim()) + " vs " +
                         std::to_string(b.ambient_dim()) + ")");
  }
}

}  // namespace

Subspace Subspace::zero(std::size_t ambient_dim) { return Subspace(ambient_dim, Matrix(ambient_dim, 0)); }

Subspace Subspace::full(std::size_t ambient_dim) {
  return Subspace(ambient_dim, Matrix::identity(ambient_dim));
}

Subspace Subspace::from_orthonormal(Matrix basis, const Tolerance& tol) {
  if (!basis.is_finite()) throw InvalidArgument("subspace basis must be finite");
  if (basis.cols() > basis.rows()) throw DimensionError("subspace basis has more columns than rows");
  if (!is_orthonormal_columns(basis, tol)) throw InvalidArgument("subspace basis is not orthonormal");
  const std::size_t n = basis.rows();
  return Subspace(n, std::move(basis));
}

Subspace orthonormal_basis(std::size_t ambient_dim, std::span<const Vector> vectors,
                           const Tolerance& tol) {
  double max_norm = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dim() != ambient_dim) {
      throw DimensionError("orthonormal_basis: vector " + std::to_string(i) + " has dimension " +
                           std::to_string(vectors[i].dim()) + ", expected " +
                           std::to_string(ambient_dim));
    }
    if (!vectors[i].is_finite()) throw InvalidArgument("orthonormal_basis: non-finite entry");
    max_norm = std::max(max_norm, vectors[i].norm());
  }
  if (max_norm == 0.0) return Subspace::zero(ambient_dim);

  const double threshold = tol.rank_eps * max_norm;
  std::vector<Vector> residuals(vectors.begin(), vectors.end());
  std::vector<bool> active(residuals.size(), true);
  std::vector<Vector> q;

  while (q.size() < ambient_dim) {
    double pivot_norm = 0.0;
    const std::size_t pivot = pick_pivot(residuals, active, pivot_norm);
    if (pivot == residuals.size() || pivot_norm <= threshold) break;
    active[pivot] = false;

    Vector candidate = residuals[pivot];
    orthogonalize_against(candidate, q);  // second pass
    const double nc = candidate.norm();
    if (nc <= threshold) continue;
    candidate *= 1.0 / nc;
    q.push_back(candidate);

    for (std::size_t j = 0; j < residuals.size(); ++j) {
      if (!active[j]) continue;
      const double c = candidate.dot(residuals[j]);
      residuals[j] -= c * candidate;
    }
  }
  return Subspace(ambient_dim, Matrix::from_columns(ambient_dim, q));
}

Subspace orthonormal_basis(std::span<const Vector> vectors, const Tolerance& tol) {
  if (vectors.empty()) throw DimensionError("orthonormal_basis: empty list needs an ambient dimension");
  return orthonormal_basis(vectors.front().dim(), vectors, tol);
}

Subspace span_of(std::size_t ambient_dim, std::initializer_list<Vector> vectors, const Tolerance& tol) {
  return orthonormal_basis(ambient_dim, std::span<const Vector>(vectors.begin(), vectors.size()), tol);
}

Matrix projector(const Subspace& s) {
  const Matrix& q = s.basis();
  const std::size_t n = s.ambient_dim();
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < q.cols(); ++k) v += q(i, k) * q(j, k);
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return p;
}

bool subspace_contains(const Subspace& outer, const Subspace& inner, const Tolerance& tol) {
  check_same_ambient(outer, inner, "subspace_contains");
  if (inner.is_zero()) return true;
  const Matrix& qo = outer.basis();
  const Matrix& qi = inner.basis();
  Matrix residual = qi - qo * (qo.transpose() * qi);
  return frobenius_norm(residual) <= tol.residual_eps;
}

bool subspace_equal(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  return a.dim() == b.dim() && subspace_contains(a, b, tol) && subspace_contains(b, a, tol);
}

Subspace subspace_sum(std::size_t ambient_dim, std::span<const Subspace> parts, const Tolerance& tol) {
  std::vector<Vector> columns;
  for (const auto& part : parts) {
    if (part.ambient_dim() != ambient_dim) {
      throw DimensionError("subspace_sum: ambient dimension mismatch");
    }
    for (auto& c : part.basis_vectors()) columns.push_back(std::move(c));
  }
  return orthonormal_basis(ambient_dim, columns, tol);
}

Subspace orthogonal_complement(const Subspace& s) {
  const std::size_t n = s.ambient_dim();
  const std::size_t want = n - s.dim();
  std::vector<Vector> q = s.basis_vectors();
  std::vector<Vector> residuals;
  residuals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = Vector::unit(n, i);
    orthogonalize_against(e, q);
    residuals.push_back(std::move(e));
  }
  std::vector<bool> active(n, true);
  std::vector<Vector> out;
  while (out.size() < want) {
    double pivot_norm = 0.0;
    const std::size_t pivot = pick_pivot(residuals, active, pivot_norm);
    if (pivot == n || pivot_norm <= 0.0) break;
    active[pivot] = false;
    Vector candidate = residuals[pivot];
    orthogonalize_against(candidate, q);
    candidate *= 1.0 / candidate.norm();
    q.push_back(candidate);
    out.push_back(candidate);
    for (std::size_t j = 0; j < n; ++j) {
      if (!active[j]) continue;
      residuals[j] -= candidate.dot(residuals[j]) * candidate;
    }
  }
  return Subspace(n, Matrix::from_columns(n, out));
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  check_same_ambient(a, b, "subspace_intersection");
  const Subspace complements[] = {orthogonal_complement(a), orthogonal_complement(b)};
  return orthogonal_complement(subspace_sum(a.ambient_dim(), complements, tol));
}

Subspace image_subspace(const Matrix& u, const Subspace& s, const Tolerance& tol) {
  if (!u.is_square() || u.rows() != s.ambient_dim()) {
    throw DimensionError("image_subspace: operator is not square on the ambient space");
  }
  const Matrix image = u * s.basis();
  return orthonormal_basis(s.ambient_dim(), image.columns(), tol);
}

Matrix nullspace(const Matrix& a, const Tolerance& tol) {
  std::vector<Vector> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
  return orthogonal_complement(orthonormal_basis(a.cols(), rows, tol)).basis();
}

bool is_orthonormal_columns(const Matrix& q, const Tolerance& tol) {
  const Matrix gram = q.transpose() * q;
  return max_abs_diff(gram, Matrix::identity(q.cols())) <= tol.residual_eps;
}

}  // namespace fusionopt
