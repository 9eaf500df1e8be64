#pragma once

// Dense real linear algebra kernel and subspace calculus.
//
// Everything here works on small, dense, row-major double matrices. Values
// are immutable once built by the free functions below; all operations are
// pure and safe to call concurrently.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fusionopt {

/// Thresholds for rank decisions and residual checks.
struct Tolerance {
  double rank_eps = 1e-9;
  double residual_eps = 1e-9;

  Tolerance() = default;
  Tolerance(double rank, double residual);

  /// Both thresholds set to `eps`.
  static Tolerance uniform(double eps) { return Tolerance(eps, eps); }
};

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  static Vector unit(std::size_t dim, std::size_t index);

  std::size_t dim() const { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> values() const { return data_; }
  const std::vector<double>& raw() const { return data_; }

  double norm() const;
  double dot(const Vector& other) const;
  bool is_finite() const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s);

 private:
  std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector v);
Vector operator*(Vector v, double s);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const double> diag);
  /// Throws InvalidArgument on ragged rows or non-finite entries.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  /// Columns must all have dimension `rows`; `rows` is needed for the empty case.
  static Matrix from_columns(std::size_t rows, std::span<const Vector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> values() const { return data_; }

  Vector column(std::size_t c) const;
  Vector row(std::size_t r) const;
  void set_column(std::size_t c, const Vector& v);
  std::vector<Vector> columns() const;

  Matrix transpose() const;
  double trace() const;
  bool is_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);

/// g fᵀ, the rank-one operator x ↦ ⟨x, f⟩ g.
Matrix outer(const Vector& g, const Vector& f);

/// Largest absolute entrywise difference; DimensionError on shape mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vector& a, const Vector& b);

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues ascend; column k of `vectors` belongs to `values[k]`.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

SymmetricEigen symmetric_eigen(const Matrix& a);

double frobenius_norm(const Matrix& a);
/// Largest singular value, from the Jacobi spectrum of aᵀa.
double operator_norm(const Matrix& a, const Tolerance& tol = {});

/// Inverse of a symmetric positive definite matrix.
Matrix spd_inverse(const Matrix& a, const Tolerance& tol = {});
/// Symmetric inverse square root of an SPD matrix.
Matrix spd_inv_sqrt(const Matrix& a, const Tolerance& tol = {});
/// Moore-Penrose inverse of a symmetric positive semidefinite matrix.
/// Eigenvalues ≤ rank_eps × largest eigenvalue are treated as zero.
Matrix psd_pseudo_inverse(const Matrix& a, const Tolerance& tol = {});

/// Orthonormal basis of {x : a x = 0}, columns of the result.
Matrix nullspace(const Matrix& a, const Tolerance& tol = {});

/// A subspace of ℝⁿ held as an orthonormal basis (ambient × k, k may be 0).
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  /// Wraps `basis` after checking basisᵀbasis = I within residual_eps.
  static Subspace from_orthonormal(Matrix basis, const Tolerance& tol = {});

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix& basis() const { return basis_; }
  std::vector<Vector> basis_vectors() const { return basis_.columns(); }

 private:
  Subspace(std::size_t ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {}
  friend Subspace orthonormal_basis(std::size_t, std::span<const Vector>, const Tolerance&);
  friend Subspace orthogonal_complement(const Subspace&);

  std::size_t ambient_ = 0;
  Matrix basis_;
};

/// Pivoted Gram-Schmidt with reorthogonalization. Residuals with norm
/// ≤ rank_eps × (largest input norm) are discarded.
Subspace orthonormal_basis(std::size_t ambient_dim, std::span<const Vector> vectors,
                           const Tolerance& tol = {});
/// As above; ambient dimension taken from the first vector (must be non-empty).
Subspace orthonormal_basis(std::span<const Vector> vectors, const Tolerance& tol = {});
Subspace span_of(std::size_t ambient_dim, std::initializer_list<Vector> vectors,
                 const Tolerance& tol = {});

Matrix projector(const Subspace& s);

bool subspace_contains(const Subspace& outer, const Subspace& inner, const Tolerance& tol = {});
/// Mutual containment.
bool subspace_equal(const Subspace& a, const Subspace& b, const Tolerance& tol = {});

Subspace subspace_sum(std::size_t ambient_dim, std::span<const Subspace> parts,
                      const Tolerance& tol = {});
Subspace orthogonal_complement(const Subspace& s);
/// a ∩ b as the common null space of I − π_a and I − π_b, i.e. (a^⊥ + b^⊥)^⊥.
Subspace subspace_intersection(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
/// {u x : x ∈ s}; the dimension drops only when u is singular on s.
Subspace image_subspace(const Matrix& u, const Subspace& s, const Tolerance& tol = {});

bool is_orthonormal_columns(const Matrix& q, const Tolerance& tol = {});
bool is_symmetric(const Matrix& a, double eps);

}  // namespace fusionopt
