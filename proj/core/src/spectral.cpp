#include "fusionopt/error.hpp"
#include "fusionopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fusionopt {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
  return s;
}

void require_symmetric(const Matrix& a, const Tolerance& tol, const char* what) {
  if (!a.is_square()) throw DimensionError(std::string(what) + ": matrix must be square");
  double scale = 1.0;
  for (double x : a.values()) scale = std::max(scale, std::abs(x));
  if (!is_symmetric(a, tol.residual_eps * scale)) {
    throw InvalidArgument(std::string(what) + ": matrix is not symmetric within residual_eps");
  }
}

// V diag(f(λ)) Vᵀ, symmetrized.
template <typename Fn>
Matrix spectral_apply(const SymmetricEigen& eig, Fn&& fn) {
  const std::size_t n = eig.values.size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = fn(eig.values[k]);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = eig.vectors(i, k) * w;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * eig.vectors(j, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = avg;
      out(j, i) = avg;
    }
  }
  return out;
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& input) {
  if (!input.is_square()) throw DimensionError("symmetric_eigen: matrix must be square");
  const std::size_t n = input.rows();
  Matrix a = input;
  // Work on the exact symmetric part.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = avg;
      a(j, i) = avg;
    }
  }
  Matrix v = Matrix::identity(n);
  const double scale = frobenius_norm(a);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_mass(a);
    if (off == 0.0 || std::sqrt(off) <= 1e-300 + 1e-17 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * std::abs(apq) == std::abs(app) &&
            std::abs(aqq) + 100.0 * std::abs(apq) == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double operator_norm(const Matrix& a, const Tolerance& /*tol*/) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const Matrix at = a.transpose();
  const Matrix gram = a.rows() < a.cols() ? a * at : at * a;
  const auto eig = symmetric_eigen(gram);
  return std::sqrt(std::max(0.0, eig.values.back()));
}

Matrix spd_inverse(const Matrix& a, const Tolerance& tol) {
  require_symmetric(a, tol, "spd_inverse");
  const auto eig = symmetric_eigen(a);
  if (!eig.values.empty() && eig.values.front() <= tol.rank_eps) {
    throw SingularMatrixError("spd_inverse: smallest eigenvalue " +
                              std::to_string(eig.values.front()) + " is not above rank_eps");
  }
  return spectral_apply(eig, [](double lambda) { return 1.0 / lambda; });
}

Matrix spd_inv_sqrt(const Matrix& a, const Tolerance& tol) {
  require_symmetric(a, tol, "spd_inv_sqrt");
  const auto eig = symmetric_eigen(a);
  if (!eig.values.empty() && eig.values.front() <= tol.rank_eps) {
    throw SingularMatrixError("spd_inv_sqrt: smallest eigenvalue " +
                              std::to_string(eig.values.front()) + " is not above rank_eps");
  }
  return spectral_apply(eig, [](double lambda) { return 1.0 / std::sqrt(lambda); });
}

Matrix psd_pseudo_inverse(const Matrix& a, const Tolerance& tol) {
  require_symmetric(a, tol, "psd_pseudo_inverse");
  const auto eig = symmetric_eigen(a);
  if (eig.values.empty()) return a;
  const double cutoff = tol.rank_eps * std::max(eig.values.back(), 0.0);
  return spectral_apply(eig, [cutoff](double lambda) { return lambda > cutoff ? 1.0 / lambda : 0.0; });
}

}  // namespace fusionopt
