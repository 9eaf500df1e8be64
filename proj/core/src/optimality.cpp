#include "fusionopt/optimality.hpp"

#include "fusionopt/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace fusionopt {

namespace {

constexpr double kValueSlack = 1e-9;

struct Split {
  double max = 0.0;
  std::vector<std::size_t> top;
  std::vector<std::size_t> rest;
};

Split split_argmax(const std::vector<double>& values) {
  Split s;
  for (double v : values) s.max = std::max(s.max, v);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (s.max - values[i] <= kRelativeTieTolerance * s.max) {
      s.top.push_back(i);
    } else {
      s.rest.push_back(i);
    }
  }
  return s;
}

Subspace span_of_members(const FusionFrame& w, const std::vector<std::size_t>& idx, const Tolerance& tol) {
  std::vector<Subspace> parts;
  parts.reserve(idx.size());
  for (std::size_t i : idx) parts.push_back(w.subspace(i));
  return subspace_sum(w.ambient_dim(), parts, tol);
}

// Shared tail of the canonical and dual certificates.
void fill_hypotheses(Certificate& cert, const FusionFrame& w, std::vector<double> values,
                     RieszSide side, const Tolerance& tol) {
  Split s = split_argmax(values);
  cert.member_values = std::move(values);
  cert.c_value = s.max;
  cert.lambda1 = std::move(s.top);
  cert.lambda2 = std::move(s.rest);
  const Subspace h1 = span_of_members(w, cert.lambda1, tol);
  const Subspace h2 = span_of_members(w, cert.lambda2, tol);
  cert.h1_dim = h1.dim();
  cert.h2_dim = h2.dim();
  cert.intersection_dim = subspace_intersection(h1, h2, tol).dim();
  cert.riesz_side = side;
  cert.lambda_side_riesz =
      is_riesz_for_span(w, side == RieszSide::lambda1 ? cert.lambda1 : cert.lambda2, tol);

  const bool disjoint = cert.intersection_dim == 0;
  if (!disjoint) {
    cert.notes.push_back("H1 ∩ H2 has dimension " + std::to_string(cert.intersection_dim));
  }
  if (!cert.lambda_side_riesz) {
    cert.notes.push_back(std::string("members on the ") +
                         (side == RieszSide::lambda1 ? "Λ1" : "Λ2") +
                         " side are not a Riesz fusion basis for their span");
  }
  cert.verdict = disjoint && cert.lambda_side_riesz ? Verdict::certified_optimal : Verdict::not_applicable;
}

void require_dual(const DualPair& pair, const Tolerance& tol, const char* who) {
  if (pair.duality_residual() > tol.residual_eps) {
    throw NotADualError(std::string(who) + ": candidate is not a dual (residual " +
                        std::to_string(pair.duality_residual()) + ")");
  }
}

void require_square(const Matrix& u, std::size_t n, const char* who) {
  if (u.rows() != n || u.cols() != n) {
    throw DimensionError(std::string(who) + ": map must be " + std::to_string(n) + " × " +
                         std::to_string(n));
  }
}

FusionFrame replace_member(const FusionFrame& v, std::size_t i, Subspace s) {
  std::vector<FusionMember> members = v.members();
  members[i].subspace = std::move(s);
  return FusionFrame(v.ambient_dim(), std::move(members));
}

// Largest entrywise gap between two lexicographic value tables.
double table_gap(const ErasureReport& a, const ErasureReport& b) {
  double gap = std::abs(a.worst_value - b.worst_value);
  for (std::size_t k = 0; k < a.per_subset_values.size(); ++k) {
    gap = std::max(gap, std::abs(a.per_subset_values[k].value - b.per_subset_values[k].value));
  }
  return gap;
}

double d1_operator(const DiscreteFrame& f, const DiscreteFrame& g, const Tolerance& tol) {
  if (f.size() >= 2) return discrete_worst_case(f, g, 1, NormKind::operator_norm, tol).worst_value;
  double best = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) best = std::max(best, g[k].norm() * f[k].norm());
  return best;
}

Vector gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = normal(rng);
  return v;
}

// V_i ⊇ S⁻¹W_i with a random number of extra random directions.
FusionFrame random_extension(const FusionFrame& canon, std::mt19937_64& rng, const Tolerance& tol) {
  const std::size_t n = canon.ambient_dim();
  std::vector<FusionMember> members;
  members.reserve(canon.size());
  for (const auto& m : canon.members()) {
    std::uniform_int_distribution<std::size_t> extra(0, n - m.subspace.dim());
    std::vector<Vector> spanning = m.subspace.basis_vectors();
    const std::size_t k = extra(rng);
    for (std::size_t t = 0; t < k; ++t) spanning.push_back(gaussian_vector(n, rng));
    members.push_back({orthonormal_basis(n, spanning, tol), m.weight});
  }
  return FusionFrame(n, std::move(members));
}

void mark_triviality(Certificate& cert, const FusionFrame& w) {
  cert.is_nontrivial = false;
  for (const auto& m : w.members()) {
    if (m.subspace.dim() != w.ambient_dim()) cert.is_nontrivial = true;
  }
  if (!cert.is_nontrivial) cert.notes.push_back("trivial fusion frame: every W_i is the whole space");
}

}  // namespace

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::canonical: return "canonical";
    case CertificateKind::dual: return "dual";
    case CertificateKind::tight_uniform: return "tight_uniform";
    case CertificateKind::riesz_basis: return "riesz_basis";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::certified_optimal ? "certified_optimal" : "not_applicable";
}

std::string_view to_string(RieszSide side) {
  switch (side) {
    case RieszSide::none: return "none";
    case RieszSide::lambda1: return "lambda1";
    case RieszSide::lambda2: return "lambda2";
  }
  return "unknown";
}

std::string_view to_string(VariantKind kind) {
  switch (kind) {
    case VariantKind::zero_component: return "zero_component";
    case VariantKind::trimmed: return "trimmed";
    case VariantKind::extended: return "extended";
  }
  return "unknown";
}

std::string_view to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::extension: return "extension";
    case ProbeKind::expansion_variant: return "expansion_variant";
    case ProbeKind::lift: return "lift";
    case ProbeKind::weight_reallocation: return "weight_reallocation";
  }
  return "unknown";
}

Certificate certify_canonical_optimal(const FusionFrame& w, const Tolerance& tol) {
  Matrix s_inv;
  try {
    s_inv = spd_inverse(frame_operator(w), tol);
  } catch (const SingularMatrixError&) {
    throw NotAFrameError("certify_canonical_optimal: family does not span the space");
  }
  std::vector<double> values;
  values.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double wi = w.weight(i);
    values.push_back(wi * wi * frobenius_norm(s_inv * projector(w.subspace(i))));
  }
  Certificate cert;
  cert.kind = CertificateKind::canonical;
  mark_triviality(cert, w);
  fill_hypotheses(cert, w, std::move(values), RieszSide::lambda2, tol);
  if (cert.certified()) cert.notes.push_back("canonical dual is 1-loss optimal; uniqueness not asserted");
  return cert;
}

Certificate certify_dual_optimal(const DualPair& pair, const Tolerance& tol) {
  require_dual(pair, tol, "certify_dual_optimal");
  std::vector<double> values;
  values.reserve(pair.size());
  for (const auto& c : pair.components()) values.push_back(frobenius_norm(c));
  Certificate cert;
  cert.kind = CertificateKind::dual;
  mark_triviality(cert, pair.primal());
  fill_hypotheses(cert, pair.primal(), std::move(values), RieszSide::lambda1, tol);
  if (cert.certified()) cert.notes.push_back("dual is 1-loss optimal");
  return cert;
}

Certificate certify_tight_uniform(const FusionFrame& w, const FusionFrame& v, const Tolerance& tol) {
  Certificate cert;
  cert.kind = CertificateKind::tight_uniform;
  cert.riesz_side = RieszSide::none;
  mark_triviality(cert, w);

  const FrameClassification cls = classify(w, tol);
  bool ok = true;
  if (!cls.is_frame) {
    cert.notes.push_back("W is not a frame");
    cert.verdict = Verdict::not_applicable;
    return cert;
  }
  if (!cls.is_tight) {
    ok = false;
    cert.notes.push_back("W is not tight: bounds (" + std::to_string(cls.lower_bound) + ", " +
                         std::to_string(cls.upper_bound) + ")");
  }

  std::vector<double> uniform_values;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double wi = w.weight(i);
    uniform_values.push_back(wi * wi * std::sqrt(static_cast<double>(w.subspace(i).dim())));
  }
  const auto [lo, hi] = std::minmax_element(uniform_values.begin(), uniform_values.end());
  const double c = uniform_values.empty() ? 0.0 : *hi;
  if (!uniform_values.empty() && *hi - *lo > tol.residual_eps * std::max(1.0, c)) {
    ok = false;
    cert.notes.push_back("ω_i²√dim W_i is not constant");
  }

  try {
    const DualPair pair(w, v, tol);
    if (pair.duality_residual() > tol.residual_eps) {
      ok = false;
      cert.notes.push_back("V is not a dual (residual " + std::to_string(pair.duality_residual()) + ")");
    } else {
      std::vector<double> values;
      for (const auto& comp : pair.components()) values.push_back(frobenius_norm(comp));
      Split s = split_argmax(values);
      cert.member_values = std::move(values);
      cert.lambda1 = std::move(s.top);
      cert.lambda2 = std::move(s.rest);
    }
  } catch (const Error& e) {
    ok = false;
    cert.notes.push_back(std::string("V is not a dual: ") + e.what());
  }

  double ratio = 0.0;
  for (std::size_t i = 0; i < std::min(w.size(), v.size()); ++i) ratio = std::max(ratio, v.weight(i) / w.weight(i));
  if (ratio > 1.0 + tol.residual_eps) {
    ok = false;
    cert.notes.push_back("max ν_i/ω_i = " + std::to_string(ratio) + " exceeds 1");
  }

  cert.c_value = c;
  if (ok) {
    cert.tight_bound = cls.lower_bound;
    cert.d1_bound = c / cls.lower_bound;
    cert.verdict = Verdict::certified_optimal;
  } else {
    cert.verdict = Verdict::not_applicable;
  }
  return cert;
}

Certificate certify_riesz_basis(const DualPair& pair, const Tolerance& tol) {
  require_dual(pair, tol, "certify_riesz_basis");
  Certificate cert;
  cert.kind = CertificateKind::riesz_basis;
  mark_triviality(cert, pair.primal());
  for (const auto& comp : pair.components()) cert.member_values.push_back(frobenius_norm(comp));
  Split s = split_argmax(cert.member_values);
  cert.c_value = s.max;
  cert.lambda1 = std::move(s.top);
  cert.lambda2 = std::move(s.rest);
  cert.riesz_side = RieszSide::none;
  cert.lambda_side_riesz = classify(pair.primal(), tol).is_riesz_fusion_basis;
  cert.verdict = cert.lambda_side_riesz ? Verdict::certified_optimal : Verdict::not_applicable;
  if (!cert.lambda_side_riesz) cert.notes.push_back("W is not a Riesz fusion basis");
  return cert;
}

std::vector<FamilyVariant> expand_optimal_family(const DualPair& pair, std::size_t i, const Tolerance& tol,
                                                 std::size_t max_r) {
  if (i >= pair.size()) {
    throw IndexError("expand_optimal_family: member " + std::to_string(i) + " out of range");
  }
  const FusionFrame& v = pair.dual_candidate();
  const Subspace k = image_subspace(pair.frame_operator_inverse(), pair.primal().subspace(i), tol);
  const Subspace k_perp = orthogonal_complement(k);
  const Subspace& vi = v.subspace(i);

  std::vector<FamilyVariant> out;
  auto emit = [&](VariantKind kind, Subspace z, std::optional<Vector> u) {
    FamilyVariant fv{kind, i, replace_member(v, i, std::move(z)), std::move(u)};
    out.push_back(std::move(fv));
  };

  if (subspace_equal(vi, k_perp, tol)) {
    emit(VariantKind::zero_component, Subspace::zero(v.ambient_dim()), std::nullopt);
  } else if (subspace_contains(vi, k_perp, tol) && vi.dim() > k_perp.dim()) {
    emit(VariantKind::trimmed, subspace_intersection(k, vi, tol), std::nullopt);
  }
  const Subspace free_dirs = subspace_intersection(orthogonal_complement(vi), k_perp, tol);
  for (const Vector& u : free_dirs.basis_vectors()) {
    std::vector<Vector> spanning = vi.basis_vectors();
    spanning.push_back(u);
    emit(VariantKind::extended, orthonormal_basis(v.ambient_dim(), spanning, tol), u);
  }

  const std::size_t m = pair.size();
  const std::size_t top_r = std::min(max_r, m == 0 ? 0 : m - 1);
  for (auto& fv : out) {
    const DualPair variant(pair.primal(), fv.family, tol);
    fv.duality_residual = variant.duality_residual();
    fv.is_dual = fv.duality_residual <= tol.residual_eps;
    double gap = 0.0;
    double scale = 1.0;
    for (std::size_t r = 1; r <= top_r; ++r) {
      if (binomial(m, r) > kEnumerationCap) continue;
      for (NormKind norm : {NormKind::frobenius, NormKind::operator_norm}) {
        const auto before = worst_over_subsets(pair.components(), r, norm, tol, true);
        const auto after = worst_over_subsets(variant.components(), r, norm, tol, true);
        gap = std::max(gap, table_gap(before, after));
        scale = std::max(scale, before.worst_value);
      }
    }
    fv.max_value_deviation = gap;
    fv.values_preserved = gap <= kValueSlack * scale;
  }
  return out;
}

std::vector<Vector> parseval_family_basis(const FusionFrame& w, const Tolerance& tol) {
  const std::size_t n = w.ambient_dim();
  Matrix s_inv_sqrt;
  try {
    s_inv_sqrt = spd_inv_sqrt(frame_operator(w), tol);
  } catch (const SingularMatrixError&) {
    throw NotAFrameError("parseval_family_basis: family does not span the space");
  }
  std::vector<Vector> basis;
  for (const auto& m : w.members()) {
    const Matrix p = projector(image_subspace(s_inv_sqrt, m.subspace, tol));
    for (std::size_t j = 0; j < n; ++j) {
      Vector a = p * Vector::unit(n, j);
      const double len = a.norm();
      if (len > tol.rank_eps) {
        basis.push_back((1.0 / len) * a);
        break;
      }
    }
  }
  // Ordered completion: plain Gram-Schmidt against e_1, e_2, … with one
  // reorthogonalization pass.
  for (std::size_t j = 0; j < n && basis.size() < n; ++j) {
    Vector r = Vector::unit(n, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) r -= q.dot(r) * q;
    const double len = r.norm();
    if (len > std::sqrt(tol.rank_eps)) basis.push_back((1.0 / len) * r);
  }
  return basis;
}

ParsevalFamily parseval_optimal_family(const FusionFrame& w, const std::vector<Subspace>& extensions,
                                       const Tolerance& tol, std::optional<std::vector<Vector>> basis) {
  const std::size_t n = w.ambient_dim();
  if (!classify(w, tol).is_riesz_fusion_basis) {
    throw PreconditionError("parseval_optimal_family: W is not a Riesz fusion basis");
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w.weight(i) - 1.0) > tol.residual_eps) {
      throw PreconditionError("parseval_optimal_family: member " + std::to_string(i) +
                              " has weight " + std::to_string(w.weight(i)) + ", expected 1");
    }
  }
  if (extensions.size() != w.size()) {
    throw DimensionError("parseval_optimal_family: one extension per member expected");
  }
  const Matrix s_inv_sqrt = spd_inv_sqrt(frame_operator(w), tol);
  std::vector<FusionMember> dual_members;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (extensions[i].ambient_dim() != n) {
      throw DimensionError("parseval_optimal_family: extension " + std::to_string(i) +
                           " has the wrong ambient dimension");
    }
    const Subspace k = image_subspace(s_inv_sqrt, w.subspace(i), tol);
    if (!subspace_contains(extensions[i], k, tol)) {
      throw PreconditionError("parseval_optimal_family: extension " + std::to_string(i) +
                              " does not contain S^{-1/2}W_i");
    }
    dual_members.push_back({extensions[i], 1.0});
  }

  std::vector<Vector> e = basis ? std::move(*basis) : parseval_family_basis(w, tol);
  DiscreteFrame f = bridge_fusion_to_discrete(w, e, BridgeMode::parseval_sqrt, tol);
  DiscreteFrame g = bridge_dual_to_discrete(FusionFrame(n, std::move(dual_members)), e, tol);

  ParsevalFamily out{std::move(e), f, {f, std::move(g)}, 0.0, {}, {}};
  out.parseval_residual = frobenius_norm(discrete_frame_operator(f) - Matrix::identity(n));
  for (const auto& d : out.duals) {
    out.dual_residuals.push_back(verify_discrete_dual(f, d, tol).residual);
    out.d1_operator.push_back(d1_operator(f, d, tol));
  }
  return out;
}

std::vector<BlockErrorComparison> riesz_bridge_partial_optimal(const FusionFrame& w,
                                                               std::span<const Vector> basis,
                                                               const DualPerturbation& u,
                                                               const Tolerance& tol) {
  if (!classify(w, tol).is_riesz_fusion_basis) {
    throw PreconditionError("riesz_bridge_partial_optimal: W is not a Riesz fusion basis");
  }
  const DiscreteFrame f = bridge_fusion_to_discrete(w, basis, BridgeMode::canonical_weighted, tol);
  const DiscreteFrame canonical = discrete_canonical_dual(f, tol);
  const DiscreteFrame perturbed = dual_from_perturbation(f, u, tol);
  std::vector<BlockErrorComparison> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const ErasureMask block = ErasureMask::member_block(f, i);
    out.push_back({i, partial_erasure_error(f, perturbed, block, NormKind::frobenius, tol),
                   partial_erasure_error(f, canonical, block, NormKind::frobenius, tol)});
  }
  return out;
}

DualPair transport_by_unitary(const DualPair& pair, const Matrix& u, const Tolerance& tol) {
  const std::size_t n = pair.ambient_dim();
  require_square(u, n, "transport_by_unitary");
  const double defect = frobenius_norm(u.transpose() * u - Matrix::identity(n));
  if (defect > tol.residual_eps) {
    throw PreconditionError("transport_by_unitary: map is not unitary (‖uᵀu − I‖_F = " +
                            std::to_string(defect) + ")");
  }
  return DualPair(transform(pair.primal(), u, tol), transform(pair.dual_candidate(), u, tol), tol);
}

std::vector<InvarianceFailure> invariance_failures(const DualPair& pair, const Matrix& u,
                                                   const Tolerance& tol) {
  require_square(u, pair.ambient_dim(), "invariance_failures");
  const Matrix g = u.transpose() * u;
  std::vector<InvarianceFailure> out;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const Subspace& wi = pair.primal().subspace(i);
    const Subspace& vi = pair.dual_candidate().subspace(i);
    if (!subspace_contains(wi, image_subspace(g, wi, tol), tol)) out.push_back({i, true});
    if (!subspace_contains(vi, image_subspace(g, vi, tol), tol)) out.push_back({i, false});
  }
  return out;
}

DualPair transport_by_invertible(const DualPair& pair, const Matrix& u, const Tolerance& tol) {
  const std::size_t n = pair.ambient_dim();
  require_square(u, n, "transport_by_invertible");
  const auto spectrum = symmetric_eigen(u.transpose() * u);
  if (spectrum.values.front() <= tol.rank_eps * std::max(1.0, spectrum.values.back())) {
    throw PreconditionError("transport_by_invertible: map is singular");
  }
  const auto failures = invariance_failures(pair, u, tol);
  if (!failures.empty()) {
    std::string msg = "transport_by_invertible: uᵀu does not leave invariant";
    for (const auto& f : failures) {
      msg += (f.primal ? " W_" : " V_") + std::to_string(f.member);
    }
    throw PreconditionError(msg);
  }
  return DualPair(transform(pair.primal(), u, tol), transform(pair.dual_candidate(), u, tol), tol);
}

std::vector<Probe> probe_duals(const FusionFrame& w, std::size_t count, std::uint64_t seed,
                               const Tolerance& tol) {
  const std::size_t n = w.ambient_dim();
  const std::size_t m = w.size();
  const FusionFrame canon = canonical_dual(w, tol);

  // Null space of c ↦ Σ c_i π_{W_i}: columns are vec(π_{W_i}).
  Matrix stacked(n * n, m);
  for (std::size_t i = 0; i < m; ++i) {
    const Matrix p = projector(w.subspace(i));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(r * n + c, i) = p(r, c);
  }
  const Matrix null = nullspace(stacked, tol);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Probe> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    ProbeKind kind = static_cast<ProbeKind>(t % 4);
    FusionFrame dual = random_extension(canon, rng, tol);

    if (kind == ProbeKind::expansion_variant) {
      const DualPair base(w, dual, tol);
      std::uniform_int_distribution<std::size_t> pick(0, m - 1);
      auto variants = expand_optimal_family(base, pick(rng), tol, 0);
      if (variants.empty()) {
        kind = ProbeKind::extension;
      } else {
        std::uniform_int_distribution<std::size_t> which(0, variants.size() - 1);
        dual = std::move(variants[which(rng)].family);
      }
    } else if (kind == ProbeKind::lift) {
      dual = lift_to_component_preserving(DualPair(w, dual, tol), tol);
    } else if (kind == ProbeKind::weight_reallocation) {
      if (null.cols() == 0) {
        kind = ProbeKind::extension;
      } else {
        Vector z = null * gaussian_vector(null.cols(), rng);
        z *= 1.0 / z.norm();
        double limit = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
          const double wi2 = w.weight(i) * w.weight(i);
          if (z[i] < 0.0) limit = std::min(limit, wi2 / -z[i]);
        }
        if (!std::isfinite(limit)) limit = 1.0;
        const double s = 0.999 * unit(rng) * limit;
        std::vector<double> nu(m);
        for (std::size_t i = 0; i < m; ++i) {
          const double wi = w.weight(i);
          nu[i] = (wi * wi + s * z[i]) / wi;
        }
        dual = dual.with_weights(std::move(nu));
      }
    }

    if (DualPair(w, dual, tol).duality_residual() <= tol.residual_eps) {
      out.push_back({kind, std::move(dual)});
    }
  }
  return out;
}

Refutation refute_by_probes(const FusionFrame& w, std::size_t count, std::uint64_t seed, std::size_t r,
                            NormKind norm, const Tolerance& tol, double slack) {
  Refutation out;
  out.canonical_value = worst_case_error(DualPair::canonical(w, tol), r, norm, tol).worst_value;
  out.best_value = out.canonical_value;
  const double threshold = out.canonical_value - slack * std::max(1.0, out.canonical_value);
  for (auto& probe : probe_duals(w, count, seed, tol)) {
    const double value = worst_case_error(DualPair(w, probe.dual, tol), r, norm, tol).worst_value;
    ++out.probes_evaluated;
    if (value < out.best_value) {
      out.best_value = value;
      if (value < threshold) out.witness = probe;
    }
  }
  out.refuted = out.witness.has_value();
  return out;
}

}  // namespace fusionopt
