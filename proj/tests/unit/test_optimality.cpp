#include "frames.hpp"
#include "oracle.hpp"
#include "random.hpp"

#include "fusionopt/error.hpp"
#include "fusionopt/optimality.hpp"

#include <doctest.h>

#include <cmath>

using namespace fusionopt;

namespace {

using Idx = std::vector<std::size_t>;

Eigen::MatrixXd stacked(const FusionFrame& w, const Idx& members) {
  Eigen::MatrixXd out(w.ambient_dim(), 0);
  for (std::size_t i : members) {
    const Eigen::MatrixXd b = oracle::to_eigen(w.subspace(i).basis());
    Eigen::MatrixXd grown(w.ambient_dim(), out.cols() + b.cols());
    grown << out, b;
    out = grown;
  }
  return out;
}

// W = {e₁ (ω=1), e₁ (ω=2), e₂, e₂} in ℝ²: moving weight between the two
// copies of e₁ lowers the worst single loss below the canonical one.
FusionFrame doubled_axes() {
  const auto a = span_of(2, {Vector{1, 0}});
  const auto b = span_of(2, {Vector{0, 1}});
  return FusionFrame(2, {{a, 1.0}, {a, 2.0}, {b, 1.0}, {b, 1.0}});
}

}  // namespace

TEST_CASE("canonical certificate for the overlapping frame") {
  const auto c = certify_canonical_optimal(fixtures::overlap_r4());
  CHECK(c.certified());
  CHECK(c.c_value == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(c.lambda1 == Idx{0, 1});
  CHECK(c.lambda2 == Idx{2});
  CHECK(c.h1_dim == 3);
  CHECK(c.h2_dim == 1);
  CHECK(c.intersection_dim == 0);
  CHECK(c.riesz_side == RieszSide::lambda2);
  CHECK(c.is_nontrivial);
}

TEST_CASE("trivial frames are accepted and flagged") {
  const auto w = FusionFrame(2, {{Subspace::full(2), 1.0}, {Subspace::full(2), 1.0}});
  const auto c = certify_canonical_optimal(w);
  CHECK_FALSE(c.is_nontrivial);
  CHECK_FALSE(c.notes.empty());
  CHECK_FALSE(certify_tight_uniform(w, w).is_nontrivial);
}

TEST_CASE("certificate hypotheses agree with rank computations") {
  gen::Rng rng(61);
  int certified = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = rng.index(2, 5);
    const auto w = rng.coin() ? gen::random_frame(rng, n, rng.index(2, 4))
                              : gen::random_riesz_basis(rng, n, rng.index(2, n));
    const auto c = certify_canonical_optimal(w);
    // Λ₁ ∪ Λ₂ partitions the members.
    Idx all = c.lambda1;
    all.insert(all.end(), c.lambda2.begin(), c.lambda2.end());
    std::sort(all.begin(), all.end());
    Idx expected(w.size());
    for (std::size_t i = 0; i < expected.size(); ++i) expected[i] = i;
    CHECK(all == expected);

    const Eigen::MatrixXd h1 = stacked(w, c.lambda1);
    const Eigen::MatrixXd h2 = stacked(w, c.lambda2);
    Eigen::MatrixXd both(n, h1.cols() + h2.cols());
    both << h1, h2;
    const std::size_t r1 = oracle::rank(h1);
    const std::size_t r2 = c.lambda2.empty() ? 0 : oracle::rank(h2);
    CHECK(c.h1_dim == r1);
    CHECK(c.h2_dim == r2);
    CHECK(c.intersection_dim == r1 + r2 - oracle::rank(both));
    const bool riesz2 = static_cast<std::size_t>(h2.cols()) == r2;
    CHECK(c.certified() == (c.intersection_dim == 0 && riesz2));
    certified += c.certified();
  }
  CHECK(certified > 10);
}

TEST_CASE("dual certificate") {
  const auto w = fixtures::overlap_r4();
  const auto c = certify_dual_optimal(DualPair::canonical(w));
  CHECK(c.c_value == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(c.lambda1 == Idx{0, 1});
  CHECK(c.riesz_side == RieszSide::lambda1);
  // W₁ + W₂ has dimension 3 < 2 + 2, so the Λ₁ side is not Riesz.
  CHECK_FALSE(c.lambda_side_riesz);
  CHECK_FALSE(c.certified());
  CHECK_THROWS_AS(certify_dual_optimal(DualPair(fixtures::preserving_w(), fixtures::preserving_v())), NotADualError);

  const auto r = certify_dual_optimal(DualPair(fixtures::orthonormal_r3(), fixtures::orthonormal_r3_extension()));
  CHECK(r.certified());
}

TEST_CASE("tight certificate") {
  const auto axes = FusionFrame::uniform(3, {span_of(3, {Vector{1, 0, 0}}), span_of(3, {Vector{0, 1, 0}}),
                                             span_of(3, {Vector{0, 0, 1}})});
  const auto c = certify_tight_uniform(axes, axes);
  CHECK(c.certified());
  REQUIRE(c.d1_bound);
  CHECK(*c.d1_bound == doctest::Approx(1.0));
  CHECK_FALSE(certify_tight_uniform(fixtures::overlap_r4(), fixtures::overlap_r4()).certified());
  // Not a dual: refused, not thrown.
  CHECK_FALSE(certify_tight_uniform(axes, FusionFrame::uniform(3, {Subspace::zero(3), Subspace::zero(3),
                                                                   Subspace::zero(3)}))
                  .certified());
}

TEST_CASE("Riesz basis certificate") {
  CHECK(certify_riesz_basis(DualPair(fixtures::orthonormal_r3(), fixtures::orthonormal_r3_extension())).certified());
  CHECK_FALSE(certify_riesz_basis(DualPair::canonical(fixtures::overlap_r4())).certified());
}

TEST_CASE("expansion of the canonical pair at the one dimensional member") {
  const auto pair = DualPair::canonical(fixtures::overlap_r4());
  const auto variants = expand_optimal_family(pair, 2);
  REQUIRE(variants.size() == 3);
  bool has_e1 = false;
  for (const auto& v : variants) {
    CHECK(v.kind == VariantKind::extended);
    CHECK(v.is_dual);
    CHECK(v.values_preserved);
    CHECK(v.family.subspace(2).dim() == 2);
    REQUIRE(v.direction);
    has_e1 = has_e1 || std::abs(std::abs((*v.direction)[0]) - 1.0) < 1e-12;
    CHECK(worst_case_error(DualPair(pair.primal(), v.family), 1, NormKind::frobenius).worst_value ==
          doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  }
  CHECK(has_e1);
  CHECK_THROWS_AS(expand_optimal_family(pair, 3), IndexError);
}

TEST_CASE("zero component and trimmed variants") {
  const auto a = span_of(2, {Vector{1, 0}});
  const auto b = span_of(2, {Vector{0, 1}});
  const auto w = FusionFrame::uniform(2, {a, a, b});

  // V₁ = (S⁻¹W₁)^⊥ carries no error at all.
  const DualPair zero(w, FusionFrame(2, {{b, 1.0}, {a, 2.0}, {b, 1.0}}));
  REQUIRE(verify_dual(zero).is_dual);
  const auto zv = expand_optimal_family(zero, 0);
  REQUIRE_FALSE(zv.empty());
  CHECK(zv[0].kind == VariantKind::zero_component);
  CHECK(zv[0].family.subspace(0).is_zero());
  CHECK(zv[0].is_dual);
  CHECK(zv[0].values_preserved);

  const DualPair whole(w, FusionFrame::uniform(2, {Subspace::full(2), a, b}));
  REQUIRE(verify_dual(whole).is_dual);
  const auto tv = expand_optimal_family(whole, 0);
  REQUIRE_FALSE(tv.empty());
  CHECK(tv[0].kind == VariantKind::trimmed);
  CHECK(subspace_equal(tv[0].family.subspace(0), a));
  CHECK(tv[0].is_dual);
  CHECK(tv[0].values_preserved);
}

TEST_CASE("expansion preserves duality and values on random pairs") {
  gen::Rng rng(62);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = rng.index(2, 5);
    const auto w = gen::random_frame(rng, n, rng.index(2, 4));
    const DualPair pair(w, gen::random_dual(rng, w));
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (const auto& v : expand_optimal_family(pair, i)) {
        CHECK(v.is_dual);
        CHECK(v.values_preserved);
        CHECK(v.max_value_deviation < 1e-9);
        CHECK(verify_dual(DualPair(w, v.family)).is_dual);
      }
    }
  }
}

TEST_CASE("Parseval optimal family of the orthonormal R3 basis") {
  const auto w = fixtures::orthonormal_r3();
  const auto ext = fixtures::orthonormal_r3_extension().subspaces();
  const auto fam = parseval_optimal_family(w, ext, {}, standard_basis(3));
  CHECK(fam.parseval_residual < 1e-12);
  REQUIRE(fam.duals.size() == 2);
  for (double r : fam.dual_residuals) CHECK(r < 1e-12);
  for (double d : fam.d1_operator) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
  const auto f = fam.frame.compacted(1e-12);
  REQUIRE(f.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(max_abs_diff(f[k], fixtures::orthonormal_r3_expected_f()[k]) < 1e-12);

  // Default basis: (1,0,1)/√2, (1,0,−1)/√2, e₂. Three nonzero vectors, same d₁.
  const auto own = parseval_optimal_family(w, ext);
  CHECK(own.frame.compacted(1e-12).size() == 3);
  for (double d : own.d1_operator) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(parseval_optimal_family(fixtures::overlap_r4(), fixtures::overlap_r4().subspaces()),
                  PreconditionError);
  CHECK_THROWS_AS(parseval_optimal_family(w, {Subspace::zero(3), w.subspace(1)}), PreconditionError);
}

TEST_CASE("Parseval optimal family on random Riesz bases") {
  gen::Rng rng(63);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = rng.index(2, 6);
    const auto w = gen::random_riesz_basis(rng, n, rng.index(1, n), true);
    const auto root = spd_inv_sqrt(frame_operator(w));
    std::vector<Subspace> ext;
    for (const auto& s : w.subspaces()) {
      auto vs = image_subspace(root, s).basis_vectors();
      if (rng.coin()) vs.push_back(gen::random_vector(rng, n));
      ext.push_back(orthonormal_basis(n, vs));
    }
    const auto basis = parseval_family_basis(w);
    CHECK(is_orthonormal_columns(Matrix::from_columns(n, basis)));
    const auto fam = parseval_optimal_family(w, ext);
    CHECK(fam.parseval_residual < 1e-9);
    for (double r : fam.dual_residuals) CHECK(r < 1e-9);
    for (double d : fam.d1_operator) CHECK(std::abs(d - 1.0) < 1e-9);
  }
}

TEST_CASE("Riesz bases: every dual has the canonical block errors") {
  gen::Rng rng(64);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = rng.index(3, 6);
    const auto w = gen::random_riesz_basis(rng, n, rng.index(2, n));
    const auto basis = gen::random_unitary(rng, n).columns();
    const auto f = bridge_fusion_to_discrete(w, basis, BridgeMode::canonical_weighted);
    for (const auto& c : riesz_bridge_partial_optimal(w, basis, gen::random_perturbation(rng, f)))
      CHECK(std::abs(c.perturbed - c.canonical) < 1e-9);
  }
  const auto w = fixtures::overlap_r4();
  CHECK_THROWS_AS(riesz_bridge_partial_optimal(w, standard_basis(4), {}), PreconditionError);
}

TEST_CASE("transport by unitary and invertible maps") {
  const auto pair = DualPair::canonical(fixtures::overlap_r4());
  gen::Rng rng(65);
  const Matrix u = gen::random_unitary(rng, 4);
  const auto moved = transport_by_unitary(pair, u);
  CHECK(verify_dual(moved).is_dual);
  const auto a = worst_case_error(pair, 1, NormKind::frobenius);
  const auto b = worst_case_error(moved, 1, NormKind::frobenius);
  CHECK(b.worst_value == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(a.argmax_subsets == b.argmax_subsets);
  CHECK_THROWS_AS(transport_by_unitary(pair, gen::random_invertible(rng, 4) * 3.0), PreconditionError);

  const Matrix d = Matrix::diagonal(std::vector<double>{1, 1, 1, 2});
  CHECK(invariance_failures(pair, d).empty());
  CHECK(verify_dual(transport_by_invertible(pair, d)).is_dual);
  CHECK_FALSE(invariance_failures(pair, gen::random_invertible(rng, 4)).empty());
  CHECK_THROWS_AS(transport_by_invertible(pair, gen::random_invertible(rng, 4)), PreconditionError);
  CHECK_THROWS_AS(transport_by_invertible(pair, Matrix::diagonal(std::vector<double>{1, 1, 1, 0})),
                  PreconditionError);
}

TEST_CASE("probe duals are verified duals") {
  gen::Rng rng(66);
  const auto w = gen::random_frame(rng, 4, 4);
  const auto probes = probe_duals(w, 40, 7);
  CHECK(probes.size() == 40);
  for (const auto& p : probes) CHECK(verify_dual(DualPair(w, p.dual)).is_dual);
  // Same seed, same probes.
  const auto again = probe_duals(w, 40, 7);
  for (std::size_t k = 0; k < probes.size(); ++k) {
    CHECK(probes[k].kind == again[k].kind);
    CHECK(probes[k].dual.weights() == again[k].dual.weights());
  }
}

TEST_CASE("probes refute an uncertified canonical dual") {
  const auto w = doubled_axes();
  CHECK_FALSE(certify_canonical_optimal(w).certified());
  const auto r = refute_by_probes(w, 60, 3);
  CHECK(r.canonical_value == doctest::Approx(0.8));
  CHECK(r.refuted);
  CHECK(r.best_value < 0.8 - 1e-6);
  CHECK(r.best_value >= 0.5 - 1e-9);
  REQUIRE(r.witness);
  CHECK(r.witness->kind == ProbeKind::weight_reallocation);
  CHECK(verify_dual(DualPair(w, r.witness->dual)).is_dual);
}

TEST_CASE("certified frames are never refuted") {
  gen::Rng rng(67);
  int checked = 0;
  for (int t = 0; t < 60 && checked < 12; ++t) {
    const std::size_t n = rng.index(2, 5);
    const auto w = rng.coin() ? gen::random_frame(rng, n, rng.index(2, 4))
                              : gen::random_riesz_basis(rng, n, rng.index(2, n));
    if (!certify_canonical_optimal(w).certified()) continue;
    ++checked;
    const auto r = refute_by_probes(w, 200, 1000 + t);
    CHECK(r.probes_evaluated == 200);
    CHECK_FALSE(r.refuted);
  }
  CHECK(checked == 12);
}
