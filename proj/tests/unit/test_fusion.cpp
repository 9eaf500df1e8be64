#include "frames.hpp"
#include "oracle.hpp"
#include "random.hpp"

#include "fusionopt/error.hpp"
#include "fusionopt/fusion.hpp"

#include <doctest.h>

#include <cmath>

using namespace fusionopt;

TEST_CASE("fusion frame operator of the overlapping R4 frame") {
  const auto w = fixtures::overlap_r4();
  CHECK(max_abs_diff(frame_operator(w), Matrix::diagonal(std::vector<double>{1, 2, 1, 1})) < 1e-12);
  const auto b = frame_bounds(w);
  CHECK(b.lower == doctest::Approx(1.0));
  CHECK(b.upper == doctest::Approx(2.0));
}

TEST_CASE("fusion frame operator of the seven-vector frame has the expected inverse") {
  const Matrix inv = spd_inverse(frame_operator(fixtures::seven_vectors_r3()));
  const Matrix expected = Matrix::from_rows({{5.0 / 7, 1.0 / 7, 0}, {1.0 / 7, 3.0 / 7, 0}, {0, 0, 1}});
  CHECK(max_abs_diff(inv, expected) < 1e-12);
}

TEST_CASE("classification") {
  const auto c1 = classify(fixtures::orthonormal_r3());
  CHECK(c1.is_frame);
  CHECK(c1.is_parseval);
  CHECK(c1.is_riesz_fusion_basis);
  CHECK(c1.is_orthonormal_fusion_basis);

  const auto c2 = classify(fixtures::overlap_r4());
  CHECK(c2.is_frame);
  CHECK_FALSE(c2.is_tight);
  CHECK_FALSE(c2.is_riesz_fusion_basis);
  CHECK(c2.is_nontrivial);

  const auto c3 = classify(FusionFrame::uniform(3, {span_of(3, {Vector{1, 0, 0}})}));
  CHECK_FALSE(c3.is_frame);
  CHECK(c3.lower_bound == doctest::Approx(0.0));

  const auto trivial = classify(FusionFrame::uniform(2, {Subspace::full(2)}));
  CHECK(trivial.is_frame);
  CHECK_FALSE(trivial.is_nontrivial);
}

TEST_CASE("classification invariants on random frames") {
  gen::Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const auto w = rng.coin() ? gen::random_frame(rng, rng.index(2, 6), rng.index(1, 5))
                              : gen::random_riesz_basis(rng, rng.index(2, 6), rng.index(1, 4), rng.coin());
    const auto c = classify(w);
    CHECK(c.lower_bound <= c.upper_bound + 1e-12);
    if (c.is_parseval) CHECK(c.is_tight);
    if (c.is_orthonormal_fusion_basis) CHECK(c.is_riesz_fusion_basis);
    const auto s = frame_operator(w);
    CHECK(is_symmetric(s, 1e-12));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(oracle::to_eigen(s));
    CHECK(eig.eigenvalues().minCoeff() > -1e-12);
    CHECK(c.is_frame == (eig.eigenvalues().minCoeff() > 1e-9));
    CHECK((oracle::to_eigen(s) - oracle::frame_operator(w)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("random Riesz bases are recognised") {
  gen::Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    const auto w = gen::random_riesz_basis(rng, rng.index(2, 6), rng.index(1, 4));
    CHECK(classify(w).is_riesz_fusion_basis);
    std::vector<std::size_t> all(w.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    CHECK(is_riesz_for_span(w, all));
    const auto rc = riesz_constants(w);
    CHECK(rc.lower > 0.0);
  }
  CHECK(is_riesz_for_span(fixtures::overlap_r4(), std::vector<std::size_t>{}));
  CHECK_FALSE(is_riesz_for_span(fixtures::overlap_r4(), std::vector<std::size_t>{0, 1}));
  CHECK(is_riesz_for_span(fixtures::overlap_r4(), std::vector<std::size_t>{0, 2}));
}

TEST_CASE("canonical dual subspaces") {
  const auto w = fixtures::overlap_r4();
  const auto d = canonical_dual(w);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(subspace_equal(d.subspace(i), w.subspace(i)));

  // S⁻¹(a,b,c) = (a,b,c/2) leaves both members in place.
  const auto p = fixtures::preserving_w();
  CHECK(max_abs_diff(spd_inverse(frame_operator(p)), Matrix::diagonal(std::vector<double>{1, 1, 0.5})) < 1e-12);
  const auto pd = canonical_dual(p);
  CHECK(subspace_equal(pd.subspace(0), p.subspace(0)));
  CHECK(subspace_equal(pd.subspace(1), p.subspace(1)));

  CHECK_THROWS_AS(canonical_dual(FusionFrame::uniform(3, {span_of(3, {Vector{1, 0, 0}})})), NotAFrameError);
}

TEST_CASE("canonical dual of the canonical dual of a Parseval frame") {
  gen::Rng rng(23);
  const auto o = fixtures::orthonormal_r3();
  const auto od = canonical_dual(canonical_dual(o));
  for (std::size_t i = 0; i < o.size(); ++i) CHECK(subspace_equal(od.subspace(i), o.subspace(i)));
  const auto b = gen::random_riesz_basis(rng, 5, 3, true);
  const auto p = transform(b, spd_inv_sqrt(frame_operator(b)));
  REQUIRE(classify(p).is_parseval);
  const auto dd = canonical_dual(canonical_dual(p));
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(subspace_equal(dd.subspace(i), p.subspace(i)));
}

TEST_CASE("frame operator under unitary maps") {
  gen::Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = rng.index(2, 6);
    const auto w = gen::random_frame(rng, n, rng.index(1, 5));
    const Matrix u = gen::random_unitary(rng, n);
    CHECK(max_abs_diff(frame_operator(transform(w, u)), u * frame_operator(w) * u.transpose()) < 1e-9);
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(FusionFrame(3, {{Subspace::full(2), 1.0}}), DimensionError);
  CHECK_THROWS_AS(FusionFrame(3, {{Subspace::full(3), 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(fixtures::overlap_r4().with_weights({1, 1}), DimensionError);
}
