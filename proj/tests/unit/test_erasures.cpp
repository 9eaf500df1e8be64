#include "frames.hpp"
#include "oracle.hpp"
#include "random.hpp"

#include "fusionopt/erasures.hpp"
#include "fusionopt/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace fusionopt;

namespace {

// Independent subset walk: increments a bitmask and keeps those of weight r.
std::vector<std::vector<std::size_t>> subsets_by_bitmask(std::size_t m, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < m; ++k)
      if (mask & (1u << k)) s.push_back(k);
    if (s.size() == r) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("masks") {
  const ErasureMask mask(5, {3, 1});
  CHECK(mask.erased() == std::vector<std::size_t>{1, 3});
  CHECK(mask.contains(3));
  CHECK_FALSE(mask.contains(0));
  CHECK_THROWS_AS(ErasureMask(3, {3}), IndexError);
  CHECK_THROWS_AS(ErasureMask(3, {1, 1}), IndexError);
  CHECK(ErasureMask(3, {}).size() == 0);

  const auto f = bridge_fusion_to_discrete(fixtures::overlap_r4(), standard_basis(4), BridgeMode::canonical_weighted);
  CHECK(ErasureMask::member_block(f, 2).erased() == std::vector<std::size_t>{8, 9, 10, 11});
  CHECK_THROWS_AS(ErasureMask::member_block(DiscreteFrame(1, {Vector{1}}), 0), PreconditionError);
}

TEST_CASE("binomial and subset order") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(40, 20) == 137846528820ULL);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);
  for (std::size_t m = 1; m <= 12; ++m) {
    for (std::size_t r = 0; r <= m; ++r) {
      std::vector<std::vector<std::size_t>> seen;
      for_each_subset(m, r, [&](std::span<const std::size_t> s) { seen.emplace_back(s.begin(), s.end()); });
      CHECK(seen == subsets_by_bitmask(m, r));
      CHECK(seen.size() == binomial(m, r));
    }
  }
}

TEST_CASE("error operator for one erased member") {
  const auto pair = DualPair::canonical(fixtures::overlap_r4());
  const Matrix e1 = fusion_error_operator(pair, ErasureMask(3, {0}));
  CHECK(max_abs_diff(e1, Matrix::diagonal(std::vector<double>{1, 0.5, 0, 0})) < 1e-12);
  CHECK(frobenius_norm(e1) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(max_abs_diff(fusion_error_operator(pair, ErasureMask(3, {})), Matrix(4, 4)) == 0.0);
  CHECK(max_abs_diff(fusion_error_operator(pair, ErasureMask(3, {0, 1, 2})), Matrix::identity(4)) < 1e-12);
}

TEST_CASE("worst case for the overlapping frame") {
  const auto w = fixtures::overlap_r4();
  const auto rep = worst_case_error(DualPair::canonical(w), 1, NormKind::frobenius);
  CHECK(rep.worst_value == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(rep.argmax_subsets == std::vector<std::vector<std::size_t>>{{0}, {1}});

  gen::Rng rng(51);
  for (int t = 0; t < 10; ++t) {
    std::array<double, 7> xi{};
    for (auto& x : xi) x = rng.normal();
    const DualPair pair(w, fixtures::overlap_r4_dual(xi));
    CHECK(worst_case_error(pair, 1, NormKind::frobenius).worst_value == doctest::Approx(std::sqrt(1.25)).epsilon(1e-10));
  }

  CHECK_THROWS_AS(worst_case_error(DualPair::canonical(w), 3, NormKind::frobenius), IndexError);
  CHECK_THROWS_AS(worst_case_error(DualPair::canonical(w), 0, NormKind::frobenius), IndexError);
}

TEST_CASE("enumeration cap") {
  std::vector<Matrix> comps(40, Matrix::identity(1));
  CHECK_THROWS_AS(worst_over_subsets(comps, 20, NormKind::frobenius), EnumerationLimitError);
  std::vector<Matrix> ok(30, Matrix::identity(1));
  CHECK(worst_over_subsets(ok, 2, NormKind::frobenius).worst_value == doctest::Approx(2.0));
}

TEST_CASE("discrete error operators on the seven-vector frame") {
  const auto f = bridge_fusion_to_discrete(fixtures::seven_vectors_r3(), standard_basis(3),
                                           BridgeMode::canonical_weighted)
                     .compacted(1e-12);
  const auto g = discrete_canonical_dual(f);
  const Matrix e7 = discrete_error_operator(f, g, ErasureMask(7, {6}));
  CHECK(max_abs_diff(e7, outer(Vector{0, 0, 1}, Vector{0, 0, 1})) < 1e-12);
  for (auto kind : {NormKind::frobenius, NormKind::operator_norm}) {
    const auto rep = discrete_worst_case(f, g, 1, kind);
    CHECK(rep.worst_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.argmax_subsets == std::vector<std::vector<std::size_t>>{{6}});
  }
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      const ErasureMask mask(7, {i, j});
      const auto h = halving_dual(f, mask.erased());
      REQUIRE(h.dual);
      const double canonical = partial_erasure_error(f, g, mask, NormKind::frobenius);
      const double halved = partial_erasure_error(f, *h.dual, mask, NormKind::frobenius);
      CHECK(halved == doctest::Approx(0.5 * canonical).epsilon(1e-9));
      CHECK(canonical > halved);
    }
  }
}

TEST_CASE("operator norm worst case for the orthonormal R3 basis") {
  const auto w = fixtures::orthonormal_r3();
  const auto basis = standard_basis(3);
  const auto f = bridge_fusion_to_discrete(w, basis, BridgeMode::parseval_sqrt);
  const auto g = bridge_dual_to_discrete(fixtures::orthonormal_r3_extension(), basis);
  CHECK(discrete_worst_case(f, f, 1, NormKind::operator_norm).worst_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(discrete_worst_case(f, g, 1, NormKind::operator_norm).worst_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fusion block equals bridged block") {
  const auto w = fixtures::overlap_r4();
  const auto pair = DualPair::canonical(w);
  const auto basis = standard_basis(4);
  const auto f = bridge_fusion_to_discrete(w, basis, BridgeMode::canonical_weighted);
  const auto g = bridge_dual_to_discrete(pair.dual_candidate(), basis);
  const double bridged = partial_erasure_error(f, g, ErasureMask::member_block(f, 2), NormKind::frobenius);
  CHECK(bridged == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bridged == doctest::Approx(partial_erasure_error(pair, ErasureMask(3, {2}), NormKind::frobenius)));
}

TEST_CASE("worst cases agree with a brute force oracle") {
  gen::Rng rng(52);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = rng.index(2, 5);
    const std::size_t m = rng.index(2, 8);
    const auto w = gen::random_frame(rng, n, m);
    const auto v = gen::random_dual(rng, w);
    const DualPair pair(w, v);
    const auto comps = oracle::components(w, v);
    const std::size_t r = rng.index(1, m - 1);
    for (auto kind : {NormKind::frobenius, NormKind::operator_norm}) {
      const auto rep = worst_case_error(pair, r, kind, {}, true);
      const auto ref = oracle::worst_case(comps, r, kind == NormKind::frobenius);
      CHECK(rep.worst_value == doctest::Approx(ref.value).epsilon(1e-9));
      CHECK(rep.per_subset_values.size() == binomial(m, r));
      double mx = 0.0;
      for (const auto& sv : rep.per_subset_values) mx = std::max(mx, sv.value);
      CHECK(rep.worst_value == mx);
    }
  }
}

TEST_CASE("erasure values are unitarily invariant") {
  gen::Rng rng(53);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = rng.index(2, 6);
    const std::size_t m = rng.index(2, 5);
    const auto w = gen::random_frame(rng, n, m);
    const DualPair pair(w, gen::random_dual(rng, w));
    const Matrix u = gen::random_unitary(rng, n);
    const DualPair moved(transform(w, u), transform(pair.dual_candidate(), u));
    for (std::size_t r = 1; r < m; ++r) {
      for (auto kind : {NormKind::frobenius, NormKind::operator_norm}) {
        const auto a = worst_case_error(pair, r, kind, {}, true);
        const auto b = worst_case_error(moved, r, kind, {}, true);
        for (std::size_t k = 0; k < a.per_subset_values.size(); ++k)
          CHECK(std::abs(a.per_subset_values[k].value - b.per_subset_values[k].value) < 1e-9);
      }
    }
  }
}

TEST_CASE("norm names") {
  CHECK(parse_norm_kind("frobenius") == NormKind::frobenius);
  CHECK(parse_norm_kind("operator") == NormKind::operator_norm);
  CHECK_FALSE(parse_norm_kind("spectral"));
  CHECK(to_string(NormKind::operator_norm) == "operator");
}
