#include <gtest/gtest.h>

#include "causal/gns.hpp"
#include "causal/random.hpp"
#include "support.hpp"

using namespace causal;
using namespace causal::testing;

namespace {

std::size_t brute_count(const FreeProduct& alg, std::size_t max_len) {
  // Enumerate factor sequences explicitly.
  std::size_t total = 1;
  std::vector<std::pair<int, std::size_t>> frontier;  // (last factor, words ending there)
  for (const auto& [f, spec] : alg.factors()) frontier.emplace_back(f, static_cast<std::size_t>(spec.basis_size()));
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::pair<int, std::size_t>> next;
    for (const auto& [f, count] : frontier) {
      total += count;
      for (const auto& [g, spec] : alg.factors())
        if (g != f) next.emplace_back(g, count * static_cast<std::size_t>(spec.basis_size()));
    }
    frontier = std::move(next);
  }
  return total;
}

HomState hom_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FreeProduct alg = FreeProduct::with_dims({{1, 2}, {2, 2}});
  auto images = random_hom_images(alg, 4, rng);
  return HomState(std::move(alg), std::move(images), random_state(4, rng));
}

}  // namespace

TEST(WordBasis, CountMatchesFormula) {
  for (const auto& alg : {sequential_algebra(2), sequential_algebra(3), switch_algebra(2)}) {
    for (std::size_t len = 0; len <= 2; ++len) {
      const auto basis = WordBasis::build(alg, len);
      EXPECT_EQ(basis.size(), WordBasis::expected_size(alg, len));
      EXPECT_EQ(basis.size(), brute_count(alg, len));
    }
  }
  EXPECT_EQ(WordBasis::expected_size(sequential_algebra(2), 2), 25u);
  EXPECT_EQ(WordBasis::expected_size(switch_algebra(2), 2), 865u);
}

TEST(WordBasis, OrderedUniqueReduced) {
  const auto basis = WordBasis::build(FreeProduct::with_dims({{1, 2}, {2, 3}, {3, 2}}), 3);
  EXPECT_TRUE(basis[0].empty());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    EXPECT_TRUE(is_reduced(basis[i]));
    EXPECT_EQ(basis.find(basis[i]), i);
    if (i > 0) {
      EXPECT_LT(basis[i - 1], basis[i]);
    }
  }
  EXPECT_EQ(basis.count_up_to(0), 1u);
  EXPECT_EQ(basis.count_up_to(1), 1u + 3 + 8 + 3);
  EXPECT_FALSE(basis.find(Word{{1, 0}, {1, 1}}).has_value());
}

TEST(Gram, UnitBasisIsOne) {
  std::mt19937_64 rng(1);
  const SwitchState s(random_switch(2, rng));
  const auto basis = WordBasis::build(s.algebra(), 0);
  const Matrix g = gram(s, basis);
  ASSERT_EQ(g.rows(), 1);
  EXPECT_NEAR(std::abs(g(0, 0) - 1.0), 0.0, 1e-12);
}

TEST(Gram, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(2);
  const FuzzState s(random_fuzz(2, rng));
  const auto basis = WordBasis::build(s.algebra(), 1);
  const Matrix g1 = gram(s, basis, 1);
  const Matrix g3 = gram(s, basis, 3);
  EXPECT_TRUE((g1 - g3).isZero(0.0));
}

TEST(Gram, HermitianAndPsdForEveryFamily) {
  std::mt19937_64 rng(3);
  const SequentialState seq(random_sequential(2, rng));
  const SwitchState sw(random_switch(2, rng));
  const FuzzState fz(random_fuzz(2, rng));
  const SuperspacetimeState sst(random_superspacetime(2, rng));
  for (const GeneralizedState* s : std::initializer_list<const GeneralizedState*>{&seq, &sw, &fz, &sst}) {
    const auto basis = WordBasis::build(s->algebra(), s == &seq ? 2 : 1);
    const Matrix g = gram(*s, basis);
    EXPECT_LE((g - g.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    const NullSpace ns = null_space(g);
    EXPECT_GE(ns.min_eigenvalue, -1e-8);
    EXPECT_EQ(ns.null_rank + static_cast<std::size_t>(ns.quotient_basis.cols()), basis.size());
  }
}

TEST(NullSpace, Examples) {
  EXPECT_EQ(null_space(Matrix::Identity(3, 3)).null_rank, 0u);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  const NullSpace ns = null_space(d);
  EXPECT_EQ(ns.null_rank, 1u);
  ASSERT_EQ(ns.quotient_basis.cols(), 1);
  // Quotient basis is G-orthonormal.
  EXPECT_NEAR(std::abs((ns.quotient_basis.adjoint() * d * ns.quotient_basis)(0, 0) - 1.0), 0.0, 1e-14);
}

TEST(NullSpace, DiagnosesBrokenGram) {
  Matrix g = Matrix::Identity(2, 2);
  g(0, 1) = 0.5;
  try {
    null_space(g);
    FAIL();
  } catch (const GnsError& e) {
    EXPECT_NE(std::string(e.what()).find("hermitian"), std::string::npos);
  }
  g = Matrix::Identity(2, 2);
  g(1, 1) = -0.1;
  try {
    null_space(g);
    FAIL();
  } catch (const GnsError& e) {
    EXPECT_NE(std::string(e.what()).find("positive semidefinite"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("min eigenvalue"), std::string::npos) << e.what();
  }
}

TEST(NullSpace, RankAgreesWithPivotedQr) {
  std::mt19937_64 rng(4);
  const SequentialState s(random_sequential(2, rng));
  const auto basis = WordBasis::build(s.algebra(), 2);
  const Matrix g = gram(s, basis);
  const NullSpace ns = null_space(g);
  Eigen::ColPivHouseholderQR<Matrix> qr(g);
  qr.setThreshold(1e-8);
  EXPECT_EQ(ns.null_rank, basis.size() - static_cast<std::size_t>(qr.rank()));
}

TEST(LeftIdeal, VacuousWithoutNullVectors) {
  const HomState s = hom_state(5);
  const auto basis = WordBasis::build(s.algebra(), 1);
  const auto report = check_left_ideal(s, basis, gram(s, basis));
  EXPECT_EQ(report.null_vectors, 0u);
  EXPECT_EQ(report.max_violation, 0.0);
  EXPECT_TRUE(report.passed(1e-8));
}

TEST(LeftIdeal, FlagsAdversarialFunctional) {
  const ParityState s(FreeProduct::with_dims({{1, 2}, {2, 2}}));
  const auto basis = WordBasis::build(s.algebra(), 2);
  const auto report = check_left_ideal(s, basis, gram(s, basis));
  EXPECT_GT(report.null_vectors, 0u);
  EXPECT_GT(report.max_violation, 0.5);
  EXPECT_FALSE(report.passed(1e-8));
  EXPECT_TRUE(report.worst_generator.has_value());
}

TEST(LeftIdeal, SequentialFamilyIsMeasuredNotAssumed) {
  // The sequential kernel only sees A1 U A2 psi, so a y letter applied on the
  // left of a null element generally leaves the null space.
  std::mt19937_64 rng(6);
  const SequentialState s(random_sequential(2, rng));
  const auto basis = WordBasis::build(s.algebra(), 2);
  const GnsResult r = build_gns(s, basis);
  EXPECT_GT(r.left_ideal.null_vectors, 0u);
  EXPECT_GT(r.left_ideal.max_violation, 1e-8);
  EXPECT_TRUE(r.rep.empty());
  EXPECT_THROW(represent(s, basis, r, {1, 0}), GnsError);
  EXPECT_THROW(reconstruct_check(s, basis, r), GnsError);
}

TEST(Gns, HomomorphismStatePipeline) {
  const HomState s = hom_state(7);
  const auto basis = WordBasis::build(s.algebra(), 2);
  const GnsResult r = build_gns(s, basis, {tol::null_space, 2});
  EXPECT_LE((r.gram - r.gram.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GE(r.quotient.min_eigenvalue, -1e-8);
  EXPECT_LE(r.quotient_dim(), 4u);
  EXPECT_GT(r.quotient.null_rank, 0u);
  EXPECT_LE(r.left_ideal.max_violation, 1e-8);
  ASSERT_EQ(r.rep.size(), 6u);
  EXPECT_NEAR(std::abs(r.omega.squaredNorm() - 1.0), 0.0, 1e-8);
  EXPECT_LE(reconstruct_check(s, basis, r), 1e-7);
  // pi(letter) [e] = [letter].
  for (const auto& [l, m] : r.rep) {
    Vector coeffs = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
    coeffs(static_cast<Eigen::Index>(*basis.find(Word{l}))) = 1.0;
    EXPECT_LE((m * r.omega - quotient_coords(r, coeffs)).norm(), 1e-8);
  }
  // A genuine state: pi is a *-representation here, so the defect is small.
  EXPECT_LE(star_defect(r), 1e-6);
}

TEST(Gns, StarDefectIsReportedNotAsserted) {
  // A non-trivial metric keeps the left-ideal property but pi stops being a
  // *-representation.
  std::mt19937_64 rng(8);
  FreeProduct alg = FreeProduct::with_dims({{1, 2}, {2, 2}});
  auto images = random_hom_images(alg, 4, rng);
  const Matrix s_ = random_ginibre(4, 4, rng) + 3.0 * Matrix::Identity(4, 4);
  const HomState s(std::move(alg), std::move(images), random_state(4, rng), s_.adjoint() * s_);
  const auto basis = WordBasis::build(s.algebra(), 2);
  const GnsResult r = build_gns(s, basis);
  ASSERT_TRUE(r.left_ideal.passed(1e-8));
  EXPECT_LE(reconstruct_check(s, basis, r), 1e-7);
  EXPECT_GT(star_defect(r), 1e-6);
}

TEST(Gns, UnitOnlyReconstruction) {
  const HomState s = hom_state(9);
  const auto basis = WordBasis::build(s.algebra(), 0);
  const GnsResult r = build_gns(s, basis);
  EXPECT_NEAR(std::abs(1.0 - r.omega.squaredNorm()), 0.0, 1e-8);
}
