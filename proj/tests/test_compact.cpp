#include <gtest/gtest.h>

#include "support.hpp"

using namespace padicprec;
using namespace testing_support;

namespace {

void expect_expansion_matches(const CompactAdjugate& ca, const QMatrix& q, long min_prec) {
  const LeVerrier o = leverrier(q);
  const PolyMatrix e = expand_compact(ca);
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.rows(); ++j) {
      EXPECT_TRUE(agrees(e(i, j), qpoly_rem(o.adjugate(i, j), o.chi))) << i << "," << j;
      EXPECT_GE(e(i, j).min_absprec(), min_prec);
    }
}

}  // namespace

TEST(Krylov, ZeroMatrix) {
  const auto c = make_ctx(5, 10);
  const std::size_t n = 4;
  std::vector<PadicElem> e1(n, PadicElem::zero(c));
  e1[0] = PadicElem::one(c);
  const PadicMatrix k = krylov_matrix(PadicMatrix(n, n, PadicElem::zero(c)), e1);
  QMatrix expect(n, n, Q(0));
  expect(0, 0) = 1;
  EXPECT_EQ(representatives(k), expect);
}

TEST(Krylov, MatchesPowersOnRandomInput) {
  std::mt19937_64 rng(2);
  const auto c = make_ctx(3, 10);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = static_cast<std::size_t>(rand_between(rng, 1, 7));
    const QMatrix a = random_int_matrix(rng, n, -5, 5);
    std::vector<PadicElem> v;
    QMatrix col(n, 1, Q(0));
    for (std::size_t i = 0; i < n; ++i) {
      col(i, 0) = rand_between(rng, -5, 5);
      v.push_back(PadicElem::from_rational(c, col(i, 0), kInf));
    }
    const QMatrix k = representatives(krylov_matrix(to_padic(c, a, kInf), v));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(k(i, j), col(j, 0));
      col = qmul(a, col);
    }
  }
}

TEST(Krylov, CompanionLeadingZeros) {
  const auto c = make_ctx(5, 10);
  const QPoly chi{Q(3), Q(1), Q(4), Q(2), Q(1)};
  const std::size_t n = 4;
  std::vector<PadicElem> e(n, PadicElem::zero(c));
  e[0] = PadicElem::one(c);
  const QMatrix k = representatives(krylov_matrix(to_padic(c, companion(chi), kInf), e));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < n - i; ++j) EXPECT_EQ(k(i, j), 0) << i << "," << j;
    EXPECT_EQ(k(i, n - i), -chi[0]);
  }
}

TEST(Compact, CompanionTwoByTwo) {
  const auto c = make_ctx(5, 20);
  const QPoly chi{Q(3), Q(2), Q(1)};
  const QMatrix q = companion(chi);
  Rng rng(1);
  const CompactAdjugate ca = compact_form(flat_matrix(c, q, 20), rng);
  EXPECT_TRUE(ca.krylov_alpha);
  EXPECT_TRUE(agrees(ca.alpha, QPoly{Q(2), Q(1)}));
  EXPECT_TRUE(agrees(ca.chi, chi));
  const PolyMatrix e = expand_compact(ca);
  // com(X - C) = [[X + a1, 1], [-a0, X]].
  EXPECT_TRUE(agrees(e(0, 0), QPoly{Q(2), Q(1)}));
  EXPECT_TRUE(agrees(e(0, 1), QPoly{Q(1)}));
  EXPECT_TRUE(agrees(e(1, 0), QPoly{Q(-3)}));
  EXPECT_TRUE(agrees(e(1, 1), QPoly{Q(0), Q(1)}));
}

TEST(Compact, IdentityIsNotCyclic) {
  const auto c = make_ctx(5, 20);
  Rng rng(1);
  try {
    (void)compact_form(flat_matrix(c, qidentity(2), 20), rng);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCyclic);
  }
}

TEST(Compact, RandomFiveByFive) {
  std::mt19937_64 gen(5);
  Rng rng(5);
  const auto c = make_ctx(5, 40);
  for (int t = 0; t < 5; ++t) {
    const QMatrix q = random_int_matrix(gen, 5, -20, 20);
    const CompactAdjugate ca = compact_form(flat_matrix(c, q, 40), rng);
    expect_expansion_matches(ca, q, 5);
    const QPoly chi = leverrier(q).chi;
    for (std::size_t k = 0; k + 1 < chi.size(); ++k) EXPECT_EQ(ca.alpha.coeff(k), ca.chi.coeff(k + 1));
  }
}

TEST(Compact, SingularUsesHankelFallback) {
  const auto c = make_ctx(3, 30);
  const QMatrix q = companion(QPoly{Q(0), Q(1), Q(2), Q(1)});
  Rng rng(3);
  const CompactAdjugate ca = compact_form(flat_matrix(c, q, 30), rng);
  EXPECT_FALSE(ca.krylov_alpha);
  expect_expansion_matches(ca, q, 5);
}

TEST(Compact, ConjugationByInvertibleMatrix) {
  const auto c = make_ctx(5, 30);
  const QMatrix q = companion(QPoly{Q(2), Q(3), Q(1), Q(1)});
  Rng rng(4);
  const CompactAdjugate ca = compact_form(flat_matrix(c, q, 30), rng);
  const QMatrix id = qidentity(3);
  const CompactAdjugate same = conjugate_compact(ca, to_padic(c, id, kInf));
  expect_expansion_matches(same, q, 5);
  QMatrix perm(3, 3, Q(0));
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1;
  const CompactAdjugate moved = conjugate_compact(ca, to_padic(c, perm, kInf));
  expect_expansion_matches(moved, qmul(qmul(perm, q), qinverse(perm)), 5);
}

TEST(Compact, RoundTripThroughJson) {
  const auto c = make_ctx(5, 20);
  const QMatrix q = companion(QPoly{Q(3), Q(2), Q(1)});
  Rng rng(1);
  const CompactAdjugate ca = compact_form(flat_matrix(c, q, 20), rng);
  const CompactAdjugate back = compact_from_json(c, Json::parse(compact_to_json(ca).dump()));
  EXPECT_EQ(back.alpha, ca.alpha);
  EXPECT_EQ(back.chi, ca.chi);
  EXPECT_EQ(back.P, ca.P);
  EXPECT_EQ(back.Q, ca.Q);
}
