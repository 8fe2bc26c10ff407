#include <gtest/gtest.h>

#include "support.hpp"

using namespace padicprec;
using namespace testing_support;

namespace {

bool is_hessenberg(const PadicMatrix& h) {
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j + 1 < i; ++j)
      if (!h(i, j).is_indistinguishable_zero()) return false;
  return true;
}

}  // namespace

TEST(Hessenberg, TwoByTwoIsUnchanged) {
  const auto c = make_ctx(5, 10);
  const PMatrix m = PMatrix::from_integers(c, {{1, 2}, {3, 4}}, 10);
  const HessenbergForm f = hessenberg(m);
  EXPECT_EQ(f.H, m.entries);
  EXPECT_EQ(f.P, identity_matrix(c, 2));
}

TEST(Hessenberg, PermutationMatrix) {
  const auto c = make_ctx(5, 6);
  const PMatrix m = PMatrix::from_integers(c, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, 6);
  const HessenbergForm f = hessenberg(m);
  EXPECT_TRUE(is_hessenberg(f.H));
  const QMatrix p = representatives(f.P), pinv = representatives(f.P_inv);
  EXPECT_EQ(qmul(p, pinv), qidentity(3));
  const PadicMatrix diff = f.H * f.P;
  const PadicMatrix pm = f.P * m.entries;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(agrees(diff(i, j), pm(i, j)));
  EXPECT_EQ(charpoly(representatives(f.H)), (QPoly{Q(-1), Q(0), Q(0), Q(1)}));
}

TEST(Hessenberg, ApproximateZeroBelowSubdiagonal) {
  const auto c = make_ctx(5, 6);
  PadicMatrix m = to_padic(c, QMatrix(3, 3, Q(1)), 6);
  m(0, 0) = lit(c, "2 + O(5^6)");
  m(1, 0) = lit(c, "5^2 * 1 + O(5^6)");
  m(2, 0) = lit(c, "O(5^2)");
  const HessenbergForm f = hessenberg(m);
  EXPECT_TRUE(is_hessenberg(f.H));
  EXPECT_TRUE(f.H(2, 0).is_indistinguishable_zero());
  EXPECT_FALSE(f.H(2, 0).is_exact());
}

TEST(Hessenberg, SimilarityOnRandomMatrices) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rand_between(rng, 2, 6));
    const auto c = make_ctx(t % 2 ? 3 : 2, 30);
    const QMatrix q = random_int_matrix(rng, n, -40, 40);
    const PMatrix m = flat_matrix(c, q, 30);
    const HessenbergForm f = hessenberg(m);
    ASSERT_TRUE(is_hessenberg(f.H));
    const PadicMatrix lhs = f.H * f.P, rhs = f.P * m.entries;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_TRUE(agrees(lhs(i, j), rhs(i, j)));
    EXPECT_EQ(qmul(representatives(f.P), representatives(f.P_inv)), qidentity(n));
  }
}

TEST(Snf, DiagonalExamples) {
  const auto c = make_ctx(5, 10);
  const SNFDecomp a = snf(PMatrix::from_integers(c, {{1, 0}, {0, 5}}, 10));
  EXPECT_EQ(a.sigma_vals, (std::vector<long>{0, 1}));
  EXPECT_EQ(representatives(a.Pl), qidentity(2));
  EXPECT_EQ(representatives(a.Qr), qidentity(2));
  EXPECT_EQ(representatives(a.Delta), diag({1, 5}));
  const SNFDecomp b = snf(PMatrix::from_integers(c, {{5, 0}, {0, 25}}, 10));
  EXPECT_EQ(b.sigma_vals, (std::vector<long>{1, 2}));
  EXPECT_EQ(b.cond(), 2);
}

TEST(Snf, ReconstructsRandomMatrices) {
  std::mt19937_64 rng(8);
  const auto c = make_ctx(2, 40);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rand_between(rng, 2, 5));
    const QMatrix q = qmul(qmul(random_unimodular(rng, n), diag([&] {
                                  std::vector<Q> d;
                                  for (std::size_t i = 0; i < n; ++i) d.push_back(qpow(2, rand_between(rng, 0, 4)));
                                  return d;
                                }())),
                           random_unimodular(rng, n));
    const SNFDecomp d = snf(flat_matrix(c, q, 40));
    const std::vector<long> expect = exact_sigma_valuations(q, c->p);
    EXPECT_EQ(d.sigma_vals, expect);
    const PadicMatrix back = d.Pl * d.Delta * d.Qr;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_TRUE(agrees(back(i, j), q(i, j)));
  }
}

TEST(Inverse, IdentityAndDiagonal) {
  const auto c = make_ctx(5, 12);
  const PadicMatrix i = inverse_via_snf(PMatrix::from_integers(c, {{1, 0}, {0, 1}}, 8));
  EXPECT_TRUE(agrees(i(0, 0), Q(1)));
  EXPECT_EQ(i(0, 0).absprec(), 8);
  EXPECT_TRUE(i(0, 1).is_indistinguishable_zero());
  const PadicMatrix d = inverse_via_snf(PMatrix::from_integers(c, {{1, 0}, {0, 5}}, 8));
  EXPECT_TRUE(agrees(d(1, 1), Q(1, 5)));
  long worst = kInf;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t s = 0; s < 2; ++s) worst = std::min(worst, d(r, s).absprec());
  EXPECT_EQ(worst, 8 - 2);
  try {
    (void)inverse_via_snf(PMatrix::from_integers(c, {{1, 0}, {0, 125}}, 6));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientPrecision);
  }
}

TEST(Adjugate, TwoByTwoSwap) {
  const auto c = make_ctx(5, 10);
  const AdjugateResult r = adjugate_hessenberg(PMatrix::from_integers(c, {{0, 1}, {1, 0}}, kInf).entries);
  EXPECT_EQ(representatives(r.chi), (QPoly{Q(-1), Q(0), Q(1)}));
  EXPECT_EQ(representatives(r.C(0, 0)), (QPoly{Q(0), Q(1)}));
  EXPECT_EQ(representatives(r.C(0, 1)), (QPoly{Q(1)}));
  EXPECT_EQ(representatives(r.C(1, 0)), (QPoly{Q(1)}));
  EXPECT_EQ(representatives(r.C(1, 1)), (QPoly{Q(0), Q(1)}));
}

TEST(Adjugate, CompanionBottomRow) {
  const auto c = make_ctx(7, 10);
  for (std::size_t n = 2; n <= 6; ++n) {
    QPoly chi;
    for (std::size_t k = 0; k < n; ++k) chi.push_back(Q(static_cast<long>(3 * k + 1)));
    chi.push_back(1);
    // Ones below the diagonal, coefficients in the last column.
    const AdjugateResult r = adjugate_hessenberg(to_padic(c, companion(chi).transposed(), kInf));
    for (std::size_t j = 0; j < n; ++j) {
      QPoly mono(j + 1, Q(0));
      mono[j] = 1;
      EXPECT_EQ(representatives(r.C(n - 1, j)), mono);
    }
    EXPECT_EQ(representatives(r.chi), chi);
  }
}

TEST(Adjugate, RandomHessenbergAgainstOracle) {
  std::mt19937_64 rng(21);
  const auto c = make_ctx(5, 8);
  for (int t = 0; t < 20; ++t) {
    QMatrix q = random_int_matrix(rng, 4, 0, 624);
    for (std::size_t i = 2; i < 4; ++i)
      for (std::size_t j = 0; j + 1 < i; ++j) q(i, j) = 0;
    const AdjugateResult r = adjugate_hessenberg(to_padic(c, q, 8));
    const LeVerrier o = leverrier(q);
    EXPECT_TRUE(agrees(r.chi, o.chi));
    EXPECT_TRUE(poly_congruent(representatives(r.chi), o.chi, c->p, 8));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_TRUE(agrees(r.C(i, j), o.adjugate(i, j)));
        EXPECT_TRUE(poly_congruent(representatives(r.C(i, j)), o.adjugate(i, j), c->p, 8));
      }
  }
}

TEST(Adjugate, ZeroMatrix) {
  const auto c = make_ctx(3, 10);
  const std::size_t n = 4;
  const AdjugateResult r = adjugate_hessenberg(PadicMatrix(n, n, PadicElem::zero(c)));
  QPoly xn(n + 1, Q(0)), xn1(n, Q(0));
  xn[n] = 1;
  xn1[n - 1] = 1;
  EXPECT_EQ(representatives(r.chi), xn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(representatives(r.C(i, j)), i == j ? xn1 : QPoly{});
}

TEST(Adjugate, NoNonUnitInversions) {
  std::mt19937_64 rng(4);
  const auto c = make_ctx(2, 16);
  op_counters() = {};
  for (int t = 0; t < 10; ++t) (void)adjugate_hessenberg(flat_matrix(c, random_int_matrix(rng, 5, -50, 50), 16).entries);
  EXPECT_EQ(op_counters().nonunit_inversions, 0u);
}

TEST(Adjugate, NonIntegralInputViaScaling) {
  const auto c = make_ctx(5, 20);
  std::mt19937_64 gen(1);
  QMatrix q = random_int_matrix(gen, 3, -9, 9);
  q(0, 1) = Q(7, 25);
  q(2, 0) = Q(-3, 5);
  const FullAdjugate a = adjugate_via_hessenberg(to_padic(c, q, kInf));
  const LeVerrier o = leverrier(q);
  EXPECT_EQ(representatives(a.chi), o.chi);
  EXPECT_EQ(a.scale, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(agrees(a.C(i, j), o.adjugate(i, j)));
}

TEST(Factored, DiagonalIsAlreadyReduced) {
  const auto c = make_ctx(5, 20);
  Rng rng(1);
  const FactoredAdjugate f = adjugate_factored(PMatrix::from_integers(c, {{1, 0}, {0, 2}}, 20).entries, rng);
  EXPECT_TRUE(agrees(f.C(0, 0), QPoly{Q(-2), Q(1)}));
  EXPECT_TRUE(agrees(f.C(1, 1), QPoly{Q(-1), Q(1)}));
  EXPECT_TRUE(agrees(f.C(0, 1), QPoly{}));
  EXPECT_TRUE(agrees(f.C(1, 0), QPoly{}));
  EXPECT_GE(f.C(0, 0).min_absprec(), 15);
}

TEST(Factored, RepeatedEigenvalueIsRejected) {
  const auto c = make_ctx(5, 20);
  Rng rng(1);
  try {
    (void)adjugate_factored(PMatrix::from_integers(c, {{1, 0}, {0, 1}}, 20).entries, rng);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DiscriminantZero);
  }
}

TEST(Factored, RandomSimpleSpectrum) {
  std::mt19937_64 gen(77);
  Rng rng(77);
  const auto c = make_ctx(5, 30);
  int done = 0;
  while (done < 10) {
    const QMatrix q = random_int_matrix(gen, 4, -30, 30);
    const LeVerrier o = leverrier(q);
    const QPoly d = qpoly_derivative(o.chi);
    // Keep the discriminant a unit so that the whole precision survives.
    bool simple = true;
    for (long r = 0; r < 5 && simple; ++r)
      simple = !(qval(qpoly_eval(o.chi, r), 5) > 0 && qval(qpoly_eval(d, r), 5) > 0);
    if (!simple) continue;
    const FactoredAdjugate f = adjugate_factored(flat_matrix(c, q, 30).entries, rng);
    EXPECT_LE(f.attempts, kAdjugateRetryBound);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_TRUE(agrees(f.C(i, j), qpoly_rem(o.adjugate(i, j), o.chi)));
        EXPECT_GE(f.C(i, j).min_absprec(), 10);
      }
    ++done;
  }
}

TEST(Adjugate, ResultFitsCayleyHamiltonIdentity) {
  std::mt19937_64 rng(13);
  const auto c = make_ctx(13, 10);
  for (int t = 0; t < 10; ++t) {
    const QMatrix q = random_int_matrix(rng, 4, -100, 100);
    const FullAdjugate a = adjugate_via_hessenberg(flat_matrix(c, q, 10).entries);
    const QPoly chi = representatives(a.chi);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        QPoly acc;
        for (std::size_t k = 0; k < 4; ++k) {
          QPoly xm = {-q(i, k)};
          if (i == k) xm.push_back(1);
          acc = qpoly_sub(acc, qpoly_mul(QPoly{Q(-1)}, qpoly_mul(xm, representatives(a.C(k, j)))));
        }
        const QPoly target = i == j ? chi : QPoly{};
        EXPECT_TRUE(poly_congruent(acc, target, c->p, 10));
      }
  }
}
