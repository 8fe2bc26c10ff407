#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace padicprec;
using namespace testing_support;

namespace {

CtxPtr ctx5() { return make_ctx(5, 20); }
CtxPtr ctx2() { return make_ctx(2, 20); }

void expect_kind(ErrorKind kind, auto&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Padic, AdditionCancelsDigits) {
  const auto c = ctx5();
  const PadicElem s = lit(c, "2 + O(5^3)") + lit(c, "3 + O(5^3)");
  EXPECT_EQ(s.val(), 1);
  EXPECT_EQ(s.relprec(), 2);
  EXPECT_EQ(s.absprec(), 3);
  EXPECT_TRUE(agrees(s, Q(5)));
}

TEST(Padic, AdditionIdentityAndMixedPrecision) {
  const auto c = ctx2();
  const PadicElem x = lit(c, "3 + O(2^5)");
  EXPECT_EQ(x + PadicElem::zero(c), x);
  const PadicElem s = lit(c, "1 + O(2^4)") + lit(c, "1 + O(2^2)");
  // Digit sets: {1 + 16Z} + {1 + 4Z} = 2 + 4Z.
  EXPECT_EQ(s.absprec(), 2);
  EXPECT_EQ(s.val(), 1);
  EXPECT_TRUE(agrees(s, Q(2)));
}

TEST(Padic, Multiplication) {
  const auto c5 = ctx5();
  const PadicElem a = lit(c5, "5^1 * 1 + O(5^3)");
  const PadicElem sq = a * a;
  EXPECT_EQ(sq.val(), 2);
  EXPECT_EQ(sq.absprec(), 4);
  EXPECT_TRUE((a * PadicElem::zero(c5)).is_exact_zero());
  const auto c2 = ctx2();
  const PadicElem prod = lit(c2, "3 + O(2^4)") * lit(c2, "5 + O(2^4)");
  EXPECT_EQ(prod.absprec(), 4);
  EXPECT_EQ(prod.to_rational(), Q(15));
}

TEST(Padic, Inverse) {
  const auto c2 = ctx2();
  EXPECT_EQ(lit(c2, "1 + O(2^7)").inv(), lit(c2, "1 + O(2^7)"));
  const PadicElem i = lit(c2, "3 + O(2^4)").inv();
  EXPECT_EQ(i.to_rational(), Q(11));
  EXPECT_EQ(i.absprec(), 4);
  expect_kind(ErrorKind::DivisionByIndistinguishableZero, [&] { (void)lit(c2, "O(2^2)").inv(); });
}

TEST(Padic, ReductionModP) {
  const auto c = ctx5();
  EXPECT_EQ(reduce_mod_p(lit(c, "7 + O(5^3)")), 2);
  EXPECT_EQ(reduce_mod_p(PadicElem::zero(c)), 0);
  expect_kind(ErrorKind::InsufficientPrecision, [&] { (void)reduce_mod_p(PadicElem::big_oh(c, 0)); });
  expect_kind(ErrorKind::NegativeValuation, [&] { (void)reduce_mod_p(lit(c, "5^-1 * 2")); });
}

TEST(Padic, LiteralRoundTrip) {
  const auto c = ctx5();
  for (const char* s : {"0", "7", "-3", "5^2 * 3", "5^-3 * 4 + O(5^2)", "O(5^9)", "12 + O(5^4)"}) {
    const PadicElem e = lit(c, s);
    EXPECT_EQ(lit(c, e.to_literal()), e) << s;
  }
  EXPECT_EQ(lit(c, "75 + O(5^4)"), lit(c, "5^2 * 3 + O(5^4)"));
  expect_kind(ErrorKind::ParseError, [&] { (void)lit(c, "3 + O(7^2)"); });
  expect_kind(ErrorKind::ParseError, [&] { (void)lit(c, "3 +"); });
}

TEST(Padic, RingLawsOnRandomElements) {
  const auto c = make_ctx(3, 12);
  Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const PadicElem a = random_integral(c, 10, rng), b = random_integral(c, 8, rng),
                    d = random_integral(c, 12, rng);
    EXPECT_TRUE(agrees(a + b, b + a));
    EXPECT_TRUE(agrees(a * b, b * a));
    EXPECT_TRUE(agrees((a + b) + d, a + (b + d)));
    EXPECT_TRUE(agrees((a * b) * d, a * (b * d)));
    EXPECT_TRUE(agrees(a * (b + d), a * b + a * d));
    EXPECT_TRUE((a - a).is_indistinguishable_zero());
    // Results contain the exact result of the representatives.
    EXPECT_TRUE(agrees(a * b + d, a.to_rational() * b.to_rational() + d.to_rational()));
    if (a.is_unit()) {
      EXPECT_TRUE(agrees(a * a.inv(), Q(1)));
    }
  }
}

TEST(Padic, RandomValuationDistribution) {
  Rng rng(7);
  std::map<long, int> hist;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) ++hist[random_valuation(rng)];
  auto freq = [&](long v) { return static_cast<double>(hist[v]) / draws; };
  EXPECT_NEAR(freq(0), 1.0 / 5, 0.006);
  EXPECT_NEAR(freq(1), 1.0 / 5, 0.006);
  EXPECT_NEAR(freq(-2), 1.0 / 15, 0.004);
}

TEST(Padic, RandomPadicIsDeterministicAndShaped) {
  const auto c = make_ctx(2, 20);
  Rng a(99), b(99);
  for (int i = 0; i < 50; ++i) {
    const PadicElem x = random_padic(c, 20, a), y = random_padic(c, 20, b);
    EXPECT_EQ(x, y);
    EXPECT_FALSE(x.is_exact());
    EXPECT_LE(x.relprec(), 20);
  }
}

TEST(Padic, FloatModelTruncates) {
  const auto c = ctx5();
  const FloatPadic a = FloatPadic::from_rational(c, 3, Q(1, 3));
  // 1/3 mod 125 = 42.
  EXPECT_EQ(a.to_rational(), Q(42));
  EXPECT_EQ(a.val(), 0);
}
