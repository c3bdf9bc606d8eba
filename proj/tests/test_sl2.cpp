#include <gtest/gtest.h>

#include "ratreal/sl2.hpp"
#include "test_support.hpp"

using namespace ratreal;
using namespace ratreal::testing;
using Q = Rational;

namespace {

// p(x0, y0) for p = sum_i c_i x^{n-i} y^i
Q evaluate(const Vector<Q>& c, const Q& x0, const Q& y0) {
  const int n = static_cast<int>(c.dim()) - 1;
  Q acc;
  for (int i = 0; i <= n; ++i) acc += c[i] * scalar_pow(x0, n - i) * scalar_pow(y0, i);
  return acc;
}

SL2Element random_sl2(Rng& rng) {
  for (;;) {
    Q a = random_nonzero_rational(rng, 5, 3), b = random_rational(rng, 5, 3), c = random_rational(rng, 5, 3);
    return {a, b, c, (Q(1) + b * c) / a};
  }
}

Vector<Q> random_form(Rng& rng, int n) {
  return random_vector<Q>(static_cast<std::size_t>(n) + 1, [&] { return random_rational(rng); });
}

}  // namespace

TEST(SL2Element, DeterminantIsChecked) {
  EXPECT_THROW(SL2Element(1, 1, 1, 1), UsageError);
  EXPECT_NO_THROW(SL2Element(2, 3, 1, 2));
  EXPECT_THROW(SL2Element::antidiagonal(Q(0)), UsageError);
  auto g = SL2Element(2, 3, 1, 2);
  EXPECT_EQ(g * g.inverse(), SL2Element::identity());
}

TEST(Rho, SubstitutionAgreesWithPointEvaluation) {
  Rng rng(11);
  for (int n = 0; n <= 5; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      auto g = random_sl2(rng);
      auto p = random_form(rng, n);
      auto image = rho(g, n) * p;
      for (int k = 0; k < 3; ++k) {
        Q x0 = random_rational(rng), y0 = random_rational(rng);
        EXPECT_EQ(evaluate(image, x0, y0), evaluate(p, g.a() * x0 + g.b() * y0, g.c() * x0 + g.d() * y0));
      }
    }
}

TEST(Rho, IdentityDiagonalAndAntidiagonal) {
  for (int n = 0; n <= 6; ++n) {
    const auto dim = static_cast<std::size_t>(n) + 1;
    EXPECT_EQ(rho(SL2Element::identity(), n), Matrix<Q>::identity(dim));
    Q r(3, 2);
    auto d = rho(SL2Element::diagonal(r), n);
    for (std::size_t i = 0; i < dim; ++i) EXPECT_EQ(d(i, i), scalar_pow(r, n - 2 * static_cast<int>(i)));
    if (n % 2 == 0) {
      // middle entry does not see t
      for (Q t : {Q(1), Q(-2), Q(1, 3)}) {
        auto y = rho(SL2Element::antidiagonal(t), n);
        EXPECT_EQ(y(dim / 2, dim / 2), Q((n / 2) % 2 == 0 ? 1 : -1));
      }
    }
  }
}

TEST(SymmetricPowerRep, IsAHomomorphism) {
  Rng rng(12);
  for (int n = 1; n <= 4; ++n) {
    SymmetricPowerRep rep(n);
    for (int trial = 0; trial < 10; ++trial) {
      auto g = random_sl2(rng), h = random_sl2(rng);
      EXPECT_EQ(rep(g * h), naive_product(rep(g), rep(h)));
    }
  }
}

TEST(Sl2VElement, GroupLaw) {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Sl2VElement a(random_sl2(rng), random_form(rng, 3)), b(random_sl2(rng), random_form(rng, 3)),
        c(random_sl2(rng), random_form(rng, 3));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * a.inverse(), Sl2VElement(SL2Element::identity(), Vector<Q>(4)));
  }
}

TEST(ClassifyReal, HyperbolicEvenDegreeWitness) {
  auto x = SL2Element::diagonal(Q(2));
  auto r = classify_real(x, PolyVector(2, {1, 1, 1}), Q(1));
  ASSERT_EQ(r.verdict, RealityResult::Verdict::Real);
  ASSERT_TRUE(r.certificate->reverify());
  EXPECT_EQ(r.certificate->witness().linear(), SL2Element::antidiagonal(Q(1)));
  EXPECT_EQ(r.certificate->witness().translation()[1], Q(0));
  // the free coordinate really is free
  auto r2 = classify_real(x, PolyVector(2, {1, 1, 1}), Q(1), {}, Q(5));
  ASSERT_TRUE(r2.certificate->reverify());
  EXPECT_EQ(r2.certificate->witness().translation()[1], Q(5));
}

TEST(ClassifyReal, OddDegreeAlwaysReal) {
  Rng rng(14);
  for (int n : {1, 3, 5})
    for (Q r : {Q(2), Q(-3), Q(1, 2), Q(1), Q(-1)}) {
      auto v = random_form(rng, n);
      auto res = classify_real(SL2Element::diagonal(r), PolyVector(n, v), Q(-2));
      ASSERT_EQ(res.verdict, RealityResult::Verdict::Real) << n << " " << r.to_string();
      EXPECT_TRUE(res.certificate->reverify());
    }
}

TEST(ClassifyReal, MiddleCoordinateObstructionForDegreeFour) {
  // map(y) fixes the middle monomial with sign +1 when 4 | n, so (x, v) with
  // nonzero middle coordinate cannot be conjugated to its inverse
  auto res = classify_real(SL2Element::diagonal(Q(2)), PolyVector(4, {0, 0, 1, 0, 0}));
  EXPECT_EQ(res.verdict, RealityResult::Verdict::NotReal);
  auto ok = classify_real(SL2Element::diagonal(Q(2)), PolyVector(4, {1, 2, 0, -1, 3}));
  ASSERT_EQ(ok.verdict, RealityResult::Verdict::Real);
  EXPECT_TRUE(ok.certificate->reverify());
  // n = 2 and n = 6: sign -1, every v works
  for (int n : {2, 6}) {
    Vector<Q> v(static_cast<std::size_t>(n) + 1);
    v[static_cast<std::size_t>(n) / 2] = Q(7);
    auto r = classify_real(SL2Element::diagonal(Q(3)), PolyVector(n, v));
    ASSERT_EQ(r.verdict, RealityResult::Verdict::Real);
    EXPECT_TRUE(r.certificate->reverify());
  }
}

TEST(ClassifyReal, CentralXDegreeTwo) {
  for (Q r : {Q(1), Q(-1)}) {
    auto x = SL2Element::diagonal(r);
    EXPECT_EQ(classify_real(x, PolyVector(2, {1, 0, 0})).verdict, RealityResult::Verdict::NotReal);
    EXPECT_EQ(classify_real(x, PolyVector(2, {1, 0, 1})).verdict, RealityResult::Verdict::NotReal);
    auto xy = classify_real(x, PolyVector(2, {0, 1, 0}));
    ASSERT_EQ(xy.verdict, RealityResult::Verdict::Real);
    EXPECT_TRUE(xy.certificate->reverify());
    // x^2 - 4 y^2 factors over Q
    auto split = classify_real(x, PolyVector(2, {1, 0, -4}));
    ASSERT_EQ(split.verdict, RealityResult::Verdict::Real);
    EXPECT_TRUE(split.certificate->reverify());
    // x^2 - 2 y^2 does not factor, but represents -1, so the search still succeeds
    auto pell = classify_real(x, PolyVector(2, {1, 0, -2}));
    ASSERT_EQ(pell.verdict, RealityResult::Verdict::Real);
    EXPECT_TRUE(pell.certificate->reverify());
    // x^2 - 3 y^2 never takes the value -1 over Q
    EXPECT_EQ(classify_real(x, PolyVector(2, {1, 0, -3})).verdict, RealityResult::Verdict::Unknown);
  }
}

TEST(NegationSearch, FindsTheQuarterTurnForXY) {
  auto h = negation_witness_search(PolyVector(2, {0, 1, 0}));
  ASSERT_TRUE(h);
  EXPECT_EQ(*h, SL2Element(0, 1, -1, 0));
  EXPECT_FALSE(negation_witness_search(PolyVector(2, {1, 0, 0})));
  auto odd = negation_witness_search(PolyVector(3, {1, 2, 3, 4}));
  ASSERT_TRUE(odd);
  EXPECT_EQ(*odd, SL2Element::minus_identity());
}

TEST(ClassifyReal, RejectsBadInput) {
  EXPECT_THROW(classify_real(SL2Element(1, 1, 0, 1), PolyVector(1, {0, 1})), UsageError);
  EXPECT_THROW(classify_real(SL2Element::identity(), PolyVector(1, {0, 1}), Q(0)), UsageError);
  EXPECT_THROW(PolyVector(2, {1, 2}), UsageError);
}

TEST(ClassifyRationalSl2v, InfiniteOrderMatchesReality) {
  auto x = SL2Element::diagonal(Q(2));
  auto r = classify_rational_sl2v(x, PolyVector(2, {1, 1, 1}), 200);
  EXPECT_FALSE(r.order.is_finite());
  ASSERT_EQ(r.verdict, Sl2RationalityResult::Verdict::Rational);
  EXPECT_TRUE(r.certificates.at(-1).reverify());
  auto bad = classify_rational_sl2v(x, PolyVector(4, {0, 0, 1, 0, 0}), 200);
  EXPECT_EQ(bad.verdict, Sl2RationalityResult::Verdict::NotRational);
}

TEST(ClassifyRationalSl2v, FiniteOrder) {
  // (-I, v) in odd degree has order 2
  auto r = classify_rational_sl2v(SL2Element::minus_identity(), PolyVector(3, {1, 0, 2, 0}), 100);
  ASSERT_TRUE(r.order.is_finite());
  EXPECT_EQ(r.order.value(), 2);
  EXPECT_EQ(r.verdict, Sl2RationalityResult::Verdict::Rational);
  EXPECT_EQ(r.certificates.size(), 1u);
  for (const auto& [k, c] : r.certificates) EXPECT_TRUE(c.reverify());
}
