#include <gtest/gtest.h>

#include "ratreal/affine_rational.hpp"
#include "test_support.hpp"

using namespace ratreal;
using namespace ratreal::testing;
using Q = Rational;
using F3 = ModP<3>;

namespace {

const Matrix<Q> kCycle{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};  // e1 -> e2 -> e3 -> e1

std::vector<Matrix<F3>> all_gl2_f3() {
  std::vector<Matrix<F3>> out;
  for (int code = 0; code < 81; ++code) {
    Matrix<F3> m{{code % 3, code / 3 % 3}, {code / 9 % 3, code / 27 % 3}};
    if (!determinant(m).is_zero()) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST(LinearRationality, Examples) {
  auto id = rationality_certificates_linear(Matrix<Q>::identity(3), 1);
  EXPECT_TRUE(id.rational());
  EXPECT_EQ(id.witnesses.at(1), Matrix<Q>::identity(3));

  auto cyc = rationality_certificates_linear(kCycle, 3);
  ASSERT_TRUE(cyc.rational());
  const auto& g = cyc.witnesses.at(2);
  EXPECT_EQ(g * kCycle * inverse(g), naive_product(kCycle, kCycle));
  // a transposition is one such witness
  Matrix<Q> swap{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  EXPECT_EQ(swap * kCycle * inverse(swap), kCycle * kCycle);

  auto diag = rationality_certificates_linear(Matrix<Q>::diagonal({1, -1}), 2);
  EXPECT_EQ(diag.witnesses.size(), 1u);

  EXPECT_THROW(rationality_certificates_linear(Matrix<Q>::diagonal({2, 1}), 3), PreconditionError);
}

TEST(LinearRationality, OrderThreeOverF7IsNotRational) {
  // diag(2, 2) has order 3 in GL(2, 7) and is central, so no g sends it to its square
  Matrix<ModP<7>> x = Matrix<ModP<7>>::diagonal({2, 2});
  auto r = rationality_certificates_linear(x, 3);
  EXPECT_FALSE(r.rational());
  EXPECT_EQ(r.refuted, std::vector<long>{2});
}

TEST(Splitting, Examples) {
  auto id = split_at_eigenvalue_one(Matrix<Q>::identity(2), 1);
  EXPECT_EQ(id.kernel_dim(), 2u);
  EXPECT_EQ(id.image_dim(), 0u);

  auto neg = split_at_eigenvalue_one(Matrix<Q>::diagonal({-1, -1}), 2);
  EXPECT_EQ(neg.kernel_dim(), 0u);
  EXPECT_EQ(neg.image_dim(), 2u);

  auto cyc = split_at_eigenvalue_one(kCycle, 3);
  ASSERT_EQ(cyc.kernel_dim(), 1u);
  const auto& k = cyc.kernel_basis[0];
  EXPECT_TRUE(k[0] == k[1] && k[1] == k[2] && !k[0].is_zero());
  ASSERT_EQ(cyc.image_dim(), 2u);
  for (const auto& u : cyc.image_basis) EXPECT_TRUE((u[0] + u[1] + u[2]).is_zero());
}

TEST(Splitting, UnipotentOverFpIsRejected) {
  Matrix<F3> x{{1, 1}, {0, 1}};  // order 3, not semisimple
  EXPECT_THROW(split_at_eigenvalue_one(x, 3), PreconditionError);
}

TEST(ExtractBlock, Examples) {
  auto s = split_at_eigenvalue_one(kCycle, 3);
  Matrix<Q> swap{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  auto g_u = extract_block_certificate(swap, kCycle, 2, s);
  auto x_u = s.to_adapted(kCycle).block(1, 1, 2, 2);
  EXPECT_EQ(g_u * x_u * inverse(g_u), x_u * x_u);

  Matrix<Q> rot{{0, -1}, {1, -1}};
  auto s0 = split_at_eigenvalue_one(rot, 3);
  Matrix<Q> h{{0, 1}, {1, 0}};
  EXPECT_EQ(extract_block_certificate(h, rot, 2, s0), s0.to_adapted(h));

  auto s1 = split_at_eigenvalue_one(Matrix<Q>::identity(2), 1);
  EXPECT_EQ(extract_block_certificate(Matrix<Q>::identity(2), Matrix<Q>::identity(2), 1, s1).rows(), 0u);
}

TEST(ClassifyAffineRational, MinusIdentity) {
  auto x = Matrix<Q>::diagonal({-1, -1});
  auto r = classify_affine_rational(x, Vector<Q>{1, 2}, 2, {{1, Matrix<Q>::identity(2)}});
  EXPECT_EQ(r.route, AffineRoute::FixedPointFree);
  ASSERT_TRUE(r.order.is_finite());
  EXPECT_EQ(r.order.value(), 2);
  EXPECT_EQ(r.certificates.size(), 1u);
}

TEST(ClassifyAffineRational, CycleImageBlockAndRoundTrip) {
  auto certs = rationality_certificates_linear(kCycle, 3).witnesses;
  Vector<Q> v{1, -1, 0};
  auto r = classify_affine_rational(kCycle, v, 3, certs);
  EXPECT_EQ(r.route, AffineRoute::ImageBlock);
  ASSERT_EQ(r.certificates.size(), 2u);
  for (const auto& [k, c] : r.certificates) {
    EXPECT_TRUE(c.reverify());
    EXPECT_EQ(conjugate(c.witness(), AffineElement<Q>(kCycle, v)), group_power(AffineElement<Q>(kCycle, v), k));
    // restricting the lifted witness to the image block gives the block witness back
    auto s = split_at_eigenvalue_one(kCycle, 3);
    EXPECT_EQ(s.to_adapted(c.witness().linear()).block(1, 1, 2, 2), r.image_blocks.at(k));
  }
}

TEST(ClassifyAffineRational, CycleKernelComponentGivesInfiniteOrder) {
  auto certs = rationality_certificates_linear(kCycle, 3).witnesses;
  auto r = classify_affine_rational(kCycle, Vector<Q>{1, 1, 1}, 3, certs);
  EXPECT_EQ(r.route, AffineRoute::InfiniteOrder);
  EXPECT_FALSE(r.order.is_finite());
  // independent telescoping: (I + x + ... + x^{l-1}) v = (l, l, l)
  for (long l : {1L, 3L, 30L}) {
    Vector<Q> sum(3), term{1, 1, 1};
    for (long i = 0; i < l; ++i) {
      sum = sum + term;
      term = kCycle * term;
    }
    EXPECT_EQ(sum, (Vector<Q>{Q(l), Q(l), Q(l)}));
  }
  for (const auto& [l, coords] : r.kernel_growth) EXPECT_EQ(coords, Q(l) * r.kernel_component);
  ASSERT_TRUE(r.certificates.count(-1));
  EXPECT_TRUE(r.certificates.at(-1).reverify());
}

TEST(ClassifyAffineRational, KernelComponentIffInfiniteOrder) {
  Rng rng(21);
  auto certs = rationality_certificates_linear(kCycle, 3).witnesses;
  Matrix<Q> rot{{0, -1}, {1, -1}};
  auto big = block_diagonal(kCycle, rot);  // order 3, kernel of dim 1
  auto big_certs = rationality_certificates_linear(big, 3).witnesses;
  for (int trial = 0; trial < 20; ++trial) {
    Vector<Q> v = random_vector<Q>(5, [&] { return random_rational(rng); });
    if (trial % 2 == 0) {  // push v into the image
      Vector<Q> u = random_vector<Q>(5, [&] { return random_rational(rng); });
      v = (big - Matrix<Q>::identity(5)) * u;
    }
    auto r = classify_affine_rational(big, v, 3, big_certs);
    EXPECT_EQ(!r.kernel_component.is_zero(), !r.order.is_finite());
    EXPECT_EQ(!r.order.is_finite(), !element_order(AffineElement<Q>(big, v), 30).is_finite());
    for (const auto& [k, c] : r.certificates) EXPECT_TRUE(c.reverify());
  }
}

TEST(ClassifyAffineRational, RejectsBadCertificates) {
  std::map<long, Matrix<Q>> bad{{1, Matrix<Q>::identity(3)}, {2, Matrix<Q>::identity(3)}};
  EXPECT_THROW(classify_affine_rational(kCycle, Vector<Q>{1, -1, 0}, 3, bad), PreconditionError);
  EXPECT_THROW(classify_affine_rational(kCycle, Vector<Q>{1, -1, 0}, 3, {{1, Matrix<Q>::identity(3)}}),
               PreconditionError);
}

// Full enumeration of GL(2, 3) x| F_3^2 against the brute-force oracle.
TEST(ClassifyAffineRational, AgreesWithBruteForceOverF3) {
  const auto gl = all_gl2_f3();
  ASSERT_EQ(gl.size(), 48u);
  std::vector<AffineElement<F3>> gens;
  for (const auto& m : gl) gens.push_back(AffineElement<F3>::linear_only(m));
  gens.push_back(AffineElement<F3>::translation_only(Vector<F3>{1, 0}));
  const auto group = generate_closure(gens, 1000);
  ASSERT_EQ(group.order(), 432u);
  const auto linear_group = generate_closure(std::vector<MatrixElement<F3>>(gl.begin(), gl.end()), 100);

  int checked = 0;
  for (const auto& g : group.elements()) {
    const auto& x = g.linear();
    const long m = element_order(MatrixElement<F3>(x)).value();
    const auto lin = rationality_certificates_linear(x, m);
    const bool x_rational_oracle = is_rational_bruteforce(linear_group, MatrixElement<F3>(x)).has_value();
    ASSERT_TRUE(lin.inconclusive.empty());
    EXPECT_EQ(lin.rational(), x_rational_oracle) << x.to_string();
    const bool oracle = is_rational_bruteforce(group, g).has_value();
    if (!lin.rational()) {
      EXPECT_FALSE(oracle) << g.key();  // rationality passes to quotients
      continue;
    }
    AffineRationalityResult<F3> r;
    try {
      r = classify_affine_rational(x, g.translation(), m, lin.witnesses);
    } catch (const PreconditionError&) {
      continue;  // unipotent part or kernel component: outside the pipeline over F_p
    }
    ++checked;
    EXPECT_TRUE(r.rational());
    EXPECT_EQ(r.rational(), oracle) << g.key();
    for (const auto& [k, c] : r.certificates) EXPECT_TRUE(c.reverify());
  }
  EXPECT_GT(checked, 100);
}
