#include <gtest/gtest.h>

#include "ratreal/solvable.hpp"
#include "test_support.hpp"

using namespace ratreal;
using namespace ratreal::testing;
using Q = Rational;
using G = GaussianRational;

namespace {

std::vector<Q> small_grid() { return {0, 1, -1, 2, -2, Q(1, 2), Q(-1, 2), 3, Q(1, 3)}; }

std::vector<Matrix<Q>> rotation_samples() {
  std::vector<Matrix<Q>> out{Matrix<Q>::identity(2), Matrix<Q>::diagonal({-1, -1}), Matrix<Q>{{0, -1}, {1, 0}},
                             Matrix<Q>{{0, 1}, {-1, 0}}};
  for (Q u : {Q(1, 2), Q(2), Q(1, 3), Q(-1, 2)}) out.push_back(rational_rotation(u));
  return out;
}

std::vector<MatrixElement<Q>> rotation_candidates() {
  std::vector<MatrixElement<Q>> out;
  for (const auto& r : rotation_samples())
    for (Q a : small_grid())
      for (Q b : {Q(0), Q(1), Q(-1)}) out.push_back(rotation_instance(r, Vector<Q>{a, b}));
  return out;
}

}  // namespace

TEST(RotationInstance, EmbeddingIsAHomomorphism) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto r1 = rational_rotation(random_rational(rng)), r2 = rational_rotation(random_rational(rng));
    Vector<Q> v1{random_rational(rng), random_rational(rng)}, v2{random_rational(rng), random_rational(rng)};
    auto prod = rotation_instance(r1, v1) * rotation_instance(r2, v2);
    EXPECT_EQ(prod, rotation_instance(r1 * r2, r1 * r1 * v2 + v1));
  }
}

TEST(SquareLaw, RotationInstanceWithTheDisplayedWitness) {
  // t = pi: R = -I acts trivially on Q^2 through R^2; the displayed
  // conjugator is the t = pi/2 element with sign flips
  const Matrix<Q> minus = Matrix<Q>::diagonal({-1, -1});
  const Matrix<Q> quarter{{0, -1}, {1, 0}};
  const auto x = rotation_instance(minus, Vector<Q>{0, 0});
  const auto displayed = rotation_instance(quarter, Vector<Q>{0, 0});
  EXPECT_EQ(displayed.matrix(), (Matrix<Q>{{-1, 0, 0, 0, 0},
                                           {0, -1, 0, 0, 0},
                                           {0, 0, 1, 0, 0},
                                           {0, 0, 0, 0, -1},
                                           {0, 0, 0, 1, 0}}));
  std::vector<MatrixElement<Q>> a_samples;
  for (const auto& r : rotation_samples()) a_samples.push_back(rotation_instance(r, Vector<Q>{0, 0}));
  auto outcome = check_square_law(x, a_samples, search_among<MatrixElement<Q>>({displayed}));
  EXPECT_TRUE(outcome.witness_found);
  EXPECT_TRUE(outcome.square_is_identity);
  // and (A, n) is real through the same matrix for every n
  for (Q a : small_grid()) {
    auto xn = rotation_instance(minus, Vector<Q>{a, 1 - a});
    EXPECT_EQ(conjugate(displayed, xn), xn.inverse());
  }
}

TEST(SquareLaw, ElementsOfHigherOrderFindNoWitness) {
  std::vector<MatrixElement<Q>> a_samples;
  for (const auto& r : rotation_samples()) a_samples.push_back(rotation_instance(r, Vector<Q>{0, 0}));
  const auto search = search_among(rotation_candidates());
  for (const auto& r : rotation_samples()) {
    auto x = rotation_instance(r, Vector<Q>{0, 0});
    auto outcome = check_square_law(x, a_samples, search);
    if (!outcome.square_is_identity) {
      EXPECT_FALSE(outcome.witness_found) << r.to_string();
    }
  }
}

TEST(SquareLaw, TorusOnHeisenberg) {
  std::vector<GSpHeisenbergElement> a_samples, candidates;
  for (Q s : {Q(1), Q(-1), Q(2), Q(-3), Q(1, 2)}) {
    a_samples.push_back(torus_heisenberg(s, Vector<Q>{0, 0}, 0));
    candidates.push_back(a_samples.back());
    for (Q a : {Q(0), Q(1)})
      for (Q t : {Q(0), Q(1), Q(-1, 2)}) candidates.push_back(torus_heisenberg(s, Vector<Q>{a, 1}, t));
  }
  const auto search = search_among(candidates);
  for (const auto& x : a_samples) {
    auto outcome = check_square_law(x, a_samples, search);
    if (x.acting().matrix() == Matrix<Q>::diagonal({-1, -1})) {
      EXPECT_TRUE(outcome.witness_found);
      EXPECT_TRUE(outcome.square_is_identity);
    }
    if (!outcome.square_is_identity) {
      EXPECT_FALSE(outcome.witness_found);
    }
  }
}

TEST(SquareLaw, NonAbelianSampleIsRejected) {
  auto a = MatrixElement<Q>(Matrix<Q>{{1, 1}, {0, 1}}), b = MatrixElement<Q>(Matrix<Q>{{1, 0}, {1, 1}});
  EXPECT_THROW(check_square_law(a, {a, b}, search_among<MatrixElement<Q>>({})), PreconditionError);
}

TEST(StrongReality, RotationInstanceOnQ2) {
  const auto x = MatrixElement<Q>(Matrix<Q>::diagonal({-1, -1}));
  const auto p = vector_group_presentation<Q>(2);
  auto cert = check_strong_reality(x, VectorGroupElement<Q>(Vector<Q>{3, -7}), p, x);
  EXPECT_TRUE(cert.reverify());
  // direct affine multiplication: (-I, v)^2 = (I, -v + v)
  AffineElement<Q> a(Matrix<Q>::diagonal({-1, -1}), Vector<Q>{3, -7});
  EXPECT_EQ(a * a, AffineElement<Q>::identity(2));
}

TEST(StrongReality, TwoLevelFlag) {
  Rng rng(42);
  const auto x = MatrixElement<Q>(Matrix<Q>::diagonal({-1, -1, -1}));
  const auto p = flag_presentation_q3();
  for (int trial = 0; trial < 10; ++trial) {
    VectorGroupElement<Q> n(random_vector<Q>(3, [&] { return random_rational(rng); }));
    EXPECT_TRUE(check_strong_reality(x, n, p, x).reverify());
  }
  EXPECT_TRUE(check_strong_reality(x, VectorGroupElement<Q>::zero(3), p, x).reverify());
}

TEST(StrongReality, RejectsOrderAboveTwo) {
  const auto x = MatrixElement<Q>(Matrix<Q>{{0, -1}, {1, -1}});
  EXPECT_THROW(check_strong_reality(x, VectorGroupElement<Q>(Vector<Q>{1, 0}), vector_group_presentation<Q>(2), x),
               PreconditionError);
}

TEST(CenterRigidity, TorusOnHeisenbergCenter) {
  const auto n = torus_heisenberg(1, Vector<Q>{0, 0}, 1);
  std::vector<GSpHeisenbergElement> a_samples, candidates;
  for (Q s : {Q(1), Q(-1), Q(2), Q(-1, 3)}) {
    a_samples.push_back(torus_heisenberg(s, Vector<Q>{0, 0}, 0));
    for (Q t : small_grid()) candidates.push_back(torus_heisenberg(s, Vector<Q>{0, 0}, t));
  }
  auto outcome = check_center_rigidity(n, a_samples, candidates);
  EXPECT_FALSE(outcome.involution);
  EXPECT_EQ(outcome.candidates_checked, candidates.size());
  // coordinate form: n n = e would need 2t = 0
  EXPECT_EQ((n * n).normal().t(), Q(2));
  EXPECT_THROW(check_center_rigidity(torus_heisenberg(1, Vector<Q>{0, 0}, 0), a_samples, candidates),
               PreconditionError);
}

TEST(ComplexHeisenberg, GroupAndAction) {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexHeisenbergElement a(random_gaussian(rng), random_gaussian(rng), random_gaussian(rng)),
        b(random_gaussian(rng), random_gaussian(rng), random_gaussian(rng)),
        c(random_gaussian(rng), random_gaussian(rng), random_gaussian(rng));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * a.inverse(), ComplexHeisenbergElement::identity());
    G l = random_gaussian(rng);
    if (l.is_zero()) continue;
    UnitElement<G> u(l);
    EXPECT_EQ(ScalingAction::apply(u, a * b), ScalingAction::apply(u, a) * ScalingAction::apply(u, b));
  }
}

TEST(ComplexHeisenberg, Examples) {
  const std::vector<G> grid{G(1), G(-1), G(2), G::i(), G(Q(1), Q(1)), G(Q(1, 3), Q(-2))};
  auto yes = complex_heisenberg_reality({2, 1, 1}, -1, G(1), grid);
  ASSERT_TRUE(yes.real);
  EXPECT_TRUE(yes.certificate->reverify());
  auto no = complex_heisenberg_reality({1, 1, 1}, -1, G(1), grid);
  EXPECT_FALSE(no.real);
  EXPECT_EQ(no.residual, G(1));
  // x = 1 is real whenever (a, b) != 0
  for (auto n : {ComplexHeisenbergElement(1, 1, 1), ComplexHeisenbergElement(0, 3, 1),
                 ComplexHeisenbergElement(G::i(), 0, 2)}) {
    auto r = complex_heisenberg_reality(n, 1);
    ASSERT_TRUE(r.real);
    EXPECT_TRUE(r.certificate->reverify());
  }
  EXPECT_FALSE(complex_heisenberg_reality({0, 0, 1}, 1).real);
}

TEST(ComplexHeisenberg, VerdictMatchesPredicateOnRandomSample) {
  Rng rng(44);
  const std::vector<G> grid{G(2), G::i(), G(Q(-1, 2), Q(3))};
  int real_count = 0;
  for (int trial = 0; trial < 600; ++trial) {
    G a = random_gaussian(rng), b = random_gaussian(rng);
    G c = trial % 3 == 0 ? a * b / G(2) : random_gaussian(rng);
    G lambda = random_gaussian(rng);
    if (lambda.is_zero()) lambda = G(1);
    auto r = complex_heisenberg_reality({a, b, c}, -1, lambda, grid);
    EXPECT_EQ(r.real, a * b == G(2) * c);
    if (r.real) {
      ++real_count;
      EXPECT_TRUE(r.certificate->reverify());
      const auto xn = r.certificate->subject();
      EXPECT_EQ(xn * xn, ComplexHeisenbergSemidirect(UnitElement<G>(G(1)), ComplexHeisenbergElement::identity()));
    }
  }
  EXPECT_GE(real_count, 200);
}
