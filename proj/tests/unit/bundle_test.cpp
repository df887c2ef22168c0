#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "twdesc/bundle.hpp"
#include "twdesc/error.hpp"
#include "twdesc/linalg.hpp"

namespace twdesc {
namespace {

const Field kQ = Field::rationals();

TEST(RestrictTest, FullOpenIsIdentity) {
  const GradedBundle b({0, 1}, {{{0, 0}, 2}, {{1, 0}, 1}});
  EXPECT_EQ(restrict(b, {0, 1}), b);
}

TEST(RestrictTest, RestrictionsCompose) {
  const GradedBundle b({0, 1, 2}, {{{0, 0}, 2}, {{1, 0}, 1}, {{2, 1}, 3}});
  EXPECT_EQ(restrict(restrict(b, {1, 2}), {1}), restrict(b, {1}));
}

TEST(RestrictTest, OutsideTheOpenThrows) {
  const GradedBundle b({0}, {{{0, 0}, 1}});
  EXPECT_THROW(restrict(b, {0, 1}), Error);
}

TEST(ExtendByZeroTest, SectionOfRestriction) {
  const GradedBundle b({1}, {{{1, 0}, 1}});
  const GradedBundle e = extend_by_zero(b, {0, 1});
  EXPECT_EQ(e.dim(0, 0), 0);
  EXPECT_EQ(e.dim(1, 0), 1);
  EXPECT_EQ(restrict(e, {1}), b);
  EXPECT_EQ(extend_by_zero(e, {0, 1}), e);
  EXPECT_TRUE(extend_by_zero(GradedBundle({1}, {}), {0, 1}).is_zero());
}

TEST(DirectSumTest, ZeroSummandChangesNothing) {
  const GradedBundle b({0, 1}, {{{0, 0}, 2}, {{1, 1}, 1}});
  const DirectSum s({b, GradedBundle({0, 1}, {})});
  EXPECT_EQ(s.bundle(), b);
}

TEST(DirectSumTest, RanksAddWhereBothLive) {
  const GradedBundle a({0, 1}, {{{0, 0}, 1}, {{1, 0}, 1}});
  const GradedBundle b({0, 1}, {{{1, 0}, 1}});
  const DirectSum s({a, b});
  EXPECT_EQ(s.bundle().dim(0, 0), 1);
  EXPECT_EQ(s.bundle().dim(1, 0), 2);
  EXPECT_EQ(s.offset(1, 1, 0), 1);
}

TEST(DirectSumTest, ProjectionAfterInclusionIsIdentity) {
  const GradedBundle a({0, 1}, {{{0, 0}, 2}, {{1, 1}, 1}});
  const GradedBundle b({0, 1}, {{{0, 0}, 1}, {{1, 0}, 3}});
  const DirectSum s({a, b});
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(compose(s.projection(k, kQ), s.inclusion(k, kQ)),
              SheafMorphism::identity(s.summand(k), kQ));
  }
  EXPECT_TRUE(compose(s.projection(1, kQ), s.inclusion(0, kQ)).is_zero());
}

TEST(KernelSubbundleTest, IsomorphismHasZeroKernel) {
  const GradedBundle b({0}, {{{0, 0}, 2}});
  EXPECT_TRUE(kernel_subbundle(SheafMorphism::identity(b, kQ), 0).kernel.is_zero());
}

TEST(KernelSubbundleTest, ZeroMapKeepsTheSource) {
  const GradedBundle b({0, 1}, {{{0, 0}, 2}, {{1, 0}, 1}});
  const KernelBundle k = kernel_subbundle(SheafMorphism::zero(b, b, 0, kQ), 0);
  EXPECT_EQ(k.kernel, b);
}

TEST(KernelSubbundleTest, RankOneKernel) {
  const GradedBundle src({0, 1}, {{{0, 0}, 2}, {{1, 0}, 2}});
  const GradedBundle tgt({0, 1}, {{{0, 1}, 1}, {{1, 1}, 1}});
  const Matrix m = Matrix::from_ints(kQ, {{1, 2}});
  const SheafMorphism f(src, tgt, 1, kQ, {{{0, 0}, m}, {{1, 0}, m}});
  const KernelBundle k = kernel_subbundle(f, 0);
  for (int x : {0, 1}) {
    EXPECT_EQ(k.kernel.dim(x, 0), 1);
    EXPECT_EQ(testing::oracle::rank(k.inclusion.at(x, 0)), 1u);
  }
  EXPECT_TRUE(compose(f, k.inclusion).is_zero());
}

TEST(SheafMorphismTest, ShapesAreChecked) {
  const GradedBundle b({0}, {{{0, 0}, 2}});
  EXPECT_THROW(SheafMorphism(b, b, 0, kQ, {{{0, 0}, Matrix(kQ, 1, 2)}}), Error);
}

TEST(SheafMorphismTest, CompositionIsAssociative) {
  testing::Rng rng(3);
  const SitePtr site = testing::random_site(rng, kQ);
  for (int trial = 0; trial < 30; ++trial) {
    const auto e = testing::random_global(rng, site, 0, 1, 2);
    const auto f = testing::random_global(rng, site, 0, 1, 2);
    const auto g = testing::random_global(rng, site, 0, 1, 2);
    const SheafMorphism u = testing::random_global_morphism(rng, e, f, 0);
    const SheafMorphism v = testing::random_global_morphism(rng, f, g, 1);
    const SheafMorphism w = testing::random_global_morphism(rng, g, e, -1);
    EXPECT_EQ(compose(w, compose(v, u)), compose(compose(w, v), u));
  }
}

}  // namespace
}  // namespace twdesc
