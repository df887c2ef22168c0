#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "twdesc/error.hpp"
#include "twdesc/morphism_descent.hpp"

namespace twdesc {
namespace {

using testing::Rng;

const Field kQ = Field::rationals();

TEST(DescendMorphismTest, ImageOfGlobalMapDescendsToItself) {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const SitePtr site = testing::random_site(rng, kQ);
    const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
    const GlobalComplex f = testing::random_global(rng, site, 0, 1, 2);
    const SheafMorphism psi = testing::random_closed_global_morphism(rng, e, f, 0);
    const DescendedMorphism d =
        descend_morphism(twist_morphism(psi, twist_object(e), twist_object(f)), e, f);
    EXPECT_EQ(d.global, psi);
    EXPECT_TRUE(d.homotopy.is_zero());
  }
}

TEST(DescendMorphismTest, ZeroMorphism) {
  Rng rng(52);
  const SitePtr site = testing::two_open_site(kQ);
  const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
  const TwistedComplex te = twist_object(e);
  const DescendedMorphism d = descend_morphism(HomCochain(te.family, te.family), e, e);
  EXPECT_TRUE(d.global.is_zero());
  EXPECT_TRUE(d.homotopy.is_zero());
}

TEST(DescendMorphismTest, RandomClosedMorphismsSatisfyTheIdentity) {
  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const Field f = testing::pick_field(rng);
    testing::SiteShape shape;
    shape.max_opens = 2 + trial % 2;
    const SitePtr site = testing::random_site(rng, f, shape);
    const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
    const GlobalComplex g = testing::random_global(rng, site, 0, 1, 2);
    const int degree = trial % 2;
    const auto c = testing::random_closed_between_images(rng, e, g, degree);
    const DescendedMorphism d = descend_morphism(c.phi, e, g);
    // A zero input carries no degree, so only nonzero ones are checked.
    if (!c.phi.is_zero()) {
      EXPECT_EQ(d.global.shift(), degree);
    }
    EXPECT_TRUE(global_hom_diff(d.global, e, g).is_zero());
    EXPECT_EQ(c.phi - twist_morphism(d.global, c.source, c.target),
              hom_diff(d.homotopy, c.source, c.target));
  }
}

TEST(DescendMorphismTest, RejectsNonClosedInput) {
  Rng rng(54);
  const SitePtr site = testing::two_open_site(kQ);
  const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
  const TwistedComplex te = twist_object(e);
  for (int trial = 0; trial < 20; ++trial) {
    const HomCochain phi = testing::random_cochain(rng, te.family, te.family, 1, -1, 1.0);
    if (hom_diff(phi, te, te).is_zero()) continue;
    EXPECT_THROW(descend_morphism(phi, e, e), Error);
    return;
  }
  GTEST_SKIP();
}

TEST(DescendCoboundaryTest, ImageOfPrimitiveReturnsIt) {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const SitePtr site = testing::random_site(rng, kQ);
    const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
    const GlobalComplex f = testing::random_global(rng, site, 0, 1, 2);
    const SheafMorphism psi = testing::random_global_morphism(rng, e, f, -1);
    const SheafMorphism phi = global_hom_diff(psi, e, f);
    const HomCochain hat = twist_morphism(psi, twist_object(e), twist_object(f));
    EXPECT_EQ(descend_coboundary(phi, hat, e, f), psi);
  }
}

TEST(DescendCoboundaryTest, ZeroInput) {
  Rng rng(56);
  const SitePtr site = testing::two_open_site(kQ);
  const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
  const TwistedComplex te = twist_object(e);
  const SheafMorphism zero = SheafMorphism::zero(e.bundle, e.bundle, 0, kQ);
  EXPECT_TRUE(descend_coboundary(zero, HomCochain(te.family, te.family), e, e).is_zero());
}

TEST(DescendCoboundaryTest, PerturbedPrimitiveStillInverts) {
  Rng rng(57);
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
    const GlobalComplex g = testing::random_global(rng, site, 0, 1, 2);
    const TwistedComplex te = twist_object(e);
    const TwistedComplex tg = twist_object(g);
    const SheafMorphism psi = testing::random_global_morphism(rng, e, g, -1);
    const SheafMorphism phi = global_hom_diff(psi, e, g);
    const HomCochain h = testing::random_cochain_of_degree(rng, te.family, tg.family, -2, 2);
    const HomCochain hat = twist_morphism(psi, te, tg) + hom_diff(h, te, tg);
    const SheafMorphism back = descend_coboundary(phi, hat, e, g);
    EXPECT_EQ(global_hom_diff(back, e, g), phi);
  }
}

TEST(DescendCoboundaryTest, RejectsFalseHypothesis) {
  Rng rng(58);
  const SitePtr site = testing::two_open_site(kQ);
  const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
  const TwistedComplex te = twist_object(e);
  const SheafMorphism id = SheafMorphism::identity(e.bundle, kQ);
  bool nonzero = !e.bundle.is_zero();
  if (!nonzero) GTEST_SKIP();
  EXPECT_THROW(descend_coboundary(id, HomCochain(te.family, te.family), e, e), Error);
}

}  // namespace
}  // namespace twdesc
