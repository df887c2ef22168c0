#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "twdesc/error.hpp"
#include "twdesc/homology.hpp"
#include "twdesc/twisted.hpp"

namespace twdesc {
namespace {

using testing::Rng;

const Field kQ = Field::rationals();

// Delta over all faces plus (-1)^p times the commutator with the
// differentials, written out entry by entry for images of global complexes.
HomCochain decomposition(const HomCochain& phi, const GlobalComplex& e, const GlobalComplex& f) {
  HomCochain out(phi.source(), phi.target());
  const Site& site = *e.site;
  for (const auto& [key, fibers] : phi.components()) {
    const int p = key.p();
    const int q = key.q;
    for (const auto& [fk, m] : fibers) {
      const auto [x, n] = fk;
      for (const Tuple& t : testing::oracle::tuples_at(site, x, static_cast<std::size_t>(p + 2))) {
        if (static_cast<int>(t.size()) != p + 2) continue;
        for (std::size_t k = 0; k < t.size(); ++k) {
          Tuple face = t;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
          if (face != key.tuple) continue;
          out.add(t, q, x, n, k % 2 ? -m : m);
        }
      }
      const Matrix after = f.d.at(x, n + q) * m;
      out.add(key.tuple, q + 1, x, n, odd(p) ? -after : after);
      // This fiber also feeds the source degree n - 1 term through d_E.
      const Matrix before = m * e.d.at(x, n - 1);
      const bool sign = odd(p) != odd(q);
      out.add(key.tuple, q + 1, x, n - 1, sign ? before : -before);
    }
  }
  return out;
}

TEST(TwistObjectTest, ImagesSolveMaurerCartan) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const TwistedComplex t = twist_object(testing::random_global(rng, site, 0, 2, 2));
    EXPECT_TRUE(mc_residual(t).is_zero());
    for (const auto& [key, fibers] : t.a.components()) {
      EXPECT_LE(key.p(), 1);
      if (key.p() != 1) continue;
      for (const auto& [fk, m] : fibers) {
        EXPECT_EQ(m, Matrix::identity(f, m.rows()));
      }
    }
  }
}

TEST(TwistObjectTest, ZeroComplex) {
  const SitePtr site = testing::two_open_site(kQ);
  const GradedBundle zero(site->all_points(), {});
  const TwistedComplex t = twist_object(make_global(site, zero, SheafMorphism(zero, zero, 1, kQ)));
  EXPECT_TRUE(t.a.is_zero());
  EXPECT_TRUE(mc_residual(zero_twisted(site)).is_zero());
}

TEST(TwistObjectTest, NonSquareZeroIsRejected) {
  const SitePtr site = testing::two_open_site(kQ);
  std::map<FiberKey, int> dims;
  for (int x : site->all_points()) {
    for (int n = 0; n < 3; ++n) dims[{x, n}] = 1;
  }
  const GradedBundle b(site->all_points(), dims);
  FiberMaps mats;
  for (int x : site->all_points()) {
    mats[{x, 0}] = Matrix::from_ints(kQ, {{1}});
    mats[{x, 1}] = Matrix::from_ints(kQ, {{1}});
  }
  const GlobalComplex e = make_global(site, b, SheafMorphism(b, b, 1, kQ, mats));
  ASSERT_TRUE(square_zero_defect(e));
  EXPECT_THROW(twist_object(e), Error);
}

TEST(TwistMorphismTest, FunctorLaws) {
  Rng rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const GlobalComplex e = testing::random_global(rng, site, 0, 2, 2);
    const GlobalComplex g = testing::random_global(rng, site, 0, 2, 2);
    const GlobalComplex h = testing::random_global(rng, site, 0, 2, 2);
    const TwistedComplex te = twist_object(e);
    const TwistedComplex tg = twist_object(g);
    const TwistedComplex th = twist_object(h);
    const SheafMorphism u = testing::random_global_morphism(rng, e, g, testing::uniform(rng, -1, 1));
    const SheafMorphism v = testing::random_global_morphism(rng, g, h, testing::uniform(rng, -1, 1));
    EXPECT_EQ(twist_morphism(compose(v, u), te, th),
              compose(twist_morphism(v, tg, th), twist_morphism(u, te, tg)));
    EXPECT_EQ(twist_morphism(global_hom_diff(u, e, g), te, tg),
              hom_diff(twist_morphism(u, te, tg), te, tg));
  }
}

TEST(HomDiffTest, IdentityIsClosed) {
  Rng rng(7);
  const SitePtr site = testing::random_site(rng, kQ);
  const auto g = testing::random_valid_twisted(rng, site, 0, 1, 2, testing::TwistedKind::kCone);
  EXPECT_TRUE(hom_diff(identity_cochain(g.object.family), g.object, g.object).is_zero());
}

TEST(HomDiffTest, DecompositionOnImages) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const GlobalComplex e = testing::random_global(rng, site, 0, 2, 2);
    const GlobalComplex g = testing::random_global(rng, site, 0, 2, 2);
    const TwistedComplex te = twist_object(e);
    const TwistedComplex tg = twist_object(g);
    const HomCochain phi = testing::random_cochain(rng, te.family, tg.family,
                                                   testing::uniform(rng, 0, 2),
                                                   testing::uniform(rng, -1, 1));
    EXPECT_EQ(hom_diff(phi, te, tg), decomposition(phi, e, g));
  }
}

TEST(HomDiffTest, SquaresToZero) {
  Rng rng(9);
  const testing::TwistedKind kinds[] = {testing::TwistedKind::kImage,
                                        testing::TwistedKind::kGauged,
                                        testing::TwistedKind::kCone};
  for (int trial = 0; trial < 30; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const auto s = testing::random_valid_twisted(rng, site, 0, 1, 2, kinds[trial % 3]);
    const auto t = testing::random_valid_twisted(rng, site, 0, 1, 2, kinds[(trial + 1) % 3]);
    const HomCochain phi = testing::random_cochain_of_degree(rng, s.object.family, t.object.family,
                                                             testing::uniform(rng, -1, 1), 2);
    EXPECT_TRUE(hom_diff(hom_diff(phi, s.object, t.object), s.object, t.object).is_zero());
  }
}

TEST(ShiftTest, SignRule) {
  const TwistedComplex t = testing::scalar_twist_fixture(kQ, 2, 3);
  const TwistedComplex s = shift(t);
  for (const auto& [key, fibers] : t.a.components()) {
    for (const auto& [fk, m] : fibers) {
      const Matrix shifted = s.a.at(key.tuple, key.q, fk.first, fk.second - 1);
      EXPECT_EQ(shifted, key.p() % 2 == 0 ? -m : m);
    }
  }
  EXPECT_TRUE(mc_residual(s).is_zero());
}

TEST(ShiftTest, ZeroComplex) {
  const SitePtr site = testing::two_open_site(kQ);
  EXPECT_TRUE(shift(zero_twisted(site)).a.is_zero());
}

TEST(ShiftTest, PreservesValidityAndClosedness) {
  Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
    const GlobalComplex g = testing::random_global(rng, site, 0, 1, 2);
    const auto c = testing::random_closed_between_images(rng, e, g, 0);
    const TwistedComplex se = shift(c.source);
    const TwistedComplex sg = shift(c.target);
    EXPECT_TRUE(mc_residual(se).is_zero());
    EXPECT_TRUE(hom_diff(shift_morphism(c.phi), se, sg).is_zero());
  }
}

TEST(ConeTest, DegreeZeroBlockTable) {
  Rng rng(12);
  const SitePtr site = testing::two_open_site(kQ);
  const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
  const GlobalComplex g = testing::random_global(rng, site, 0, 1, 2);
  const TwistedComplex te = twist_object(e);
  const TwistedComplex tg = twist_object(g);
  const SheafMorphism f = testing::random_closed_global_morphism(rng, e, g, 0);
  const TwistedComplex c = cone(twist_morphism(f, te, tg), te, tg);
  for (int i = 0; i < 2; ++i) {
    for (int x : site->open(i)) {
      for (int n = -1; n <= 1; ++n) {
        const Matrix block = c.a.at({i}, 1, x, n);
        const auto e_rows = static_cast<std::size_t>(e.bundle.dim(x, n + 2));
        const auto e_cols = static_cast<std::size_t>(e.bundle.dim(x, n + 1));
        EXPECT_EQ(block.block(0, 0, e_rows, e_cols), -e.d.at(x, n + 1));
        EXPECT_EQ(block.block(e_rows, 0, block.rows() - e_rows, e_cols), f.at(x, n + 1));
        EXPECT_EQ(block.block(e_rows, e_cols, block.rows() - e_rows, block.cols() - e_cols),
                  g.d.at(x, n));
        EXPECT_TRUE(block.block(0, e_cols, e_rows, block.cols() - e_cols).is_zero());
      }
    }
  }
}

TEST(ConeTest, ZeroSourceGivesTarget) {
  const TwistedComplex t = testing::two_step_fixture(kQ);
  const TwistedComplex zero = zero_twisted(t.family->site);
  const TwistedComplex c = cone(HomCochain(zero.family, t.family), zero, t);
  EXPECT_EQ(c.family->bundles, t.family->bundles);
  EXPECT_EQ(testing::oracle::support_of(c.a), testing::oracle::support_of(t.a));
  for (const auto& [key, fibers] : t.a.components()) {
    for (const auto& [fk, m] : fibers) {
      EXPECT_EQ(c.a.at(key.tuple, key.q, fk.first, fk.second), m);
    }
  }
}

TEST(ConeTest, ConeOfIdentityIsAcyclic) {
  Rng rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    const SitePtr site = testing::random_site(rng, kQ);
    const TwistedComplex t = twist_object(testing::random_global(rng, site, 0, 2, 3));
    const TwistedComplex c = cone(identity_cochain(t.family), t, t);
    for (int i = 0; i < static_cast<int>(site->num_opens()); ++i) {
      for (const auto& [key, dim] : local_homology(c.family->bundles[i], local_differential(c, i))) {
        EXPECT_EQ(dim, 0) << "open " << i << " point " << key.first << " degree " << key.second;
      }
    }
  }
}

TEST(ConeTest, RejectsOpenAndWrongDegreeInput) {
  Rng rng(14);
  const SitePtr site = testing::two_open_site(kQ);
  const TwistedComplex t = twist_object(testing::random_global(rng, site, 0, 1, 2));
  const HomCochain shifted = testing::random_cochain(rng, t.family, t.family, 0, 1);
  EXPECT_THROW(cone(shifted, t, t), Error);
}

TEST(ConeTest, CoherentTableSolvesWherePrintedTablesFail) {
  Rng rng(15);
  int printed_failures = 0;
  int proof_failures = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
    const GlobalComplex g = testing::random_global(rng, site, 0, 1, 2);
    const auto c = testing::random_closed_between_images(rng, e, g, 0);
    EXPECT_TRUE(mc_residual(cone(c.phi, c.source, c.target)).is_zero());
    const HomCochain printed =
        mc_residual(cone(c.phi, c.source, c.target, ConeSigns::kPrinted));
    const HomCochain proof =
        mc_residual(cone(c.phi, c.source, c.target, ConeSigns::kProofTable));
    // The printed table only differs on odd Cech degree blocks of phi.
    if (c.phi.cech_piece(1).is_zero()) {
      EXPECT_TRUE(printed.is_zero());
    }
    printed_failures += printed.is_zero() ? 0 : 1;
    proof_failures += proof.is_zero() ? 0 : 1;
  }
  EXPECT_GT(printed_failures, 0);
  EXPECT_GT(proof_failures, 0);
}

TEST(McResidualTest, MatchesOracleOnValidAndCorruptedInput) {
  Rng rng(16);
  int detectable = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const auto g = testing::random_valid_twisted(
        rng, site, 0, 1, 2, static_cast<testing::TwistedKind>(trial % 5));
    ASSERT_TRUE(mc_residual(g.object).is_zero());
    ASSERT_TRUE(testing::oracle::mc_residual(g.object).is_zero());
    const auto& comps = g.object.a.components();
    if (comps.empty()) continue;
    auto it = comps.begin();
    std::advance(it, testing::uniform(rng, 0, static_cast<int>(comps.size()) - 1));
    auto fit = it->second.begin();
    std::advance(fit, testing::uniform(rng, 0, static_cast<int>(it->second.size()) - 1));
    Matrix bump(f, fit->second.rows(), fit->second.cols());
    bump(static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(bump.rows()) - 1)),
         static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(bump.cols()) - 1))) =
        testing::random_nonzero(rng, f);
    TwistedComplex bad = g.object;
    bad.a.add(it->first.tuple, it->first.q, fit->first.first, fit->first.second, bump);
    const auto got = testing::oracle::support_of(mc_residual(bad));
    EXPECT_EQ(got, testing::oracle::support_of(testing::oracle::mc_residual(bad)));
    for (const auto& loc : got) EXPECT_EQ(std::get<2>(loc), fit->first.first);
    if (!got.empty()) ++detectable;
  }
  EXPECT_GT(detectable, 20);
}

TEST(DescribeTest, NamesTupleAndDegree) {
  const SitePtr site = testing::two_open_site(kQ);
  EXPECT_EQ(describe(ResidualEntry{{0, 1}, 0, 1, 1}, *site), "tuple (0,1), q=0, point b, degree 1");
}

}  // namespace
}  // namespace twdesc
