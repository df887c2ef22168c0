#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "twdesc/error.hpp"
#include "twdesc/io.hpp"

namespace twdesc {
namespace {

using io::json;
using testing::Rng;

const Field kQ = Field::rationals();

json fixture_with(const Site& site, const json& objects, const json& morphisms = json::object()) {
  return {{"format_version", io::kFormatVersion},
          {"field", site.field().to_string()},
          {"site", io::to_json(site)},
          {"objects", objects},
          {"morphisms", morphisms}};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kMath;
}

TEST(IoTest, ScalarsSerializeExactly) {
  EXPECT_EQ(io::to_json(Scalar::parse(kQ, "-6/4")), json("-3/2"));
  EXPECT_EQ(io::to_json(Scalar::from_int(kQ, 5)), json("5/1"));
  EXPECT_EQ(io::to_json(Scalar::from_int(Field::prime(7), -1)), json(6));
}

TEST(IoTest, TwistedAndGlobalObjectsRoundTrip) {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = testing::pick_field(rng);
    const SitePtr site = testing::random_site(rng, f);
    const GlobalComplex e = testing::random_global(rng, site, 0, 1, 2);
    const GlobalComplex g = testing::random_global(rng, site, 0, 1, 2);
    const auto t = testing::random_valid_twisted(rng, site, 0, 1, 2,
                                                 static_cast<testing::TwistedKind>(trial % 5));
    const auto c = testing::random_closed_between_images(rng, e, g, 0);
    json phi = {{"kind", "cochain"}, {"source", "E"}, {"target", "G"}, {"degree", 0},
                {"components", io::to_json(c.phi)}};
    json f_json = io::global_morphism_json(c.global_part, *site);
    f_json["source"] = "E";
    f_json["target"] = "G";
    const json doc = fixture_with(
        *site, {{"E", io::to_json(e)}, {"G", io::to_json(g)}, {"T", io::to_json(t.object)}},
        {{"phi", phi}, {"f", f_json}});
    const io::Fixture fx = io::parse_fixture(json::parse(io::dump(doc)));
    EXPECT_EQ(*fx.site, *site);
    EXPECT_EQ(fx.globals.at("E").bundle, e.bundle);
    EXPECT_EQ(fx.globals.at("E").d, e.d);
    EXPECT_EQ(fx.twisted.at("T").family->bundles, t.object.family->bundles);
    EXPECT_EQ(io::to_json(fx.twisted.at("T").a), io::to_json(t.object.a));
    EXPECT_EQ(io::to_json(*fx.morphisms.at("phi").cochain), io::to_json(c.phi));
    EXPECT_EQ(*fx.morphisms.at("f").global, c.global_part);
    EXPECT_EQ(io::dump(io::to_json(fx.twisted.at("T"))), io::dump(io::to_json(t.object)));
  }
}

TEST(IoTest, FieldOverride) {
  const SitePtr site = testing::two_open_site(kQ);
  const json doc = fixture_with(*site, {{"L", io::to_json(testing::line_bundle_fixture(kQ))}});
  const io::Fixture fx = io::parse_fixture(doc, Field::prime(7));
  EXPECT_EQ(fx.site->field(), Field::prime(7));
  EXPECT_TRUE(mc_residual(fx.twisted.at("L")).is_zero());
}

TEST(IoTest, MalformedInputIsAnInputError) {
  const SitePtr site = testing::two_open_site(kQ);
  const json good = fixture_with(*site, {{"L", io::to_json(testing::line_bundle_fixture(kQ))}});

  json wrong_version = good;
  wrong_version["format_version"] = 99;
  EXPECT_EQ(kind_of([&] { io::parse_fixture(wrong_version); }), ErrorKind::kInput);

  json unknown_point = good;
  unknown_point["objects"]["L"]["twist"][0]["point"] = "z";
  EXPECT_EQ(kind_of([&] { io::parse_fixture(unknown_point); }), ErrorKind::kInput);

  json bad_shape = good;
  bad_shape["objects"]["L"]["twist"][0]["matrix"] = json::array({json::array({1, 2})});
  EXPECT_EQ(kind_of([&] { io::parse_fixture(bad_shape); }), ErrorKind::kInput);

  json off_support = good;
  off_support["objects"]["L"]["twist"][0]["point"] = "c";
  off_support["objects"]["L"]["twist"][0]["tuple"] = json::array({0});
  EXPECT_EQ(kind_of([&] { io::parse_fixture(off_support); }), ErrorKind::kInput);

  json missing_site = good;
  missing_site.erase("site");
  EXPECT_EQ(kind_of([&] { io::parse_fixture(missing_site); }), ErrorKind::kInput);

  json dangling = good;
  dangling["morphisms"]["m"] = {{"kind", "cochain"}, {"source", "L"}, {"target", "nope"},
                                {"degree", 0}, {"components", json::array()}};
  EXPECT_EQ(kind_of([&] { io::parse_fixture(dangling); }), ErrorKind::kInput);

  json bad_scalar = good;
  bad_scalar["objects"]["L"]["twist"][0]["matrix"] = json::array({json::array({"1/0"})});
  EXPECT_EQ(kind_of([&] { io::parse_fixture(bad_scalar); }), ErrorKind::kInput);

  EXPECT_EQ(kind_of([&] { io::read_fixture("/nonexistent/fixture.json"); }), ErrorKind::kInput);
}

TEST(IoTest, ResidualSummaryNamesLocation) {
  TwistedComplex t = testing::scalar_twist_fixture(kQ, 2, 3);
  EXPECT_EQ(io::residual_summary("MC residual", mc_residual(t)), "MC residual: 0");
  t.a.add({0, 1}, 0, 1, 1, Matrix::from_ints(kQ, {{1}}));
  const std::string s = io::residual_summary("MC residual", mc_residual(t));
  EXPECT_NE(s.find("nonzero entries, first at tuple ("), std::string::npos) << s;
  EXPECT_NE(s.find("degree"), std::string::npos) << s;
}

}  // namespace
}  // namespace twdesc
