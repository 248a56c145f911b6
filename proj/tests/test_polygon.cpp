// Copyright 2026 The ViSTA Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"
#include "support.hpp"

#include "vista/error.hpp"
#include "vista/polygon.hpp"

#include <gtest/gtest.h>

namespace vista
{
namespace
{

using test::Rng;
using test::rectangle;

// Reference distances computed with an independent GEOS-based library.
TEST(Polygon, SeparationMatchesReferenceValues)
{
  const Polygon box{{0, 0}, {4, 0}, {4, 2}, {0, 2}};
  const Polygon tri{{6, 3}, {8, 3}, {7, 5}};
  const Polygon diamond{{1, -3}, {3, -1}, {5, -3}, {3, -5}};
  const Polygon u_shape{{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}};
  const Polygon in_notch{{1.2, 1.5}, {1.8, 1.5}, {1.8, 2.5}, {1.2, 2.5}};
  EXPECT_NEAR(polygon::min_separation(box, tri), 2.23606797749979, 1e-12);
  EXPECT_NEAR(polygon::min_separation(box, diamond), 1.0, 1e-12);
  EXPECT_NEAR(polygon::min_separation(u_shape, in_notch), 0.2, 1e-12);
}

TEST(Polygon, SeparationIsZeroForTouchingOverlappingAndNested)
{
  const Polygon a = rectangle({0, 0}, 2, 2);
  EXPECT_EQ(polygon::min_separation(a, rectangle({2, 0}, 2, 2)), 0.0);
  EXPECT_EQ(polygon::min_separation(a, rectangle({1, 1}, 2, 2)), 0.0);
  EXPECT_EQ(polygon::min_separation(a, rectangle({0, 0}, 0.5, 0.5)), 0.0);
}

TEST(Polygon, DegenerateInputsAreRejected)
{
  EXPECT_TRUE(polygon::degeneracy({{0, 0}, {1, 0}}));
  EXPECT_TRUE(polygon::degeneracy({{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_TRUE(polygon::degeneracy({{0, 0}, {1, 0}, {1, 0}, {0, 1}}));
  EXPECT_TRUE(polygon::degeneracy({{0, 0}, {2, 2}, {2, 0}, {0, 2}}));  // bow tie
  EXPECT_TRUE(polygon::degeneracy({{0, 0}, {std::nan(""), 0}, {0, 1}}));
  EXPECT_FALSE(polygon::degeneracy(rectangle({0, 0}, 1, 1)));
  try {
    (void)polygon::min_separation({{0, 0}, {1, 0}}, rectangle({0, 0}, 1, 1));
    FAIL() << "expected an error";
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), Errc::degenerate_polygon);
  }
}

TEST(Polygon, ContainmentCountsTheBoundary)
{
  const Polygon a = rectangle({0, 0}, 2, 2);
  EXPECT_TRUE(polygon::contains(a, {0, 0}));
  EXPECT_TRUE(polygon::contains(a, {1, 0}));
  EXPECT_TRUE(polygon::contains(a, {1, 1}));
  EXPECT_FALSE(polygon::contains(a, {1.0001, 0}));
}

TEST(Polygon, WindingDoesNotMatter)
{
  Polygon a = rectangle({0, 0}, 2, 2);
  Polygon b = rectangle({5, 1}, 2, 2);
  const double d = polygon::min_separation(a, b);
  std::reverse(a.begin(), a.end());
  EXPECT_EQ(polygon::min_separation(a, b), d);
  EXPECT_LT(polygon::signed_area(a), 0.0);
}

TEST(Directional, DeadAheadReportsOnlyLongitudinal)
{
  const Polygon vut = rectangle({0, 0}, 4.4, 1.8);
  const Polygon lead = rectangle({4.4 + 2.0, 0}, 4.4, 1.8);
  const auto d = polygon::directional_clearance(vut, lead);
  EXPECT_NEAR(d.longitudinal, 2.0, 1e-12);
  EXPECT_TRUE(std::isinf(d.lateral));
}

TEST(Directional, AlongsideReportsOnlyLateral)
{
  const Polygon vut = rectangle({0, 0}, 4.4, 1.8);
  const Polygon parked = rectangle({1.0, -(0.9 + 0.75 + 0.9)}, 4.4, 1.8);
  const auto d = polygon::directional_clearance(vut, parked);
  EXPECT_NEAR(d.lateral, 0.75, 1e-12);
  EXPECT_TRUE(std::isinf(d.longitudinal));
}

TEST(Directional, DiagonalNeighbourIsNotApplicableOnBothAxes)
{
  const auto d = polygon::directional_clearance(rectangle({0, 0}, 2, 2), rectangle({5, 5}, 2, 2));
  EXPECT_TRUE(std::isinf(d.lateral));
  EXPECT_TRUE(std::isinf(d.longitudinal));
}

TEST(Directional, EdgeContactIsNotOverlap)
{
  // Projections that merely touch do not make an axis applicable.
  const auto d = polygon::directional_clearance(rectangle({0, 0}, 2, 2), rectangle({2, 3}, 2, 2));
  EXPECT_TRUE(std::isinf(d.lateral));
}

TEST(Directional, InterpenetrationIsNegative)
{
  const auto d = polygon::directional_clearance(rectangle({0, 0}, 4, 2), rectangle({0, 1.5}, 4, 2));
  EXPECT_NEAR(d.lateral, -0.5, 1e-12);
}

TEST(Directional, ExtentJumpAtAReflexVertexIsNotExtrapolated)
{
  // A's lower chain starts at x = -0.752, so its cross-section grows in one
  // jump there; the deepest lateral overlap lies just left of that vertex.
  const Polygon a{
    {1.1793562837274485, -0.72134258658180173}, {0.6477394775659141, 0.052610628640871578},
    {0.97885917553181778, 0.94084559734036377}, {0.16996042392744803, 0.72115233916845289},
    {-0.40188453543449193, 0.58183370456915462}, {-1.3246227024022523, 0.55081367567477724},
    {-0.55031347561878208, -0.32128020542608987}, {-0.75226484034394647, -1.1245885950219445},
    {0.14195799517271315, -1.5206741966299278}};
  const Polygon b{
    {-0.99506558707265935, -0.51844683806376057}, {-0.66931467273473033, 0.32056983062779931},
    {-1.5190469771539394, 1.1790940505669971}, {-1.9793678283218754, -0.26896205489579839}};
  const auto d = polygon::directional_clearance(a, b);
  EXPECT_NEAR(d.lateral, -0.4966737, 1e-6);
  EXPECT_NEAR(d.lateral, oracle::sampled_gap(a, b, true), 1e-6);
  EXPECT_NEAR(d.longitudinal, oracle::sampled_gap(a, b, false), 1e-6);
}

TEST(Directional, MatchesSamplingOracleOnRandomPairs)
{
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const Polygon a = test::random_polygon(rng, {0, 0}, test::uniform(rng, 0.5, 3), test::uniform_int(rng, 3, 9));
    const double r = test::uniform(rng, 0, 7);
    const double t = test::uniform(rng, 0, 2 * std::numbers::pi);
    const Polygon b = test::random_polygon(
      rng, {r * std::cos(t), r * std::sin(t)}, test::uniform(rng, 0.5, 3), test::uniform_int(rng, 3, 9));
    const auto d = polygon::directional_clearance(a, b);
    const double lat = oracle::sampled_gap(a, b, true);
    const double lon = oracle::sampled_gap(a, b, false);
    if (std::isinf(lat)) {
      ASSERT_TRUE(std::isinf(d.lateral)) << i;
    } else {
      ASSERT_NEAR(d.lateral, lat, 1e-3) << i;
      ASSERT_LE(d.lateral, lat + 1e-9) << i;
    }
    if (std::isinf(lon)) {
      ASSERT_TRUE(std::isinf(d.longitudinal)) << i;
    } else {
      ASSERT_NEAR(d.longitudinal, lon, 1e-3) << i;
    }
  }
}

TEST(Separation, MatchesSamplingOracleOnRandomPairs)
{
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    const Polygon a = test::random_polygon(rng, {0, 0}, test::uniform(rng, 0.5, 3), test::uniform_int(rng, 3, 9));
    const double r = test::uniform(rng, 0, 8);
    const double t = test::uniform(rng, 0, 2 * std::numbers::pi);
    const Polygon b = test::random_polygon(
      rng, {r * std::cos(t), r * std::sin(t)}, test::uniform(rng, 0.5, 3), test::uniform_int(rng, 3, 9));
    ASSERT_NEAR(polygon::min_separation(a, b), oracle::sampled_separation(a, b), 1e-3) << i;
  }
}

TEST(Separation, IsSymmetricAndOneLipschitzUnderTranslation)
{
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Polygon a = test::random_polygon(rng, {0, 0}, 2, 7);
    const Polygon b = test::random_polygon(rng, {test::uniform(rng, -6, 6), test::uniform(rng, -6, 6)}, 2, 7);
    const double d = polygon::min_separation(a, b);
    ASSERT_DOUBLE_EQ(d, polygon::min_separation(b, a));
    const Vec2 v{test::uniform(rng, -1, 1), test::uniform(rng, -1, 1)};
    const double moved = polygon::min_separation(a, polygon::translated(b, v));
    ASSERT_LE(std::abs(moved - d), norm(v) + 1e-9);
    if (polygon::intersects(a, b)) {
      ASSERT_EQ(d, 0.0);
    } else {
      ASSERT_GT(d, 0.0);
    }
  }
}

TEST(Contact, HeadOnApproach)
{
  const Polygon fixed = rectangle({10, 0}, 2, 2);
  const Polygon moving = rectangle({0, 0}, 2, 2);
  EXPECT_NEAR(polygon::time_to_contact(fixed, moving, {2, 0}, 30), 4.0, 1e-12);
  EXPECT_TRUE(std::isinf(polygon::time_to_contact(fixed, moving, {-2, 0}, 30)));
  EXPECT_TRUE(std::isinf(polygon::time_to_contact(fixed, moving, {0, 0}, 30)));
  EXPECT_TRUE(std::isinf(polygon::time_to_contact(fixed, moving, {0.2, 0}, 30)));  // 40 s > horizon
  EXPECT_EQ(polygon::time_to_contact(fixed, rectangle({9.5, 0}, 2, 2), {1, 0}, 30), 0.0);
}

TEST(Contact, GrazingPassIsContact)
{
  // Edges slide along each other: touching counts.
  const Polygon fixed = rectangle({10, 2}, 2, 2);
  const Polygon moving = rectangle({0, 0}, 2, 2);
  EXPECT_NEAR(polygon::time_to_contact(fixed, moving, {1, 0}, 30), 8.0, 1e-12);
}

TEST(Contact, MatchesSteppedSimulation)
{
  Rng rng(17);
  for (int i = 0; i < 120; ++i) {
    const Polygon fixed = test::random_polygon(rng, {0, 0}, test::uniform(rng, 0.5, 2.5), 6);
    const double r = test::uniform(rng, 4, 25);
    const double th = test::uniform(rng, 0, 2 * std::numbers::pi);
    const Vec2 start{r * std::cos(th), r * std::sin(th)};
    const Polygon moving = test::random_polygon(rng, start, test::uniform(rng, 0.5, 2.5), 6);
    const double aim = std::atan2(-start.y, -start.x) + test::uniform(rng, -0.3, 0.3);
    const double speed = test::uniform(rng, 0.5, 8);
    const Vec2 v{speed * std::cos(aim), speed * std::sin(aim)};
    const double exact = polygon::time_to_contact(fixed, moving, v, 30);
    const double stepped = oracle::stepped_contact_time(fixed, {0, 0}, moving, v, 30);
    if (std::isinf(stepped)) {
      ASSERT_TRUE(std::isinf(exact) || exact > 30 - 1e-3) << i;
    } else {
      ASSERT_NEAR(exact, stepped, 1e-3 + 1e-9) << i;
    }
  }
}

TEST(Hull, DropsReflexVertices)
{
  const Polygon u_shape{{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}};
  const Polygon hull = polygon::convex_hull(u_shape);
  EXPECT_EQ(hull.size(), 4u);
  EXPECT_NEAR(std::abs(polygon::signed_area(hull)), 9.0, 1e-12);
}

TEST(Penetration, AxisAlignedOverlap)
{
  EXPECT_NEAR(polygon::penetration_depth(rectangle({0, 0}, 2, 2), rectangle({1.7, 0.2}, 2, 2)), 0.3, 1e-12);
  EXPECT_EQ(polygon::penetration_depth(rectangle({0, 0}, 2, 2), rectangle({3, 0}, 2, 2)), 0.0);
  EXPECT_EQ(polygon::penetration_depth(rectangle({0, 0}, 2, 2), rectangle({2, 0}, 2, 2)), 0.0);
}

TEST(Penetration, TranslatingByDepthSeparates)
{
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const Polygon a = polygon::convex_hull(test::random_polygon(rng, {0, 0}, 2, 8));
    const Polygon b = polygon::convex_hull(test::random_polygon(rng, {test::uniform(rng, -2, 2), test::uniform(rng, -2, 2)}, 2, 8));
    const double depth = polygon::penetration_depth(a, b);
    ASSERT_GE(depth, 0.0);
    if (depth == 0.0) {
      continue;
    }
    // No translation shorter than the depth separates the hulls.
    for (int k = 0; k < 16; ++k) {
      const double th = k * std::numbers::pi / 8;
      const Vec2 d{0.99 * depth * std::cos(th), 0.99 * depth * std::sin(th)};
      ASSERT_TRUE(oracle::regions_meet(a, oracle::shifted(b, d))) << i;
    }
  }
}

}  // namespace
}  // namespace vista
