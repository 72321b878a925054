// Copyright 2026 The clgeom Authors
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

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace {

using namespace clgeom;
using clgeom::testing::World;
using clgeom::testing::world;

IndexSet random_set(std::size_t universe, double density, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(density);
  IndexSet s(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if (coin(rng)) s.insert(i);
  return s;
}

TEST(Klein, StarSumMatchesPairwiseOnRandomSets) {
  const Geometry& geo = world(5).geo;
  for (std::uint32_t seed = 0; seed < 4; ++seed) {
    const IndexSet t = random_set(geo.num_lines(), 0.1 + 0.2 * seed, seed);
    const auto stars = star_counts(geo, t);
    EXPECT_EQ(stars, clgeom::testing::oracle_star_counts(geo, t));
    for (LineIndex l = 0; l < geo.num_lines(); ++l) {
      ASSERT_EQ(meet_count(geo, stars, t, l), clgeom::testing::oracle_meet_count(geo, t, l));
      ASSERT_EQ(klein_perp_count(geo, l, t), klein_perp_count_pairwise(geo, l, t));
    }
  }
}

TEST(Klein, PlaneCountsMatchCoordinates) {
  const Geometry& geo = world(5).geo;
  const IndexSet t = random_set(geo.num_lines(), 0.3, 99);
  EXPECT_EQ(plane_counts(geo, t), clgeom::testing::oracle_plane_counts(geo, t));
}

TEST(Klein, MeetCountExamples) {
  const Geometry& geo = world(5).geo;
  const IndexSet all = IndexSet::full(geo.num_lines()), none(geo.num_lines());
  const IndexSet just(geo.num_lines(), {7});
  for (LineIndex l : {0u, 7u, 805u}) {
    EXPECT_EQ(klein_perp_count(geo, l, all), 1 + (5 + 1) * 5 * 6);  // l and the (q+1)(q^2+q) others
    EXPECT_EQ(klein_perp_count(geo, l, none), 0);
  }
  EXPECT_EQ(klein_perp_count(geo, 7, just), 1);
}

IndexSet point_star(const Geometry& geo, PointIndex p) {
  IndexSet s(geo.num_lines());
  for (auto l : geo.lines_through(p)) s.insert(l);
  return s;
}

IndexSet plane_lines(const Geometry& geo, PlaneIndex s) {
  IndexSet t(geo.num_lines());
  for (auto l : geo.lines_in(s)) t.insert(l);
  return t;
}

TEST(Klein, TrivialTightSets) {
  for (int q : {5, 9}) {
    const Geometry& geo = world(q).geo;
    const auto star = point_star(geo, 3);
    const auto r = verify_tight(geo, star, 1);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.expected_in, q + 1 + q * q);
    EXPECT_EQ(r.expected_out, q + 1);
    EXPECT_TRUE(verify_tight(geo, plane_lines(geo, 3), 1).pass);
    // A point star and a plane not through the point: x = 2.
    PlaneIndex s = 0;
    while (geo.point_on_plane(3, s)) ++s;
    EXPECT_TRUE(verify_tight(geo, star | plane_lines(geo, s), 2).pass);
    EXPECT_TRUE(verify_tight(geo, IndexSet(geo.num_lines()), 0).pass);
    EXPECT_TRUE(verify_tight(geo, IndexSet::full(geo.num_lines()), q * q + 1).pass);
  }
}

TEST(Klein, ComplementDuality) {
  const Geometry& geo = world(5).geo;
  const long q = 5;
  PlaneIndex s = 0;
  while (geo.point_on_plane(10, s)) ++s;
  const std::pair<IndexSet, long> cases[] = {
      {point_star(geo, 10), 1}, {plane_lines(geo, 4), 1}, {point_star(geo, 10) | plane_lines(geo, s), 2}};
  for (const auto& [t, x] : cases) {
    EXPECT_TRUE(verify_tight(geo, t, x).pass);
    EXPECT_TRUE(verify_tight(geo, t.complement(), q * q + 1 - x).pass);
  }
  const auto two_stars = point_star(geo, 10) | point_star(geo, 100);
  for (long x = 0; x <= q * q + 1; ++x)
    EXPECT_EQ(verify_tight(geo, two_stars, x).pass, verify_tight(geo, two_stars.complement(), q * q + 1 - x).pass);
}

TEST(Klein, Failures) {
  const Geometry& geo = world(5).geo;
  auto star = point_star(geo, 3);
  const auto wrong_size = verify_tight(geo, star, 2);
  EXPECT_FALSE(wrong_size.pass);
  EXPECT_FALSE(wrong_size.size_ok);
  EXPECT_EQ(wrong_size.n_violations, 0u);
  // Swap one star line for a line off the point: same size, not tight.
  const auto first = geo.lines_through(3)[0];
  star.erase(first);
  LineIndex other = 0;
  while (geo.point_on_line(3, other)) ++other;
  star.insert(other);
  const auto r = verify_tight(geo, star, 1, 1, 5);
  EXPECT_TRUE(r.size_ok);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.n_violations, 0u);
  EXPECT_LE(r.sample_violations.size(), 5u);
  for (std::size_t i = 1; i < r.sample_violations.size(); ++i)
    EXPECT_LT(r.sample_violations[i - 1].line, r.sample_violations[i].line);
}

TEST(Klein, ThreadCountDoesNotChangeResults) {
  const Geometry& geo = world(9).geo;
  const IndexSet t = random_set(geo.num_lines(), 0.5, 5);
  const auto a = verify_tight(geo, t, 0, 1), b = verify_tight(geo, t, 0, 4);
  EXPECT_EQ(a.n_violations, b.n_violations);
  ASSERT_EQ(a.sample_violations.size(), b.sample_violations.size());
  for (std::size_t i = 0; i < a.sample_violations.size(); ++i) EXPECT_EQ(a.sample_violations[i].line, b.sample_violations[i].line);
}

}  // namespace
