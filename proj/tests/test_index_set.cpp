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
#include <set>

#include "clgeom/index_set.hpp"

namespace {

using clgeom::IndexSet;

TEST(IndexSet, AgreesWithStdSet) {
  std::mt19937 rng(7);
  for (std::size_t universe : {1u, 63u, 64u, 65u, 130u, 806u}) {
    for (int trial = 0; trial < 20; ++trial) {
      IndexSet a(universe), b(universe);
      std::set<std::uint32_t> sa, sb;
      for (std::size_t i = 0; i < universe; ++i) {
        if (rng() % 3 == 0) a.insert(i), sa.insert(i);
        if (rng() % 2 == 0) b.insert(i), sb.insert(i);
      }
      EXPECT_EQ(a.size(), sa.size());
      std::set<std::uint32_t> u, in, d;
      for (auto x : sa) (sb.count(x) ? in : d).insert(x);
      u = sa;
      u.insert(sb.begin(), sb.end());
      auto as_set = [](const IndexSet& s) {
        auto m = s.members();
        return std::set<std::uint32_t>(m.begin(), m.end());
      };
      EXPECT_EQ(as_set(a | b), u);
      EXPECT_EQ(as_set(a & b), in);
      EXPECT_EQ(as_set(a - b), d);
      EXPECT_EQ(a.complement().size(), universe - sa.size());
      EXPECT_EQ(a.complement().complement(), a);
      EXPECT_EQ(a.intersects(b), !in.empty());
      EXPECT_EQ((a & b).is_subset_of(a), true);
    }
  }
}

TEST(IndexSet, Basics) {
  IndexSet s(10, {1, 3, 5});
  EXPECT_EQ(s.size(), 3u);
  s.erase(3);
  EXPECT_FALSE(s.contains(3));
  EXPECT_TRUE(IndexSet(10).empty());
  EXPECT_EQ(IndexSet::full(70).size(), 70u);
  EXPECT_TRUE(IndexSet::full(70).complement().empty());
}

TEST(IndexSet, Errors) {
  IndexSet a(10), b(11);
  EXPECT_THROW(a |= b, std::invalid_argument);
  EXPECT_THROW(a.insert(10), std::out_of_range);
}

}  // namespace
