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
using clgeom::testing::value_set;
using clgeom::testing::World;
using clgeom::testing::world;

std::set<long> set_of(std::initializer_list<long> v) { return v; }

Element lambda_bar(int q) { return world(q).geo.field().distinguished_nonsquare(); }

TEST(BruenDrudge, AllVariantsAreTight) {
  for (int q : {3, 5, 7, 9}) {
    const World& w = world(q);
    for (auto side : {Side::on, Side::os})
      for (auto others : {NonTangentLines::secant, NonTangentLines::external}) {
        const auto lc = build_bruen_drudge(w.pencil, lambda_bar(q), side, others);
        EXPECT_EQ(static_cast<long>(lc.members.size()), half_parameter(q) * (q * q + q + 1));
        EXPECT_TRUE(verify_tight(w.geo, lc.members, lc.x).pass) << "q=" << q;
      }
  }
}

TEST(BruenDrudge, ContainsAAndAvoidsB) {
  for (int q : {5, 9, 13}) {
    const World& w = world(q);
    const auto lc = build_bruen_drudge(w.pencil, lambda_bar(q), Side::on);
    const auto [a, b] = w.pencil.build_A_B();
    EXPECT_TRUE(a.is_subset_of(lc.members));
    EXPECT_FALSE(b.intersects(lc.members));
  }
}

TEST(BruenDrudge, CharactersMatchFamilyList) {
  for (int q : {5, 9, 13}) {
    const World& w = world(q);
    const auto lc = build_bruen_drudge(w.pencil, lambda_bar(q), Side::os, NonTangentLines::external);
    const auto fam = known_family_characters(q).at(0);
    const auto star = star_characters(w.geo, lc.members).values(), plane = plane_characters(w.geo, lc.members).values();
    EXPECT_EQ(star, fam.star_values);
    EXPECT_EQ(plane, fam.plane_values);
  }
}

TEST(BruenDrudge, RejectsSquareLambda) {
  const World& w = world(5);
  EXPECT_THROW(build_bruen_drudge(w.pencil, w.geo.field().one(), Side::on), std::invalid_argument);
}

TEST(FirstDerived, TightWithFamilyCharacters) {
  for (int q : {5, 9, 13}) {
    const World& w = world(q);
    const auto base = build_bruen_drudge(w.pencil, lambda_bar(q), Side::os, NonTangentLines::external);
    const PointIndex r = w.pencil.sign_partition(lambda_bar(q)).quadric.members().front();
    const auto lc = build_first_derived(w.pencil, base, lambda_bar(q), r);
    EXPECT_EQ(lc.members.size(), base.members.size());
    EXPECT_NE(lc.members, base.members);
    EXPECT_TRUE(verify_tight(w.geo, lc.members, lc.x).pass);
    const auto fam = known_family_characters(q).at(1);
    EXPECT_EQ(star_characters(w.geo, lc.members).values(), fam.star_values) << q;
    EXPECT_EQ(plane_characters(w.geo, lc.members).values(), fam.plane_values) << q;
    if (q == 9) EXPECT_EQ(plane_characters(w.geo, lc.members).values().front(), 5);
    // Same construction from the secant form, swapping the other way.
    const auto secant_base = build_bruen_drudge(w.pencil, lambda_bar(q), Side::on);
    EXPECT_TRUE(verify_tight(w.geo, build_first_derived(w.pencil, secant_base, lambda_bar(q), r).members, lc.x).pass);
    const PointIndex off = w.pencil.sign_partition(lambda_bar(q)).on.members().front();
    EXPECT_THROW(build_first_derived(w.pencil, base, lambda_bar(q), off), std::invalid_argument);
  }
}

TEST(Derive, SetAlgebraAndErrors) {
  const World& w = world(5);
  const auto n = w.geo.num_lines();
  LineClass l{"t", IndexSet(n, {1, 2, 3}), 0};
  EXPECT_EQ(derive(l, IndexSet(n), IndexSet(n)).members, l.members);
  const IndexSet want(n, {2, 3, 9});
  EXPECT_EQ(derive(l, IndexSet(n, {1}), IndexSet(n, {9})).members, want);
  try {
    derive(l, IndexSet(n, {1, 4, 5}), IndexSet(n, {9, 10, 11}));
    FAIL() << "expected DerivationError";
  } catch (const DerivationError& e) {
    EXPECT_EQ(e.witnesses(), (std::vector<LineIndex>{4, 5}));
  }
  try {
    derive(l, IndexSet(n, {1}), IndexSet(n, {3}));
    FAIL() << "expected DerivationError";
  } catch (const DerivationError& e) {
    EXPECT_EQ(e.witnesses(), (std::vector<LineIndex>{3}));
  }
  EXPECT_THROW(derive(l, IndexSet(n, {1}), IndexSet(n, {8, 9})), DerivationError);
}

TEST(Derived, PreconditionsHold) {
  for (int q : {5, 9, 13}) {
    const World& w = world(q);
    const auto dc = build_derived(w.pencil, lambda_bar(q));
    const auto rep = check_derivation_preconditions(w.pencil, dc.base, dc.a, dc.b, 2);
    EXPECT_TRUE(rep.containment_ok);
    EXPECT_EQ(rep.balance_violations, 0u);
    EXPECT_EQ(rep.closed_form_violations, 0u);
    std::size_t covered = 0;
    for (const auto& c : rep.cases) {
      EXPECT_GT(c.lines, 0u) << c.name;
      covered += c.lines;
    }
    EXPECT_EQ(covered, w.geo.num_lines());
  }
}

TEST(Derived, ClosedFormExamplesAtQ5) {
  const auto cases = derivation_cases(5);
  auto find = [&](const std::string& name) {
    for (const auto& c : cases)
      if (c.name == name) return c;
    throw std::runtime_error(name);
  };
  EXPECT_EQ(find("regulus").expected_a, 46);
  EXPECT_EQ(find("L1").expected_a, 36);
  EXPECT_EQ(find("L1").expected_b, 61);
  EXPECT_EQ(find("L2'").expected_a, 43);
  EXPECT_EQ(find("L2'").expected_b, 18);
}

TEST(Derived, ClosedFormsAgainstPairwiseOracleAtQ5) {
  const World& w = world(5);
  const auto dc = build_derived(w.pencil, lambda_bar(5));
  const auto cases = derivation_cases(5);
  for (LineIndex l = 0; l < w.geo.num_lines(); ++l) {
    const int c = derivation_case_of(w.pencil, l);
    ASSERT_GE(c, 0);
    ASSERT_EQ(clgeom::testing::oracle_meet_count(w.geo, dc.a, l), cases[c].expected_a) << cases[c].name;
    ASSERT_EQ(clgeom::testing::oracle_meet_count(w.geo, dc.b, l), cases[c].expected_b) << cases[c].name;
  }
}

TEST(Derived, TightAndPairwiseConsistentAtQ5) {
  const World& w = world(5);
  const auto dc = build_derived(w.pencil, lambda_bar(5));
  EXPECT_EQ(dc.derived.members.size(), 13u * 31u);
  const long in = 13 * 6 + 25, out = 13 * 6;
  for (LineIndex l = 0; l < w.geo.num_lines(); ++l)
    ASSERT_EQ(clgeom::testing::oracle_meet_count(w.geo, dc.derived.members, l), dc.derived.members.contains(l) ? in : out);
  EXPECT_TRUE(verify_tight(w.geo, dc.derived.members, 13).pass);
  EXPECT_TRUE(verify_tight(w.geo, dc.derived.members.complement(), 13).pass);
}

TEST(Derived, RejectsQ3Mod4) {
  for (int q : {3, 7, 11}) EXPECT_THROW(build_derived(world(q).pencil, lambda_bar(q)), std::invalid_argument);
}

TEST(Derived, InvariantUnionOfOrbits) {
  for (int q : {5, 9}) {
    const World& w = world(q);
    const auto dc = build_derived(w.pencil, lambda_bar(q));
    const GroupAction ga(w.geo);
    EXPECT_TRUE(ga.is_invariant(dc.derived.members, ObjectKind::line));
    EXPECT_TRUE(ga.is_invariant(dc.a, ObjectKind::line));
    EXPECT_TRUE(ga.is_invariant(dc.b, ObjectKind::line));
  }
}

TEST(Characters, DerivedClassAtQ5ByOracle) {
  const World& w = world(5);
  const auto dc = build_derived(w.pencil, lambda_bar(5));
  const auto stars = clgeom::testing::oracle_star_counts(w.geo, dc.derived.members);
  const auto planes = clgeom::testing::oracle_plane_counts(w.geo, dc.derived.members);
  EXPECT_EQ(star_counts(w.geo, dc.derived.members), stars);
  EXPECT_EQ(plane_counts(w.geo, dc.derived.members), planes);
  // The formula value (q^2+q)/2 - (q+1) = 9 comes from type-I points of O_n;
  // at q = 5 there are none, so 9 does not occur.
  EXPECT_EQ(value_set(stars), set_of({3, 15, 21}));
  EXPECT_EQ(value_set(planes), set_of({10, 16, 28}));
}

std::set<long> formula_stars(long q) {
  const long h = (q * q + q) / 2;
  return {(q + 1) / 2, h - 2 * (q + 1), h - (q + 1), h, h + q + 1, q * q - (q + 3) / 2};
}

std::set<long> formula_planes(long q) {
  const long h = (q * q + q) / 2;
  return {(3 * q + 5) / 2, h - q, h + 1, h + q + 2, h + 2 * q + 3, q * q + (q + 1) / 2};
}

TEST(Characters, DerivedClassFormulas) {
  EXPECT_EQ(formula_stars(9), set_of({5, 25, 35, 45, 55, 75}));
  EXPECT_EQ(formula_planes(9), set_of({16, 36, 46, 56, 66, 86}));
  for (long q : {9, 13}) {
    const World& w = world(static_cast<int>(q));
    const auto dc = build_derived(w.pencil, lambda_bar(static_cast<int>(q)));
    const auto star = star_characters(w.geo, dc.derived.members), plane = plane_characters(w.geo, dc.derived.members);
    const auto sv = star.values(), pv = plane.values();
    EXPECT_EQ(std::set<long>(sv.begin(), sv.end()), formula_stars(q));
    EXPECT_EQ(std::set<long>(pv.begin(), pv.end()), formula_planes(q));
    const long total = static_cast<long>(dc.derived.members.size()) * (q + 1);
    EXPECT_EQ(star.weighted_sum(), total);
    EXPECT_EQ(plane.weighted_sum(), total);
    EXPECT_EQ(star.objects(), static_cast<long>(w.geo.num_points()));
  }
}

TEST(CompareKnown, Verdicts) {
  for (long q : {9, 13}) {
    const World& w = world(static_cast<int>(q));
    const auto dc = build_derived(w.pencil, lambda_bar(static_cast<int>(q)));
    const auto vs = compare_known(q, star_characters(w.geo, dc.derived.members), plane_characters(w.geo, dc.derived.members));
    ASSERT_EQ(vs.size(), 4u);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(vs[i].verdict, Verdict::distinct) << vs[i].family;
      EXPECT_EQ(vs[i].witness, (3 * q + 5) / 2);
    }
    EXPECT_EQ(vs[3].family, "cyclic");
    EXPECT_EQ(vs[3].verdict, Verdict::distinct);
    EXPECT_EQ(vs[3].witness, q * q + q + 1);
    // A Bruen-Drudge class is not separated from its own family.
    const auto bd = build_bruen_drudge(w.pencil, lambda_bar(static_cast<int>(q)), Side::os, NonTangentLines::external);
    const auto bv = compare_known(q, star_characters(w.geo, bd.members), plane_characters(w.geo, bd.members));
    EXPECT_EQ(bv[0].verdict, Verdict::inconclusive);
  }
  const World& w5 = world(5);
  const auto dc = build_derived(w5.pencil, lambda_bar(5));
  for (const auto& v : compare_known(5, star_characters(w5.geo, dc.derived.members), plane_characters(w5.geo, dc.derived.members)))
    EXPECT_EQ(v.verdict, Verdict::inconclusive);
}

TEST(KnownFamilies, Lists) {
  const auto fams = known_family_characters(9);
  EXPECT_EQ(fams[3].required_value, 91);
  EXPECT_EQ(fams[1].star_values.front(), 6);  // (q+3)/2
  EXPECT_FALSE(fams[2].exact);
  EXPECT_THROW(known_family_characters(8), std::invalid_argument);
}

TEST(Spreads, RegularSpreadPartitionsPoints) {
  for (int q : {3, 5, 9, 13}) {
    const Geometry& geo = world(q).geo;
    const auto s = build_regular_spread(geo);
    ASSERT_EQ(s.lines.size(), static_cast<std::size_t>(q * q + 1));
    EXPECT_TRUE(is_spread(geo, s.lines));
    for (auto a : s.lines)
      for (auto b : s.lines)
        if (a != b) ASSERT_FALSE(clgeom::testing::oracle_lines_meet(geo, a, b));
  }
  const Geometry& geo = world(5).geo;
  EXPECT_FALSE(is_spread(geo, {0, 1}));
}

TEST(Spreads, SampleTest) {
  const World& w = world(5);
  const auto dc = build_derived(w.pencil, lambda_bar(5));
  const auto a = spread_sample_test(w.geo, dc.derived.members, 13, 50, 7);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.hits.size(), 1u);
  const auto b = spread_sample_test(w.geo, dc.derived.members, 13, 50, 7);
  EXPECT_EQ(a.hits, b.hits);
  IndexSet star(w.geo.num_lines());
  for (auto l : w.geo.lines_through(0)) star.insert(l);
  EXPECT_TRUE(spread_sample_test(w.geo, star, 1, 50, 1).pass);
  IndexSet junk(w.geo.num_lines(), {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  EXPECT_FALSE(spread_sample_test(w.geo, junk, 1, 50, 1).pass);
}

TEST(PolarCounts, ObservedValuesAtQ5) {
  const World& w = world(5);
  const auto lc = build_bruen_drudge(w.pencil, lambda_bar(5), Side::on);
  const auto rep = remark_oss_check(w.pencil, lc, lambda_bar(5));
  const auto sp = w.pencil.sign_partition(lambda_bar(5));
  const auto stars = clgeom::testing::oracle_star_counts(w.geo, lc.members);
  auto observed = [&](const IndexSet& pts) {
    std::set<long> v;
    for (auto p : pts.members()) v.insert(stars[p]);
    return v;
  };
  EXPECT_EQ(rep.star[0].observed, observed(sp.quadric));
  EXPECT_EQ(rep.star[1].observed, observed(sp.on));
  EXPECT_EQ(rep.star[2].observed, observed(sp.os));
  EXPECT_EQ(rep.star[0].observed, set_of({28}));
  EXPECT_EQ(rep.star[1].observed, set_of({16}));
  EXPECT_EQ(rep.star[2].observed, set_of({10}));
  EXPECT_EQ(rep.plane[0].observed, set_of({3}));
  EXPECT_EQ(rep.plane[1].observed, set_of({15}));
  EXPECT_EQ(rep.plane[2].observed, set_of({21}));
  // |P^perp ∩ C| by point type E, C, I.
  EXPECT_EQ(rep.conic_meets[0].observed, set_of({2}));
  EXPECT_EQ(rep.conic_meets[1].observed, set_of({1}));
  EXPECT_EQ(rep.conic_meets[2].observed, set_of({0}));
}

TEST(PolarCounts, StarTotalsForceTheOsValue) {
  // Sum of star counts is |L|(q+1); with 26 points at 28 and 65 at 16 the
  // 65 points of O_s must average 10.
  const long q = 5, size = 13 * 31;
  EXPECT_EQ((size * (q + 1) - 26 * 28 - 65 * 16) / 65, 10);
  EXPECT_EQ((size * (q + 1) - 26 * 28 - 65 * 16) % 65, 0);
}

}  // namespace
