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

#pragma once

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "clgeom/clgeom.hpp"

namespace clgeom::testing {

/// Geometry and pencil for one q, built once per test binary.
struct World {
  explicit World(int q) : geo(Field::of_order(q)), pencil(geo) {}
  Geometry geo;
  Pencil pencil;
};

inline const World& world(int q) {
  static std::map<int, std::unique_ptr<World>> cache;
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<World>(q);
  return *slot;
}

// Oracles below avoid the incidence tables: they work from coordinates.

/// P lies on l iff P is in the row space of l's two spanning points.
inline bool oracle_point_on_line(const Geometry& geo, PointIndex p, LineIndex l) {
  const auto [a, b] = geo.span(l);
  return rank(geo.field(), {geo.point(a), geo.point(b), geo.point(p)}) == 2;
}

inline bool oracle_line_in_plane(const Geometry& geo, LineIndex l, PlaneIndex s) {
  const auto [a, b] = geo.span(l);
  const Field& f = geo.field();
  return f.is_zero(dot(f, geo.point(a), geo.plane(s))) && f.is_zero(dot(f, geo.point(b), geo.plane(s)));
}

/// Two lines meet iff their four spanning points have rank at most 3.
inline bool oracle_lines_meet(const Geometry& geo, LineIndex l, LineIndex m) {
  const auto [a, b] = geo.span(l);
  const auto [c, d] = geo.span(m);
  return rank(geo.field(), {geo.point(a), geo.point(b), geo.point(c), geo.point(d)}) <= 3;
}

inline std::vector<long> oracle_star_counts(const Geometry& geo, const IndexSet& t) {
  std::vector<long> out(geo.num_points(), 0);
  const auto members = t.members();
  for (PointIndex p = 0; p < geo.num_points(); ++p)
    for (auto l : members) out[p] += oracle_point_on_line(geo, p, l) ? 1 : 0;
  return out;
}

inline std::vector<long> oracle_plane_counts(const Geometry& geo, const IndexSet& t) {
  std::vector<long> out(geo.num_planes(), 0);
  const auto members = t.members();
  for (PlaneIndex s = 0; s < geo.num_planes(); ++s)
    for (auto l : members) out[s] += oracle_line_in_plane(geo, l, s) ? 1 : 0;
  return out;
}

inline std::set<long> value_set(const std::vector<long>& v) { return {v.begin(), v.end()}; }

/// Lines of T meeting l (l itself included when in T), by the Klein pairing.
inline long oracle_meet_count(const Geometry& geo, const IndexSet& t, LineIndex l) {
  long n = 0;
  for (auto m : t.members())
    if (geo.field().is_zero(klein_pairing(geo.field(), geo.plucker(l), geo.plucker(m)))) ++n;
  return n;
}

}  // namespace clgeom::testing
