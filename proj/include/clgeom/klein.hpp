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

#include <algorithm>
#include <cstddef>
#include <mutex>
#include <vector>

#include "clgeom/geometry.hpp"
#include "clgeom/index_set.hpp"
#include "clgeom/parallel.hpp"

namespace clgeom {

// Under the Klein correspondence a line l is a point of Q+(5,q) and l^⊥ ∩ Q+
// is the set of lines meeting l, l included.

/// Number of lines of the set through each point.
inline std::vector<long> star_counts(const Geometry& geo, const IndexSet& lines) {
  std::vector<long> counts(geo.num_points(), 0);
  for (auto l : lines.members())
    for (auto p : geo.points_on(l)) ++counts[p];
  return counts;
}

/// Number of lines of the set inside each plane.
inline std::vector<long> plane_counts(const Geometry& geo, const IndexSet& lines) {
  std::vector<long> counts(geo.num_planes(), 0);
  for (auto l : lines.members())
    for (auto s : geo.planes_through(l)) ++counts[s];
  return counts;
}

/// |{m in T : m meets l}| from precomputed star counts of T:
/// sum over the points of l, minus the q extra hits of l itself.
inline long meet_count(const Geometry& geo, const std::vector<long>& stars, const IndexSet& t, LineIndex l) {
  long sum = 0;
  for (auto p : geo.points_on(l)) sum += stars[p];
  return t.contains(l) ? sum - geo.q() : sum;
}

inline long klein_perp_count(const Geometry& geo, LineIndex l, const IndexSet& t) {
  return meet_count(geo, star_counts(geo, t), t, l);
}

/// The same count by testing the Plücker pairing against every member.
inline long klein_perp_count_pairwise(const Geometry& geo, LineIndex l, const IndexSet& t) {
  long n = 0;
  for (auto m : t.members())
    if (geo.lines_meet(l, m)) ++n;
  return n;
}

struct TightViolation {
  LineIndex line;
  bool member;
  long count;
};

struct TightReport {
  bool pass = false;
  long i = 0;
  long expected_in = 0, expected_out = 0;
  bool size_ok = false;
  std::size_t n_violations = 0;
  std::vector<TightViolation> sample_violations;  // smallest line indices first
};

/// Checks that T is an i-tight set of Q+(5,q): every line meets
/// i(q+1)+q^2 members of T if it lies in T and i(q+1) otherwise.
/// A size other than i(q^2+q+1) fails immediately.
inline TightReport verify_tight(const Geometry& geo, const IndexSet& t, long i, unsigned threads = 1,
                                std::size_t max_samples = 10) {
  const long q = geo.q();
  TightReport r;
  r.i = i;
  r.expected_in = i * (q + 1) + q * q;
  r.expected_out = i * (q + 1);
  r.size_ok = static_cast<long>(t.size()) == i * (q * q + q + 1);
  if (!r.size_ok) return r;

  const auto stars = star_counts(geo, t);
  std::vector<TightViolation> violations;
  std::mutex mu;
  parallel_for(geo.num_lines(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<TightViolation> local;
    for (auto l = static_cast<LineIndex>(begin); l < end; ++l) {
      const bool member = t.contains(l);
      const long c = meet_count(geo, stars, t, l);
      if (c != (member ? r.expected_in : r.expected_out)) local.push_back({l, member, c});
    }
    std::lock_guard lock(mu);
    violations.insert(violations.end(), local.begin(), local.end());
  });
  std::sort(violations.begin(), violations.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
  r.n_violations = violations.size();
  violations.resize(std::min(violations.size(), max_samples));
  r.sample_violations = std::move(violations);
  r.pass = r.n_violations == 0;
  return r;
}

}  // namespace clgeom
