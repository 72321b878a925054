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

#include <array>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "clgeom/geometry.hpp"
#include "clgeom/index_set.hpp"

namespace clgeom {

/// The image of the 2x2 matrix [[a, c], [b, d]] in PGL(4,q) stabilizing
/// every member of the pencil:
///
///   | a^2  2ac    c^2  0     |
///   | ab   ad+bc  cd   0     |
///   | b^2  2bd    d^2  0     |
///   | 0    0      0    ad-bc |
///
/// With that reading of (a, b, c, d), embed is a homomorphism.
struct GroupElement {
  Collineation action;
  std::array<Element, 4> source;  // (a, b, c, d)
};

inline GroupElement embed(const Field& f, Element a, Element b, Element c, Element d) {
  const Element det = f.sub(f.mul(a, d), f.mul(b, c));
  if (f.is_zero(det)) throw std::invalid_argument("embed: ad - bc must be nonzero");
  const Element two = f.from_int(2), z = f.zero();
  Mat4 m{{
      {f.mul(a, a), f.mul(two, f.mul(a, c)), f.mul(c, c), z},
      {f.mul(a, b), f.add(f.mul(a, d), f.mul(b, c)), f.mul(c, d), z},
      {f.mul(b, b), f.mul(two, f.mul(b, d)), f.mul(d, d), z},
      {z, z, z, det},
  }};
  return {Collineation::make(f, m), {a, b, c, d}};
}

/// (a, b, c, d) of the product g h under the homomorphic reading of embed.
inline std::array<Element, 4> compose(const Field& f, const std::array<Element, 4>& g, const std::array<Element, 4>& h) {
  // As 2x2 matrices X = [[a, c], [b, d]]: X_g X_h.
  const auto [a1, b1, c1, d1] = g;
  const auto [a2, b2, c2, d2] = h;
  const Element a = f.add(f.mul(a1, a2), f.mul(c1, b2));
  const Element c = f.add(f.mul(a1, c2), f.mul(c1, d2));
  const Element b = f.add(f.mul(b1, a2), f.mul(d1, b2));
  const Element d = f.add(f.mul(b1, c2), f.mul(d1, d2));
  return {a, b, c, d};
}

enum class ObjectKind { point, line, plane };

struct OrbitPartition {
  ObjectKind kind = ObjectKind::point;
  std::vector<std::uint32_t> orbit_of;      // object index -> orbit id
  std::vector<std::size_t> sizes;           // orbit id -> size
  std::vector<std::uint32_t> representative;  // smallest member
};

/// PGL(2,q) acting on PG(3,q) through embed, via three generators:
/// t -> t+1, t -> g t (g primitive) and t -> 1/t.
class GroupAction {
 public:
  explicit GroupAction(const Geometry& geometry) : geo_(geometry) {
    const Field& f = geo_.field();
    const Element zero = f.zero(), one = f.one();
    generators_ = {
        embed(f, one, one, zero, one),
        embed(f, f.primitive(), zero, zero, one),
        embed(f, zero, one, one, zero),
    };
    for (const auto& g : generators_) {
      std::vector<std::uint32_t> pp(geo_.num_points()), lp(geo_.num_lines()), sp(geo_.num_planes());
      for (PointIndex p = 0; p < pp.size(); ++p) pp[p] = geo_.map_point(g.action, p);
      for (LineIndex l = 0; l < lp.size(); ++l) lp[l] = line_image(pp, l);
      for (PlaneIndex s = 0; s < sp.size(); ++s) sp[s] = geo_.map_plane(g.action, s);
      point_perms_.push_back(std::move(pp));
      line_perms_.push_back(std::move(lp));
      plane_perms_.push_back(std::move(sp));
    }
  }

  const std::vector<GroupElement>& generators() const { return generators_; }

  /// Generator images of every object, one permutation per generator.
  const std::vector<std::vector<std::uint32_t>>& permutations(ObjectKind kind) const {
    switch (kind) {
      case ObjectKind::point: return point_perms_;
      case ObjectKind::line: return line_perms_;
      default: return plane_perms_;
    }
  }

  /// Breadth-first orbits from seeds in index order, so orbit ids follow the
  /// smallest member index.
  OrbitPartition orbits(ObjectKind kind) const {
    const auto& perms = permutations(kind);
    const std::size_t n = perms.front().size();
    OrbitPartition part;
    part.kind = kind;
    part.orbit_of.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    for (std::uint32_t seed = 0; seed < n; ++seed) {
      if (part.orbit_of[seed] != UINT32_MAX) continue;
      const auto id = static_cast<std::uint32_t>(part.sizes.size());
      queue.clear();
      queue.push_back(seed);
      part.orbit_of[seed] = id;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& perm : perms) {
          const auto next = perm[queue[head]];
          if (part.orbit_of[next] == UINT32_MAX) {
            part.orbit_of[next] = id;
            queue.push_back(next);
          }
        }
      }
      part.sizes.push_back(queue.size());
      part.representative.push_back(seed);
    }
    return part;
  }

  /// True iff every generator maps the set onto itself.
  bool is_invariant(const IndexSet& s, ObjectKind kind) const {
    for (const auto& perm : permutations(kind)) {
      if (perm.size() != s.universe()) throw std::invalid_argument("set universe does not match object kind");
      for (auto m : s.members())
        if (!s.contains(perm[m])) return false;
    }
    return true;
  }

  /// Number of distinct projective matrices generated, stopping once the
  /// count exceeds limit.
  std::size_t closure_size(std::size_t limit) const {
    const Field& f = geo_.field();
    using Key = std::array<std::uint16_t, 16>;
    auto key_of = [&](const Mat4& m) {
      const Mat4 c = canonical_matrix(f, m);
      Key k{};
      for (int i = 0; i < 16; ++i) k[i] = c[i / 4][i % 4].code;
      return k;
    };
    std::set<Key> seen;
    std::deque<Mat4> frontier{identity(f)};
    seen.insert(key_of(identity(f)));
    while (!frontier.empty() && seen.size() <= limit) {
      const Mat4 m = frontier.front();
      frontier.pop_front();
      for (const auto& g : generators_) {
        const Mat4 next = multiply(f, g.action.matrix, m);
        if (seen.insert(key_of(next)).second) frontier.push_back(next);
      }
    }
    return seen.size();
  }

 private:
  LineIndex line_image(const std::vector<std::uint32_t>& point_perm, LineIndex l) const {
    auto [a, b] = geo_.span(l);
    return geo_.line_through(point_perm[a], point_perm[b]);
  }

  const Geometry& geo_;
  std::vector<GroupElement> generators_;
  std::vector<std::vector<std::uint32_t>> point_perms_, line_perms_, plane_perms_;
};

}  // namespace clgeom
