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
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clgeom/gf.hpp"
#include "clgeom/linalg.hpp"

namespace clgeom {

using PointIndex = std::uint32_t;
using LineIndex = std::uint32_t;
using PlaneIndex = std::uint32_t;

/// Plücker coordinates in the order (p12, p13, p14, p23, p24, p34).
using Plucker = std::array<Element, 6>;

inline Plucker plucker_of(const Field& f, const Vec4& x, const Vec4& y) {
  static constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  Plucker p;
  for (int i = 0; i < 6; ++i) {
    const auto [a, b] = kPairs[i];
    p[i] = f.sub(f.mul(x[a], y[b]), f.mul(x[b], y[a]));
  }
  return p;
}

/// p12 p34 - p13 p24 + p14 p23; vanishes exactly on Plücker vectors of lines.
inline Element klein_form(const Field& f, const Plucker& p) {
  return f.add(f.sub(f.mul(p[0], p[5]), f.mul(p[1], p[4])), f.mul(p[2], p[3]));
}

/// The polar bilinear form of klein_form; zero iff the two lines meet.
inline Element klein_pairing(const Field& f, const Plucker& p, const Plucker& r) {
  Element s = f.mul(p[0], r[5]);
  s = f.sub(s, f.mul(p[1], r[4]));
  s = f.add(s, f.mul(p[2], r[3]));
  s = f.add(s, f.mul(p[5], r[0]));
  s = f.sub(s, f.mul(p[4], r[1]));
  s = f.add(s, f.mul(p[3], r[2]));
  return s;
}

/// An invertible 4x4 matrix acting on column vectors, with its inverse for
/// the contragredient action on planes.
struct Collineation {
  Mat4 matrix;
  Mat4 inverse;

  static Collineation make(const Field& f, const Mat4& m) {
    auto inv = clgeom::inverse(f, m);
    if (!inv) throw std::invalid_argument("singular matrix is not a collineation");
    return {m, *inv};
  }
};

/// Points, lines and planes of PG(3,q) with full incidence tables.
///
/// Points and planes are canonical 4-vectors (first nonzero entry one) in
/// lexicographic order. Lines are indexed by the lexicographic rank of their
/// canonical Plücker vectors.
class Geometry {
 public:
  explicit Geometry(Field field) : field_(std::move(field)), q_(field_.q()) {
    build_points();
    build_lines();
    build_incidence();
  }

  const Field& field() const { return field_; }
  int q() const { return q_; }

  std::size_t num_points() const { return points_.size(); }
  std::size_t num_lines() const { return pluckers_.size(); }
  std::size_t num_planes() const { return points_.size(); }

  const Vec4& point(PointIndex i) const { return points_.at(i); }
  /// Dual coordinates (a, b, c, d) of the plane aX1 + bX2 + cX3 + dX4 = 0.
  const Vec4& plane(PlaneIndex i) const { return points_.at(i); }
  const Plucker& plucker(LineIndex l) const { return pluckers_.at(l); }

  /// The two smallest-indexed points of the line.
  std::pair<PointIndex, PointIndex> span(LineIndex l) const {
    auto pts = points_on(l);
    return {pts[0], pts[1]};
  }

  /// The q+1 points of the line, increasing.
  std::span<const PointIndex> points_on(LineIndex l) const {
    return {line_points_.data() + static_cast<std::size_t>(l) * (q_ + 1), static_cast<std::size_t>(q_ + 1)};
  }
  /// The q^2+q+1 lines through the point, increasing.
  std::span<const LineIndex> lines_through(PointIndex p) const { return slice(point_lines_, p); }
  /// The q^2+q+1 lines of the plane, increasing.
  std::span<const LineIndex> lines_in(PlaneIndex s) const { return slice(plane_lines_, s); }
  /// The q+1 planes through the line, increasing.
  std::span<const PlaneIndex> planes_through(LineIndex l) const {
    return {line_planes_.data() + static_cast<std::size_t>(l) * (q_ + 1), static_cast<std::size_t>(q_ + 1)};
  }

  /// Index of the point spanned by a nonzero vector.
  PointIndex point_index(const Vec4& v) const { return lookup(point_index_, normalize(field_, v)); }
  PlaneIndex plane_index(const Vec4& v) const { return point_index(v); }
  LineIndex line_index(const Plucker& p) const {
    if (field_.is_zero(klein_form(field_, p)) == false)
      throw std::invalid_argument("vector does not satisfy the Plücker relation");
    return lookup(line_index_, normalize(field_, p));
  }

  LineIndex line_through(PointIndex a, PointIndex b) const {
    if (a == b) throw std::invalid_argument("degenerate span: identical points");
    return line_index(plucker_of(field_, point(a), point(b)));
  }

  bool lines_meet(LineIndex l, LineIndex m) const {
    return field_.is_zero(klein_pairing(field_, plucker(l), plucker(m)));
  }

  bool point_on_line(PointIndex p, LineIndex l) const {
    auto pts = points_on(l);
    return std::binary_search(pts.begin(), pts.end(), p);
  }
  bool point_on_plane(PointIndex p, PlaneIndex s) const { return field_.is_zero(dot(field_, point(p), plane(s))); }
  bool line_in_plane(LineIndex l, PlaneIndex s) const {
    auto [a, b] = span(l);
    return point_on_plane(a, s) && point_on_plane(b, s);
  }

  PlaneIndex plane_through(LineIndex l, PointIndex p) const {
    if (point_on_line(p, l)) throw std::invalid_argument("degenerate span: point lies on the line");
    auto [a, b] = span(l);
    auto ns = nullspace(field_, {point(a), point(b), point(p)});
    return plane_index(ns.at(0));
  }

  /// The plane through three non-collinear points.
  PlaneIndex plane_through(PointIndex a, PointIndex b, PointIndex c) const {
    return plane_through(line_through(a, b), c);
  }

  /// The point where the line meets the plane, or nothing if it lies in it.
  std::optional<PointIndex> intersection(LineIndex l, PlaneIndex s) const {
    auto [a, b] = span(l);
    const Element fa = dot(field_, point(a), plane(s)), fb = dot(field_, point(b), plane(s));
    if (field_.is_zero(fa) && field_.is_zero(fb)) return std::nullopt;
    return point_index(field_.is_zero(fa) ? point(a) : add(field_, scale(field_, fb, point(a)), scale(field_, field_.neg(fa), point(b))));
  }

  /// The line common to two distinct planes.
  LineIndex meet(PlaneIndex s, PlaneIndex t) const {
    if (s == t) throw std::invalid_argument("degenerate meet: identical planes");
    auto ns = nullspace(field_, {plane(s), plane(t)});
    return line_through(point_index(ns.at(0)), point_index(ns.at(1)));
  }

  PointIndex map_point(const Collineation& g, PointIndex p) const {
    return point_index(apply(field_, g.matrix, point(p)));
  }
  LineIndex map_line(const Collineation& g, LineIndex l) const {
    auto [a, b] = span(l);
    return line_through(map_point(g, a), map_point(g, b));
  }
  /// Planes transform by the inverse on the right: a -> a M^{-1}.
  PlaneIndex map_plane(const Collineation& g, PlaneIndex s) const {
    return plane_index(apply_right(field_, plane(s), g.inverse));
  }

  /// FNV-1a over q, the modulus and every canonical Plücker coefficient.
  std::uint64_t line_table_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffU;
        h *= 1099511628211ULL;
      }
    };
    mix(static_cast<std::uint64_t>(q_));
    for (int c : field_.modulus()) mix(static_cast<std::uint64_t>(c));
    for (const auto& p : pluckers_)
      for (auto e : p)
        for (int c : field_.coeffs(e)) mix(static_cast<std::uint64_t>(c));
    return h;
  }

 private:
  template <std::size_t N>
  std::uint64_t key(const std::array<Element, N>& v) const {
    std::uint64_t k = 0;
    for (auto e : v) k = k * static_cast<std::uint64_t>(q_) + e.code;
    return k;
  }

  template <std::size_t N>
  std::uint32_t lookup(const std::unordered_map<std::uint64_t, std::uint32_t>& table, const std::array<Element, N>& v) const {
    auto it = table.find(key(v));
    if (it == table.end()) throw std::logic_error("object missing from geometry table");
    return it->second;
  }

  std::span<const std::uint32_t> slice(const std::vector<std::uint32_t>& flat, std::size_t i) const {
    if (i >= points_.size()) throw std::out_of_range("object index out of range");
    return {flat.data() + i * star_size_, star_size_};
  }

  void build_points() {
    const auto elems = field_.elements();
    for (int lead = 0; lead < 4; ++lead) {
      const int free = 3 - lead;
      std::size_t count = 1;
      for (int i = 0; i < free; ++i) count *= q_;
      for (std::size_t n = 0; n < count; ++n) {
        Vec4 v{};
        v[lead] = field_.one();
        std::size_t r = n;
        for (int i = 3; i > lead; --i) {
          v[i] = elems[r % q_];
          r /= q_;
        }
        points_.push_back(v);
      }
    }
    std::sort(points_.begin(), points_.end());
    point_index_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) point_index_.emplace(key(points_[i]), static_cast<std::uint32_t>(i));
  }

  // Lines are enumerated as reduced row echelon 2x4 matrices.
  void build_lines() {
    const auto elems = field_.elements();
    std::vector<std::pair<Plucker, std::array<Vec4, 2>>> lines;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        std::vector<int> free_cells;  // (row * 4 + col)
        for (int c = i + 1; c < 4; ++c)
          if (c != j) free_cells.push_back(c);
        for (int c = j + 1; c < 4; ++c) free_cells.push_back(4 + c);
        std::size_t count = 1;
        for (std::size_t t = 0; t < free_cells.size(); ++t) count *= q_;
        for (std::size_t n = 0; n < count; ++n) {
          std::array<Vec4, 2> rows{};
          rows[0][i] = field_.one();
          rows[1][j] = field_.one();
          std::size_t r = n;
          for (int cell : free_cells) {
            rows[cell / 4][cell % 4] = elems[r % q_];
            r /= q_;
          }
          lines.emplace_back(normalize(field_, plucker_of(field_, rows[0], rows[1])), rows);
        }
      }
    }
    std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t per_line = q_ + 1;
    pluckers_.reserve(lines.size());
    line_points_.resize(lines.size() * per_line);
    line_planes_.resize(lines.size() * per_line);
    line_index_.reserve(lines.size());
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const auto& [pl, rows] = lines[l];
      pluckers_.push_back(pl);
      line_index_.emplace(key(pl), static_cast<std::uint32_t>(l));
      fill_projective_line(rows[0], rows[1], &line_points_[l * per_line]);
      auto dual = nullspace(field_, {rows[0], rows[1]});
      fill_projective_line(dual.at(0), dual.at(1), &line_planes_[l * per_line]);
    }
  }

  // Writes the sorted indices of the q+1 points spanned by a and b.
  void fill_projective_line(const Vec4& a, const Vec4& b, std::uint32_t* out) const {
    std::size_t n = 0;
    for (auto t : field_.elements()) out[n++] = point_index(add(field_, a, scale(field_, t, b)));
    out[n++] = point_index(b);
    std::sort(out, out + n);
  }

  void build_incidence() {
    const std::size_t star = static_cast<std::size_t>(q_) * q_ + q_ + 1;
    point_lines_.assign(points_.size() * star, 0);
    plane_lines_.assign(points_.size() * star, 0);
    std::vector<std::size_t> fill_p(points_.size(), 0), fill_s(points_.size(), 0);
    for (LineIndex l = 0; l < num_lines(); ++l) {
      for (auto p : points_on(l)) point_lines_[p * star + fill_p[p]++] = l;
      for (auto s : planes_through(l)) plane_lines_[s * star + fill_s[s]++] = l;
    }
    star_size_ = star;
  }

  Field field_;
  int q_;
  std::size_t star_size_ = 0;
  std::vector<Vec4> points_;
  std::vector<Plucker> pluckers_;
  std::vector<std::uint32_t> line_points_, line_planes_, point_lines_, plane_lines_;
  std::unordered_map<std::uint64_t, std::uint32_t> point_index_, line_index_;
};

}  // namespace clgeom
