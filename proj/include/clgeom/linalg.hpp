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
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "clgeom/gf.hpp"

namespace clgeom {

using Vec4 = std::array<Element, 4>;
using Mat4 = std::array<Vec4, 4>;  // row major

inline bool is_zero(const Vec4& v) {
  for (auto e : v)
    if (e.code != 0) return false;
  return true;
}

inline Element dot(const Field& f, const Vec4& a, const Vec4& b) {
  Element s = f.zero();
  for (int i = 0; i < 4; ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

inline Vec4 scale(const Field& f, Element c, const Vec4& v) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) r[i] = f.mul(c, v[i]);
  return r;
}

inline Vec4 add(const Field& f, const Vec4& a, const Vec4& b) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

/// Scales so that the first nonzero coordinate is one.
template <std::size_t N>
std::array<Element, N> normalize(const Field& f, std::array<Element, N> v) {
  for (std::size_t i = 0; i < N; ++i) {
    if (v[i].code != 0) {
      const Element s = f.inv(v[i]);
      for (auto& e : v) e = f.mul(s, e);
      return v;
    }
  }
  throw std::invalid_argument("zero vector has no projective normal form");
}

inline Mat4 identity(const Field& f) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = f.one();
  return m;
}

inline Vec4 apply(const Field& f, const Mat4& m, const Vec4& v) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) r[i] = dot(f, m[i], v);
  return r;
}

/// Row vector times matrix.
inline Vec4 apply_right(const Field& f, const Vec4& v, const Mat4& m) {
  Vec4 r;
  for (int j = 0; j < 4; ++j) {
    Element s = f.zero();
    for (int i = 0; i < 4; ++i) s = f.add(s, f.mul(v[i], m[i][j]));
    r[j] = s;
  }
  return r;
}

inline Mat4 multiply(const Field& f, const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Element s = f.zero();
      for (int k = 0; k < 4; ++k) s = f.add(s, f.mul(a[i][k], b[k][j]));
      r[i][j] = s;
    }
  return r;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> row_reduce(const Field& f, std::vector<Vec4>& rows) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < 4 && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].code == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    rows[r] = scale(f, f.inv(rows[r][c]), rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].code == 0) continue;
      rows[i] = add(f, rows[i], scale(f, f.neg(rows[i][c]), rows[r]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Basis of {x : row . x = 0 for every row}.
inline std::vector<Vec4> nullspace(const Field& f, std::vector<Vec4> rows) {
  const auto pivots = row_reduce(f, rows);
  std::vector<Vec4> basis;
  for (int free = 0; free < 4; ++free) {
    bool is_pivot = false;
    for (int p : pivots) is_pivot |= (p == free);
    if (is_pivot) continue;
    Vec4 v{};
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(rows[r][free]);
    basis.push_back(v);
  }
  return basis;
}

inline int rank(const Field& f, std::vector<Vec4> rows) { return static_cast<int>(row_reduce(f, rows).size()); }

inline Element determinant(const Field& f, Mat4 m) {
  Element det = f.one();
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && m[piv][c].code == 0) ++piv;
    if (piv == 4) return f.zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c][c]);
    const Element inv = f.inv(m[c][c]);
    for (int r = c + 1; r < 4; ++r) {
      if (m[r][c].code == 0) continue;
      const Element factor = f.neg(f.mul(m[r][c], inv));
      m[r] = add(f, m[r], scale(f, factor, m[c]));
    }
  }
  return det;
}

inline std::optional<Mat4> inverse(const Field& f, const Mat4& m) {
  Mat4 a = m, inv = identity(f);
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && a[piv][c].code == 0) ++piv;
    if (piv == 4) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const Element s = f.inv(a[c][c]);
    a[c] = scale(f, s, a[c]);
    inv[c] = scale(f, s, inv[c]);
    for (int r = 0; r < 4; ++r) {
      if (r == c || a[r][c].code == 0) continue;
      const Element factor = f.neg(a[r][c]);
      a[r] = add(f, a[r], scale(f, factor, a[c]));
      inv[r] = add(f, inv[r], scale(f, factor, inv[c]));
    }
  }
  return inv;
}

/// Scales so that the first nonzero entry (row major) is one.
inline Mat4 canonical_matrix(const Field& f, Mat4 m) {
  for (const auto& row : m)
    for (auto e : row)
      if (e.code != 0) {
        const Element s = f.inv(e);
        for (auto& r : m) r = scale(f, s, r);
        return m;
      }
  throw std::invalid_argument("zero matrix");
}

}  // namespace clgeom
