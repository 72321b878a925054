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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clgeom/geometry.hpp"
#include "clgeom/index_set.hpp"

namespace clgeom {

// The pencil spanned by Q_lambda : X1 X3 - X2^2 + lambda X4^2 = 0 and the
// plane pi : X4 = 0. Its base locus is the conic C = Q_lambda ∩ pi.

enum class MemberKind { elliptic, hyperbolic, cone, plane };

/// A member of the pencil: a quadric Q_lambda or the plane pi.
struct PencilMember {
  std::optional<Element> lambda;

  static PencilMember quadric(Element l) { return {l}; }
  static PencilMember plane() { return {std::nullopt}; }
  bool is_plane() const { return !lambda.has_value(); }
};

enum class PointKind { u4, conic, internal, external, cone, quadric };

/// Type of a point off pi ∪ {U4}: where the line joining it to U4 meets pi.
enum class PointType { c, i, e };

struct PointLabel {
  PointKind kind = PointKind::u4;
  Element lambda{};                 // PointKind::quadric only
  std::optional<PointType> type;    // points off pi ∪ {U4}
};

/// Line orbit families. The first eight are the named classes L1, L2, L3,
/// L1', L2', L3', L4, L4' in that order.
enum class LineKind { l1, l2, l3, l1p, l2p, l3p, l4, l4p, regulus, tangent_internal, tangent_external };

inline constexpr int kNamedLineClasses = 8;

struct LineLabel {
  LineKind kind = LineKind::l1;
  Element lambda{};  // regulus and tangent kinds
  int regulus = 0;   // 0 for the regulus containing U1 ∨ (0, sqrt(lambda), 0, 1)
};

enum class Incidence { external, tangent, secant, contained };

/// Off-quadric points split by the square class of the form value.
struct SignPartition {
  Element base;
  IndexSet os, on, quadric;
};

/// Line counts per class through a point or inside a plane.
struct LineTally {
  std::array<long, kNamedLineClasses> named{};
  long regulus = 0, tangent_internal = 0, tangent_external = 0;
  std::vector<long> per_class;  // indexed by Pencil::line_class
};

enum class PointCategory { u4, conic, internal, external, type_c, type_i, type_e };

/// Planes other than pi are split by whether they contain U4 and by how
/// their trace on pi meets C (0, 1 or 2 points).
enum class PlaneCategory {
  pi,
  u4_external,
  u4_tangent,
  u4_secant,
  off_external,
  off_tangent,
  off_secant
};

/// Labels every point and line of PG(3,q) relative to the pencil.
///
/// Holds a reference to the geometry, which must outlive it.
class Pencil {
 public:
  explicit Pencil(const Geometry& geometry) : geo_(geometry), f_(geometry.field()), q_(geometry.q()) {
    for (auto e : f_.elements()) {
      if (f_.is_zero(e)) continue;
      nonzero_.push_back(e);
      if (f_.is_square(e)) nonzero_squares_.push_back(e);
    }
    nonzero_pos_.assign(q_, -1);
    square_pos_.assign(q_, -1);
    for (std::size_t i = 0; i < nonzero_.size(); ++i) nonzero_pos_[nonzero_[i].code] = static_cast<int>(i);
    for (std::size_t i = 0; i < nonzero_squares_.size(); ++i) square_pos_[nonzero_squares_[i].code] = static_cast<int>(i);
    for (int i = 0; i < 4; ++i) {
      Vec4 v{};
      v[i] = f_.one();
      u_[i] = geo_.point_index(v);
    }
    pi_ = geo_.plane_index(Vec4{f_.zero(), f_.zero(), f_.zero(), f_.one()});
    label_points();
    label_lines();
  }

  const Geometry& geometry() const { return geo_; }

  /// U_i for i in 1..4.
  PointIndex u(int i) const { return u_.at(i - 1); }
  PlaneIndex pi() const { return pi_; }

  Element eval_quadric(Element lambda, PointIndex p) const {
    const auto& x = geo_.point(p);
    Element v = f_.sub(f_.mul(x[0], x[2]), f_.mul(x[1], x[1]));
    return f_.add(v, f_.mul(lambda, f_.mul(x[3], x[3])));
  }

  MemberKind member_kind(Element lambda) const {
    if (f_.is_zero(lambda)) return MemberKind::cone;
    return f_.is_square(lambda) ? MemberKind::hyperbolic : MemberKind::elliptic;
  }

  bool on_member(PointIndex p, const PencilMember& m) const {
    if (m.is_plane()) return f_.is_zero(geo_.point(p)[3]);
    return f_.is_zero(eval_quadric(*m.lambda, p));
  }

  IndexSet member_points(const PencilMember& m) const {
    IndexSet s(geo_.num_points());
    for (PointIndex p = 0; p < geo_.num_points(); ++p)
      if (on_member(p, m)) s.insert(p);
    return s;
  }

  /// Polar plane of P under the orthogonal polarity of Q_lambda.
  PlaneIndex polar_plane(Element lambda, PointIndex p) const {
    if (f_.is_zero(lambda)) throw std::domain_error("Q_0 is degenerate: no polarity");
    const auto& x = geo_.point(p);
    const Element two = f_.from_int(2);
    return geo_.plane_index(Vec4{x[2], f_.neg(f_.mul(two, x[1])), x[0], f_.mul(f_.mul(two, lambda), x[3])});
  }

  /// Inverse of polar_plane.
  PointIndex pole(Element lambda, PlaneIndex s) const {
    if (f_.is_zero(lambda)) throw std::domain_error("Q_0 is degenerate: no polarity");
    const auto& a = geo_.plane(s);
    const Element two = f_.from_int(2);
    return geo_.point_index(Vec4{a[2], f_.neg(f_.div(a[1], two)), a[0], f_.div(a[3], f_.mul(two, lambda))});
  }

  Incidence line_vs(LineIndex l, const PencilMember& m) const {
    int n = 0;
    for (auto p : geo_.points_on(l)) n += on_member(p, m) ? 1 : 0;
    if (n == q_ + 1) return Incidence::contained;
    switch (n) {
      case 0: return Incidence::external;
      case 1: return Incidence::tangent;
      case 2: return Incidence::secant;
      default: throw std::logic_error("line meets a pencil member in " + std::to_string(n) + " points");
    }
  }

  const PointLabel& point_label(PointIndex p) const { return point_labels_.at(p); }
  const LineLabel& line_label(LineIndex l) const { return line_labels_.at(l); }

  PointType point_type(PointIndex p) const {
    const auto& t = point_label(p).type;
    if (!t) throw std::invalid_argument("point type is only defined off pi and U4");
    return *t;
  }

  const std::vector<Element>& nonzero_elements() const { return nonzero_; }
  const std::vector<Element>& nonzero_squares() const { return nonzero_squares_; }

  // Orbit-class ids: points 0..q+3, lines 0..3q+4.

  int num_point_classes() const { return 5 + static_cast<int>(nonzero_.size()); }
  int num_line_classes() const { return kNamedLineClasses + 2 * static_cast<int>(nonzero_squares_.size()) + 2 * static_cast<int>(nonzero_.size()); }

  int point_class(PointIndex p) const {
    const auto& lab = point_label(p);
    if (lab.kind == PointKind::quadric) return 5 + nonzero_pos_[lab.lambda.code];
    return static_cast<int>(lab.kind);
  }

  int line_class(LineIndex l) const { return line_class_of(line_label(l)); }

  int line_class_of(const LineLabel& lab) const {
    const int nsq = static_cast<int>(nonzero_squares_.size());
    const int nnz = static_cast<int>(nonzero_.size());
    switch (lab.kind) {
      case LineKind::regulus: return kNamedLineClasses + 2 * square_pos_[lab.lambda.code] + lab.regulus;
      case LineKind::tangent_internal: return kNamedLineClasses + 2 * nsq + nonzero_pos_[lab.lambda.code];
      case LineKind::tangent_external: return kNamedLineClasses + 2 * nsq + nnz + nonzero_pos_[lab.lambda.code];
      default: return static_cast<int>(lab.kind);
    }
  }

  std::string point_class_name(int id) const {
    static const char* kNames[] = {"U4", "C", "I", "E", "Q0-cone"};
    if (id < 5) return kNames[id];
    return "Q(" + f_.to_string(nonzero_.at(id - 5)) + ")";
  }

  std::string line_class_name(int id) const {
    static const char* kNames[] = {"L1", "L2", "L3", "L1'", "L2'", "L3'", "L4", "L4'"};
    if (id < kNamedLineClasses) return kNames[id];
    const int nsq = static_cast<int>(nonzero_squares_.size());
    const int nnz = static_cast<int>(nonzero_.size());
    int r = id - kNamedLineClasses;
    if (r < 2 * nsq) return "regulus(" + f_.to_string(nonzero_squares_.at(r / 2)) + (r % 2 ? ",b)" : ",a)");
    r -= 2 * nsq;
    if (r < nnz) return "tangentI(" + f_.to_string(nonzero_.at(r)) + ")";
    r -= nnz;
    return "tangentE(" + f_.to_string(nonzero_.at(r)) + ")";
  }

  /// Class sizes as listed in the orbit inventories.
  long expected_point_class_size(int id) const {
    const long q = q_;
    switch (id) {
      case 0: return 1;
      case 1: return q + 1;
      case 2: return q * (q - 1) / 2;
      case 3: return q * (q + 1) / 2;
      case 4: return q * q - 1;
      default: return f_.is_square(nonzero_.at(id - 5)) ? q * q + q : q * q - q;
    }
  }

  long expected_line_class_size(int id) const {
    const long q = q_;
    switch (id) {
      case 0: case 3: return q + 1;
      case 1: case 4: return q * (q - 1) / 2;
      case 2: case 5: return q * (q + 1) / 2;
      case 6: case 7: return q * q * q - q;
      default: break;
    }
    return id < kNamedLineClasses + 2 * static_cast<int>(nonzero_squares_.size()) ? q + 1 : (q * q * q - q) / 2;
  }

  IndexSet points_of_kind(PointKind k) const {
    IndexSet s(geo_.num_points());
    for (PointIndex p = 0; p < geo_.num_points(); ++p)
      if (point_labels_[p].kind == k) s.insert(p);
    return s;
  }

  IndexSet lines_of_kind(LineKind k) const {
    IndexSet s(geo_.num_lines());
    for (LineIndex l = 0; l < geo_.num_lines(); ++l)
      if (line_labels_[l].kind == k) s.insert(l);
    return s;
  }

  IndexSet lines_of_class(int id) const {
    IndexSet s(geo_.num_lines());
    for (LineIndex l = 0; l < geo_.num_lines(); ++l)
      if (line_class(l) == id) s.insert(l);
    return s;
  }

  IndexSet points_of_class(int id) const {
    IndexSet s(geo_.num_points());
    for (PointIndex p = 0; p < geo_.num_points(); ++p)
      if (point_class(p) == id) s.insert(p);
    return s;
  }

  /// O_s, O_n and the points of Q_base for a non-square base.
  SignPartition sign_partition(Element base) const {
    if (f_.is_square(base)) throw std::invalid_argument("sign partition needs a non-square lambda");
    SignPartition sp{base, IndexSet(geo_.num_points()), IndexSet(geo_.num_points()), IndexSet(geo_.num_points())};
    for (PointIndex p = 0; p < geo_.num_points(); ++p) {
      const Element v = eval_quadric(base, p);
      if (f_.is_zero(v))
        sp.quadric.insert(p);
      else if (f_.is_square(v))
        sp.os.insert(p);
      else
        sp.on.insert(p);
    }
    return sp;
  }

  /// A = L1' ∪ L2' ∪ L3 ∪ L4' and B = L1 ∪ L2 ∪ L3' ∪ L4.
  std::pair<IndexSet, IndexSet> build_A_B() const {
    IndexSet a(geo_.num_lines()), b(geo_.num_lines());
    for (LineIndex l = 0; l < geo_.num_lines(); ++l) {
      switch (line_labels_[l].kind) {
        case LineKind::l1p:
        case LineKind::l2p:
        case LineKind::l3:
        case LineKind::l4p: a.insert(l); break;
        case LineKind::l1:
        case LineKind::l2:
        case LineKind::l3p:
        case LineKind::l4: b.insert(l); break;
        default: break;
      }
    }
    return {a, b};
  }

  LineTally tally_through_point(PointIndex p) const { return tally(geo_.lines_through(p)); }
  LineTally tally_in_plane(PlaneIndex s) const { return tally(geo_.lines_in(s)); }

  PointCategory point_category(PointIndex p) const {
    const auto& lab = point_label(p);
    switch (lab.kind) {
      case PointKind::u4: return PointCategory::u4;
      case PointKind::conic: return PointCategory::conic;
      case PointKind::internal: return PointCategory::internal;
      case PointKind::external: return PointCategory::external;
      default: break;
    }
    switch (*lab.type) {
      case PointType::c: return PointCategory::type_c;
      case PointType::i: return PointCategory::type_i;
      default: return PointCategory::type_e;
    }
  }

  PlaneCategory plane_category(PlaneIndex s) const {
    if (s == pi_) return PlaneCategory::pi;
    int conic_points = 0;
    for (auto c : conic_points_)
      if (geo_.point_on_plane(c, s)) ++conic_points;
    const bool through_u4 = geo_.point_on_plane(u(4), s);
    const int base = through_u4 ? static_cast<int>(PlaneCategory::u4_external) : static_cast<int>(PlaneCategory::off_external);
    if (conic_points > 2) throw std::logic_error("plane other than pi contains more than two conic points");
    return static_cast<PlaneCategory>(base + conic_points);
  }

  /// Named-class counts through a point of the given category
  /// (order L1, L2, L3, L1', L2', L3', L4, L4').
  static std::array<long, kNamedLineClasses> expected_star_tally(PointCategory c, long q) {
    switch (c) {
      case PointCategory::u4: return {0, 0, 0, q + 1, q * (q - 1) / 2, q * (q + 1) / 2, 0, 0};
      case PointCategory::conic: return {1, 0, q, 1, 0, 0, 0, q * (q - 1)};
      case PointCategory::internal: return {0, (q + 1) / 2, (q + 1) / 2, 0, 1, 0, 0, 0};
      case PointCategory::external: return {2, (q - 1) / 2, (q - 1) / 2, 0, 0, 1, 2 * (q - 1), 0};
      case PointCategory::type_c: return {0, 0, 0, 1, 0, 0, q, q};
      case PointCategory::type_i: return {0, 0, 0, 0, 1, 0, 0, q + 1};
      case PointCategory::type_e: return {0, 0, 0, 0, 0, 1, 2 * (q - 1), q - 1};
    }
    throw std::logic_error("unknown point category");
  }

  /// Named-class counts inside a plane of the given category.
  static std::array<long, kNamedLineClasses> expected_plane_tally(PlaneCategory c, long q) {
    switch (c) {
      case PlaneCategory::pi: return {q + 1, q * (q - 1) / 2, q * (q + 1) / 2, 0, 0, 0, 0, 0};
      case PlaneCategory::u4_external: return {0, 1, 0, 0, (q + 1) / 2, (q + 1) / 2, 0, 0};
      case PlaneCategory::u4_tangent: return {1, 0, 0, 1, 0, q, q * (q - 1), 0};
      case PlaneCategory::u4_secant: return {0, 0, 1, 2, (q - 1) / 2, (q - 1) / 2, 0, 2 * (q - 1)};
      case PlaneCategory::off_external: return {0, 1, 0, 0, 0, 0, q + 1, 0};
      case PlaneCategory::off_tangent: return {1, 0, 0, 0, 0, 0, q, q};
      case PlaneCategory::off_secant: return {0, 0, 1, 0, 0, 0, q - 1, 2 * (q - 1)};
    }
    throw std::logic_error("unknown plane category");
  }

 private:
  template <typename Range>
  LineTally tally(const Range& lines) const {
    LineTally t;
    t.per_class.assign(num_line_classes(), 0);
    for (auto l : lines) {
      const auto& lab = line_labels_[l];
      ++t.per_class[line_class_of(lab)];
      switch (lab.kind) {
        case LineKind::regulus: ++t.regulus; break;
        case LineKind::tangent_internal: ++t.tangent_internal; break;
        case LineKind::tangent_external: ++t.tangent_external; break;
        default: ++t.named[static_cast<int>(lab.kind)]; break;
      }
    }
    return t;
  }

  // -(X1 X3 - X2^2) / X4^2 for a point off pi: the unique lambda with P on Q_lambda.
  Element member_through(PointIndex p) const {
    const auto& x = geo_.point(p);
    const Element num = f_.sub(f_.mul(x[0], x[2]), f_.mul(x[1], x[1]));
    return f_.neg(f_.div(num, f_.mul(x[3], x[3])));
  }

  PointIndex trace_on_pi(PointIndex p) const {
    auto x = geo_.point(p);
    x[3] = f_.zero();
    return geo_.point_index(x);
  }

  void label_points() {
    const std::size_t n = geo_.num_points();
    point_labels_.assign(n, PointLabel{});
    const PencilMember cone = PencilMember::quadric(f_.zero());
    std::vector<PointIndex> on_pi;
    for (PointIndex p = 0; p < n; ++p) {
      const auto& x = geo_.point(p);
      if (p == u(4)) continue;
      if (f_.is_zero(x[3])) {
        if (on_member(p, cone)) {
          point_labels_[p].kind = PointKind::conic;
          conic_points_.push_back(p);
        } else {
          on_pi.push_back(p);
        }
      } else {
        const Element lambda = member_through(p);
        point_labels_[p].kind = f_.is_zero(lambda) ? PointKind::cone : PointKind::quadric;
        point_labels_[p].lambda = lambda;
      }
    }
    // Internal and external points: 0 or 2 tangents to C through them inside pi.
    std::vector<int> tangents(n, 0);
    for (auto l : geo_.lines_in(pi_)) {
      int meet = 0;
      for (auto p : geo_.points_on(l)) meet += point_labels_[p].kind == PointKind::conic ? 1 : 0;
      if (meet == 1)
        for (auto p : geo_.points_on(l)) ++tangents[p];
    }
    for (auto p : on_pi) {
      if (tangents[p] == 2)
        point_labels_[p].kind = PointKind::external;
      else if (tangents[p] == 0)
        point_labels_[p].kind = PointKind::internal;
      else
        throw std::logic_error("point of pi off C lies on " + std::to_string(tangents[p]) + " tangents");
    }
    for (PointIndex p = 0; p < n; ++p) {
      auto& lab = point_labels_[p];
      if (lab.kind != PointKind::cone && lab.kind != PointKind::quadric) continue;
      switch (point_labels_[trace_on_pi(p)].kind) {
        case PointKind::conic: lab.type = PointType::c; break;
        case PointKind::internal: lab.type = PointType::i; break;
        case PointKind::external: lab.type = PointType::e; break;
        default: throw std::logic_error("trace of a point on pi is not on pi");
      }
    }
  }

  void label_lines() {
    const std::size_t n = geo_.num_lines();
    line_labels_.assign(n, LineLabel{});
    // One line through U1 on each hyperbolic quadric fixes the regulus names.
    std::vector<LineIndex> regulus_anchor(q_, 0);
    for (auto lambda : nonzero_squares_) {
      const Vec4 p{f_.zero(), *f_.sqrt(lambda), f_.zero(), f_.one()};
      regulus_anchor[lambda.code] = geo_.line_through(u(1), geo_.point_index(p));
    }
    std::vector<int> mult(q_, 0);
    for (LineIndex l = 0; l < n; ++l) {
      auto& lab = line_labels_[l];
      if (geo_.line_in_plane(l, pi_)) {
        int meet = 0;
        for (auto p : geo_.points_on(l)) meet += point_labels_[p].kind == PointKind::conic ? 1 : 0;
        lab.kind = meet == 1 ? LineKind::l1 : meet == 0 ? LineKind::l2 : LineKind::l3;
        if (meet > 2) throw std::logic_error("line of pi meets C in more than two points");
        continue;
      }
      const PointIndex x = *geo_.intersection(l, pi_);
      const PointKind trace = point_labels_[x].kind;
      if (geo_.point_on_line(u(4), l)) {
        lab.kind = trace == PointKind::conic ? LineKind::l1p : trace == PointKind::internal ? LineKind::l2p : LineKind::l3p;
        continue;
      }
      std::fill(mult.begin(), mult.end(), 0);
      for (auto p : geo_.points_on(l))
        if (p != x) ++mult[member_through(p).code];
      if (trace == PointKind::conic) {
        const auto full = std::find(mult.begin(), mult.end(), q_);
        if (full != mult.end()) {
          const Element lambda = f_.from_code(static_cast<int>(full - mult.begin()));
          if (member_kind(lambda) != MemberKind::hyperbolic) throw std::logic_error("line contained in a non-hyperbolic member");
          const LineIndex anchor = regulus_anchor[lambda.code];
          lab.kind = LineKind::regulus;
          lab.lambda = lambda;
          lab.regulus = (l == anchor || !geo_.lines_meet(l, anchor)) ? 0 : 1;
        } else if (*std::max_element(mult.begin(), mult.end()) == 1) {
          lab.kind = LineKind::l4p;
        } else {
          throw std::logic_error("line through a conic point is neither a regulus line nor secant to all members");
        }
        continue;
      }
      int tangent = -1;
      for (int c = 0; c < q_; ++c) {
        if (mult[c] == 1) {
          if (tangent >= 0) throw std::logic_error("line tangent to two pencil members");
          tangent = c;
        } else if (mult[c] != 0 && mult[c] != 2) {
          throw std::logic_error("line meets a pencil quadric in an impossible number of points");
        }
      }
      if (tangent < 0) throw std::logic_error("line off C tangent to no pencil member");
      const Element lambda = f_.from_code(tangent);
      if (f_.is_zero(lambda)) {
        if (trace != PointKind::external) throw std::logic_error("cone tangent meets pi outside E");
        lab.kind = LineKind::l4;
      } else {
        lab.kind = trace == PointKind::internal ? LineKind::tangent_internal : LineKind::tangent_external;
        lab.lambda = lambda;
      }
    }
  }

  const Geometry& geo_;
  const Field& f_;
  int q_;
  std::array<PointIndex, 4> u_{};
  PlaneIndex pi_ = 0;
  std::vector<Element> nonzero_, nonzero_squares_;
  std::vector<int> nonzero_pos_, square_pos_;
  std::vector<PointIndex> conic_points_;
  std::vector<PointLabel> point_labels_;
  std::vector<LineLabel> line_labels_;
};

}  // namespace clgeom
