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
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clgeom/geometry.hpp"
#include "clgeom/index_set.hpp"
#include "clgeom/klein.hpp"
#include "clgeom/parallel.hpp"
#include "clgeom/pencil.hpp"

namespace clgeom {

/// A set of lines with its declared parameter x; a Cameron-Liebler class
/// with parameter x has x(q^2+q+1) lines.
struct LineClass {
  std::string name;
  IndexSet members;
  long x = 0;
};

inline long half_parameter(long q) { return (q * q + 1) / 2; }

// ---------------------------------------------------------------------------
// Bruen-Drudge classes on the elliptic quadric Q_lambda_bar.

enum class Side { on, os };
enum class NonTangentLines { secant, external };

/// Tangent lines to Q_lambda_bar whose q off-quadric points lie in the chosen
/// side, together with all secant (or all external) lines.
///
/// Every tangent line must have its q off-quadric points on one side; a
/// mixed tangent is reported as std::logic_error.
inline LineClass build_bruen_drudge(const Pencil& pencil, Element lambda_bar, Side side,
                                    NonTangentLines others = NonTangentLines::secant) {
  const Geometry& geo = pencil.geometry();
  const Field& f = geo.field();
  if (f.is_square(lambda_bar)) throw std::invalid_argument("Bruen-Drudge class needs a non-square lambda");
  const auto sp = pencil.sign_partition(lambda_bar);
  const IndexSet& wanted = side == Side::on ? sp.on : sp.os;
  LineClass lc{"bruen-drudge", IndexSet(geo.num_lines()), half_parameter(geo.q())};
  for (LineIndex l = 0; l < geo.num_lines(); ++l) {
    int on_quadric = 0, in_wanted = 0;
    for (auto p : geo.points_on(l)) {
      if (sp.quadric.contains(p))
        ++on_quadric;
      else if (wanted.contains(p))
        ++in_wanted;
    }
    if (on_quadric == 1) {
      if (in_wanted != 0 && in_wanted != geo.q()) throw std::logic_error("tangent line with points on both sides");
      if (in_wanted == geo.q()) lc.members.insert(l);
    } else if ((on_quadric == 2 && others == NonTangentLines::secant) ||
               (on_quadric == 0 && others == NonTangentLines::external)) {
      lc.members.insert(l);
    }
  }
  return lc;
}

/// Swaps the q^2 external lines in the tangent plane at R with the q^2
/// secant lines through R (or back, when the class holds the secants).
inline LineClass build_first_derived(const Pencil& pencil, const LineClass& base, Element lambda_bar, PointIndex r) {
  const Geometry& geo = pencil.geometry();
  if (!geo.field().is_zero(pencil.eval_quadric(lambda_bar, r))) throw std::invalid_argument("R is not on Q_lambda_bar");
  const PlaneIndex rho = pencil.polar_plane(lambda_bar, r);
  IndexSet external_in_rho(geo.num_lines()), secant_through_r(geo.num_lines());
  for (auto l : geo.lines_in(rho))
    if (!geo.point_on_line(r, l)) external_in_rho.insert(l);
  const PencilMember q = PencilMember::quadric(lambda_bar);
  for (auto l : geo.lines_through(r))
    if (pencil.line_vs(l, q) == Incidence::secant) secant_through_r.insert(l);

  LineClass out{"first-derived", base.members, base.x};
  if (external_in_rho.is_subset_of(base.members) && !secant_through_r.intersects(base.members)) {
    out.members -= external_in_rho;
    out.members |= secant_through_r;
  } else if (secant_through_r.is_subset_of(base.members) && !external_in_rho.intersects(base.members)) {
    out.members -= secant_through_r;
    out.members |= external_in_rho;
  } else {
    throw std::invalid_argument("class is not a Bruen-Drudge class of Q_lambda_bar");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derivation: (L \ A) ∪ B.

class DerivationError : public std::invalid_argument {
 public:
  DerivationError(const std::string& what, std::vector<LineIndex> witnesses)
      : std::invalid_argument(what), witnesses_(std::move(witnesses)) {}
  const std::vector<LineIndex>& witnesses() const { return witnesses_; }

 private:
  std::vector<LineIndex> witnesses_;
};

inline LineClass derive(const LineClass& l, const IndexSet& a, const IndexSet& b) {
  if (!a.is_subset_of(l.members)) {
    auto w = (a - l.members).members();
    w.resize(std::min<std::size_t>(w.size(), 10));
    throw DerivationError("A is not contained in L", w);
  }
  if (b.intersects(l.members)) {
    auto w = (b & l.members).members();
    w.resize(std::min<std::size_t>(w.size(), 10));
    throw DerivationError("B meets L", w);
  }
  if (a.size() != b.size()) throw DerivationError("A and B differ in size", {});
  return {"derived", (l.members - a) | b, l.x};
}

/// One row of the closed-form meeting counts |A_l|, |B_l| per line family.
struct DerivationCase {
  std::string name;
  long expected_a = 0, expected_b = 0;
  std::size_t lines = 0, mismatches = 0;
};

struct DerivationReport {
  bool containment_ok = false;  // A ⊆ L, B ∩ L = ∅, |A| = |B|
  std::size_t balance_violations = 0;
  std::size_t closed_form_violations = 0;
  std::vector<LineIndex> sample_violations;
  std::vector<DerivationCase> cases;

  bool balance_ok() const { return balance_violations == 0; }
  bool closed_form_ok() const { return closed_form_violations == 0; }
  bool pass() const { return containment_ok && balance_ok() && closed_form_ok(); }
};

/// Closed-form |A_l|, |B_l| cases, in the order: neutral (regulus and four
/// tangent sub-cases), A-side (L3, L1', L2', L4'), B-side (L1, L2, L4, L3').
/// Counts include l itself when it belongs to the set.
inline std::vector<DerivationCase> derivation_cases(long q) {
  const long q2 = q * q;
  const long c1 = (3 * q2 - q + 2) / 2;      // L1, L1'
  const long c2 = (q + 1) * (q + 1) / 2;     // L2, L2'
  const long c3 = (3 * q2 - 2 * q + 3) / 2;  // L3, L3'
  const long c4 = (2 * q2 - q + 3) / 2;      // L4, L4'
  return {
      {"regulus", 2 * q2 - q + 1, 2 * q2 - q + 1},
      {"tangentI/secant-trace", q2 + q + 1, q2 + q + 1},
      {"tangentI/external-trace", q2 + q, q2 + q},
      {"tangentE/secant-trace", q2 + q + 2, q2 + q + 2},
      {"tangentE/external-trace", q2 + q + 1, q2 + q + 1},
      {"L3", q2 + c3, c3},
      {"L1'", q2 + c1, c1},
      {"L2'", q2 + c2, c2},
      {"L4'", q2 + c4, c4},
      {"L1", c1, q2 + c1},
      {"L2", c2, q2 + c2},
      {"L4", c4, q2 + c4},
      {"L3'", c3, q2 + c3},
  };
}

/// Index into derivation_cases for a line, or -1 if no closed form covers it.
inline int derivation_case_of(const Pencil& pencil, LineIndex l) {
  const Geometry& geo = pencil.geometry();
  const auto& lab = pencil.line_label(l);
  switch (lab.kind) {
    case LineKind::regulus: return 0;
    case LineKind::l3: return 5;
    case LineKind::l1p: return 6;
    case LineKind::l2p: return 7;
    case LineKind::l4p: return 8;
    case LineKind::l1: return 9;
    case LineKind::l2: return 10;
    case LineKind::l4: return 11;
    case LineKind::l3p: return 12;
    default: break;
  }
  // Trace on pi of the plane joining U4 and l.
  const LineIndex trace = geo.meet(geo.plane_through(l, pencil.u(4)), pencil.pi());
  const LineKind tk = pencil.line_label(trace).kind;
  if (tk != LineKind::l3 && tk != LineKind::l2) return -1;
  const int base = lab.kind == LineKind::tangent_internal ? 1 : 3;
  return base + (tk == LineKind::l3 ? 0 : 1);
}

/// Checks the hypotheses of the derivation for every line: |A_l| = |B_l|
/// off A ∪ B, |A_l| - |B_l| = q^2 on A, |B_l| - |A_l| = q^2 on B, and the
/// closed-form counts per line family.
inline DerivationReport check_derivation_preconditions(const Pencil& pencil, const LineClass& l, const IndexSet& a,
                                                       const IndexSet& b, unsigned threads = 1) {
  const Geometry& geo = pencil.geometry();
  const long q = geo.q();
  DerivationReport rep;
  rep.containment_ok = a.is_subset_of(l.members) && !b.intersects(l.members) && a.size() == b.size();
  rep.cases = derivation_cases(q);
  const auto stars_a = star_counts(geo, a), stars_b = star_counts(geo, b);
  std::mutex mu;
  std::vector<LineIndex> bad;
  parallel_for(geo.num_lines(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> lines(rep.cases.size(), 0), miss(rep.cases.size(), 0);
    std::size_t balance = 0, closed = 0;
    std::vector<LineIndex> local_bad;
    for (auto line = static_cast<LineIndex>(begin); line < end; ++line) {
      const long na = meet_count(geo, stars_a, a, line), nb = meet_count(geo, stars_b, b, line);
      const long want = a.contains(line) ? q * q : b.contains(line) ? -q * q : 0;
      bool ok = (na - nb) == want;
      if (!ok) ++balance;
      const int c = derivation_case_of(pencil, line);
      if (c < 0) {
        ++closed;
        ok = false;
      } else {
        ++lines[c];
        if (na != rep.cases[c].expected_a || nb != rep.cases[c].expected_b) {
          ++miss[c];
          ++closed;
          ok = false;
        }
      }
      if (!ok) local_bad.push_back(line);
    }
    std::lock_guard lock(mu);
    for (std::size_t c = 0; c < rep.cases.size(); ++c) {
      rep.cases[c].lines += lines[c];
      rep.cases[c].mismatches += miss[c];
    }
    rep.balance_violations += balance;
    rep.closed_form_violations += closed;
    bad.insert(bad.end(), local_bad.begin(), local_bad.end());
  });
  std::sort(bad.begin(), bad.end());
  bad.resize(std::min<std::size_t>(bad.size(), 10));
  rep.sample_violations = std::move(bad);
  return rep;
}

/// The new class: the Bruen-Drudge class on O_n with the secants, derived
/// by A = L1' ∪ L2' ∪ L3 ∪ L4' and B = L1 ∪ L2 ∪ L3' ∪ L4.
struct DerivedConstruction {
  LineClass base;
  IndexSet a, b;
  LineClass derived;
};

inline DerivedConstruction build_derived(const Pencil& pencil, Element lambda_bar) {
  const long q = pencil.geometry().q();
  if (q % 4 != 1) throw std::invalid_argument("the derived class needs q = 1 (mod 4), got q = " + std::to_string(q));
  DerivedConstruction dc;
  dc.base = build_bruen_drudge(pencil, lambda_bar, Side::on);
  std::tie(dc.a, dc.b) = pencil.build_A_B();
  dc.derived = derive(dc.base, dc.a, dc.b);
  return dc;
}

// ---------------------------------------------------------------------------
// Characters.

struct CharacterProfile {
  enum class Kind { star, plane };
  Kind kind = Kind::star;
  std::map<long, long> spectrum;  // value -> multiplicity

  std::vector<long> values() const {
    std::vector<long> v;
    for (const auto& [value, mult] : spectrum) v.push_back(value);
    return v;
  }
  long objects() const {
    long n = 0;
    for (const auto& [value, mult] : spectrum) n += mult;
    return n;
  }
  long weighted_sum() const {
    long n = 0;
    for (const auto& [value, mult] : spectrum) n += value * mult;
    return n;
  }
};

inline CharacterProfile profile_of(CharacterProfile::Kind kind, const std::vector<long>& counts) {
  CharacterProfile p;
  p.kind = kind;
  for (long c : counts) ++p.spectrum[c];
  return p;
}

inline CharacterProfile star_characters(const Geometry& geo, const IndexSet& t) {
  return profile_of(CharacterProfile::Kind::star, star_counts(geo, t));
}

inline CharacterProfile plane_characters(const Geometry& geo, const IndexSet& t) {
  return profile_of(CharacterProfile::Kind::plane, plane_counts(geo, t));
}

/// Published character lists of the earlier families with parameter
/// (q^2+1)/2. For the second derived family the lists are supersets; the
/// cyclic family is only known to have q^2+q+1 as a character.
struct KnownFamily {
  std::string name;
  std::vector<long> star_values, plane_values;
  bool exact = true;
  std::optional<long> required_value;
};

inline std::vector<KnownFamily> known_family_characters(long q) {
  if (q % 2 == 0) throw std::invalid_argument("known families are listed for odd q only");
  const long h = (q * q + q) / 2;
  auto sorted = [](std::vector<long> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  return {
      {"bruen-drudge", sorted({(q + 1) / 2, h, h + q + 1}), sorted({h - q, h + 1, q * q + (q + 1) / 2}), true, {}},
      {"first-derived", sorted({(q + 3) / 2, h - q, h + 1, h + q + 2, q * q + (q + 1) / 2}),
       sorted({(q + 1) / 2, h - (q + 1), h, h + q + 1, q * q + (q - 1) / 2}), true, {}},
      {"second-derived",
       sorted({(q + 1) / 2, 5 * (q + 1) / 2, h - 2 * (q + 1), h - (q + 1), h, h + q + 1, h + 2 * (q + 1), h + 3 * (q + 1)}),
       sorted({q * q + (q + 1) / 2, q * q - 3 * (q + 1) / 2, h + 2 * q + 3, h + q + 2, h + 1, h - q, h - 2 * q - 1,
               h - 2 * (q + 1)}),
       false, {}},
      {"cyclic", {}, {}, false, q * q + q + 1},
  };
}

enum class Verdict { distinct, inconclusive };

struct FamilyVerdict {
  std::string family;
  Verdict verdict = Verdict::inconclusive;
  std::optional<long> witness;
  std::string reason;
};

/// Character value sets are invariant under collineations and correlations,
/// so a value of T missing from a family's combined list (or a value the
/// family must have missing from T) separates them. A match proves nothing.
/// Verdicts are only issued for q >= 9.
inline std::vector<FamilyVerdict> compare_known(long q, const CharacterProfile& star, const CharacterProfile& plane) {
  std::set<long> ours;
  for (long v : star.values()) ours.insert(v);
  for (long v : plane.values()) ours.insert(v);
  const long marker = (3 * q + 5) / 2;
  std::vector<FamilyVerdict> out;
  for (const auto& fam : known_family_characters(q)) {
    FamilyVerdict v{fam.name, Verdict::inconclusive, std::nullopt, ""};
    if (q < 9) {
      v.reason = "no verdict below q = 9";
      out.push_back(v);
      continue;
    }
    if (fam.required_value) {
      if (!ours.count(*fam.required_value)) {
        v.verdict = Verdict::distinct;
        v.witness = *fam.required_value;
        v.reason = "family character absent from this class";
      } else {
        v.reason = "required character present";
      }
      out.push_back(v);
      continue;
    }
    std::set<long> theirs(fam.star_values.begin(), fam.star_values.end());
    theirs.insert(fam.plane_values.begin(), fam.plane_values.end());
    std::optional<long> witness;
    if (ours.count(marker) && !theirs.count(marker)) {
      witness = marker;
    } else {
      for (long x : ours)
        if (!theirs.count(x)) {
          witness = x;
          break;
        }
    }
    if (witness) {
      v.verdict = Verdict::distinct;
      v.witness = witness;
      v.reason = "character of this class absent from the family list";
    } else {
      v.reason = "all characters occur in the family list";
    }
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spreads.

struct Spread {
  std::vector<LineIndex> lines;
};

/// True iff the lines partition the point set.
inline bool is_spread(const Geometry& geo, const std::vector<LineIndex>& lines) {
  const std::size_t q = geo.q();
  if (lines.size() != q * q + 1) return false;
  std::vector<char> covered(geo.num_points(), 0);
  for (auto l : lines)
    for (auto p : geo.points_on(l)) {
      if (covered[p]) return false;
      covered[p] = 1;
    }
  return true;
}

/// The regular spread of 1-dimensional GF(q^2)-subspaces of GF(q^2)^2, with
/// GF(q^2) = GF(q)[t]/(t^2 - s) for the distinguished non-square s and
/// (x_0 + x_1 t, y_0 + y_1 t) <-> (x_0, x_1, y_0, y_1).
inline Spread build_regular_spread(const Geometry& geo) {
  const Field& f = geo.field();
  const Element s = f.distinguished_nonsquare(), z = f.zero(), one = f.one();
  Spread sp;
  for (auto m0 : f.elements()) {
    for (auto m1 : f.elements()) {
      // (1, m) and t (1, m) = (t, m0 t + m1 s).
      const Vec4 u{one, z, m0, m1}, v{z, one, f.mul(m1, s), m0};
      sp.lines.push_back(geo.line_through(geo.point_index(u), geo.point_index(v)));
    }
  }
  sp.lines.push_back(geo.line_through(geo.point_index(Vec4{z, z, one, z}), geo.point_index(Vec4{z, z, z, one})));
  if (!is_spread(geo, sp.lines)) throw std::logic_error("regular spread construction failed");
  return sp;
}

inline Collineation random_collineation(const Field& f, std::mt19937_64& rng) {
  const auto q = static_cast<std::uint64_t>(f.q());
  for (;;) {
    Mat4 m;
    for (auto& row : m)
      for (auto& e : row) e = f.from_code(static_cast<int>(rng() % q));
    if (!f.is_zero(determinant(f, m))) return Collineation::make(f, m);
  }
}

struct SpreadTestReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  long expected = 0;
  std::map<long, std::size_t> hits;  // |spread ∩ T| -> number of samples
  bool pass = false;
};

/// Images of the regular spread under seeded random collineations must each
/// contain exactly x lines of T.
inline SpreadTestReport spread_sample_test(const Geometry& geo, const IndexSet& t, long x, std::size_t samples,
                                           std::uint64_t seed) {
  SpreadTestReport rep{seed, samples, x, {}, true};
  const Spread base = build_regular_spread(geo);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Collineation g = random_collineation(geo.field(), rng);
    std::vector<LineIndex> image;
    image.reserve(base.lines.size());
    for (auto l : base.lines) image.push_back(geo.map_line(g, l));
    if (!is_spread(geo, image)) throw std::logic_error("collineation image of a spread is not a spread");
    long n = 0;
    for (auto l : image) n += t.contains(l) ? 1 : 0;
    ++rep.hits[n];
    if (n != x) rep.pass = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Star and polar-plane counts of a Bruen-Drudge class by point position.

struct OssCategory {
  std::string name;  // "quadric", "On", "Os"
  long expected = 0;
  std::set<long> observed;
  bool pass() const { return observed.size() == 1 && *observed.begin() == expected; }
};

struct OssReport {
  std::vector<OssCategory> star, plane;
  // |P^⊥ ∩ C| observed for points of type E, C and I, with the stated 0, 1, 2.
  std::vector<OssCategory> conic_meets;
  bool pass() const {
    for (const auto* group : {&star, &plane, &conic_meets})
      for (const auto& c : *group)
        if (!c.pass()) return false;
    return true;
  }
};

/// Compares the per-point star counts and polar-plane counts of the class
/// with q^2+(q+1)/2, (q^2+q)/2+1, (q^2+q)/2+q (stars) and (q+1)/2,
/// (q^2+q)/2, (q^2+q)/2+q+1 (planes) on Q_lambda_bar, O_n, O_s. The report
/// records what is observed; it does not throw on a mismatch.
inline OssReport remark_oss_check(const Pencil& pencil, const LineClass& lc, Element lambda_bar) {
  const Geometry& geo = pencil.geometry();
  const long q = geo.q(), h = (q * q + q) / 2;
  const auto sp = pencil.sign_partition(lambda_bar);
  const auto stars = star_counts(geo, lc.members);
  const auto planes = plane_counts(geo, lc.members);
  OssReport rep;
  rep.star = {{"quadric", q * q + (q + 1) / 2, {}}, {"On", h + 1, {}}, {"Os", h + q, {}}};
  rep.plane = {{"quadric", (q + 1) / 2, {}}, {"On", h, {}}, {"Os", h + q + 1, {}}};
  rep.conic_meets = {{"type E", 0, {}}, {"type C", 1, {}}, {"type I", 2, {}}};
  const auto conic = pencil.points_of_kind(PointKind::conic).members();
  for (PointIndex p = 0; p < geo.num_points(); ++p) {
    const int cat = sp.quadric.contains(p) ? 0 : sp.on.contains(p) ? 1 : 2;
    const PlaneIndex polar = pencil.polar_plane(lambda_bar, p);
    rep.star[cat].observed.insert(stars[p]);
    rep.plane[cat].observed.insert(planes[polar]);
    if (const auto& t = pencil.point_label(p).type) {
      long meets = 0;
      for (auto c : conic) meets += geo.point_on_plane(c, polar) ? 1 : 0;
      const int idx = *t == PointType::e ? 0 : *t == PointType::c ? 1 : 2;
      rep.conic_meets[idx].observed.insert(meets);
    }
  }
  return rep;
}

}  // namespace clgeom
