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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace clgeom {

/// Fixed-universe bitset over object indices (points, lines or planes).
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> members) : IndexSet(universe) {
    for (auto m : members) insert(m);
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.clear_tail();
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(std::size_t i) const {
    return i < universe_ && ((words_[i >> 6] >> (i & 63)) & 1U);
  }
  void insert(std::size_t i) {
    check(i);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void erase(std::size_t i) {
    check(i);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  IndexSet& operator|=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference.
  IndexSet& operator-=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  IndexSet complement() const {
    IndexSet c(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i];
    c.clear_tail();
    return c;
  }

  bool is_subset_of(const IndexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const IndexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  /// Members in increasing order.
  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    out.reserve(size());
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  void check(std::size_t i) const {
    if (i >= universe_) throw std::out_of_range("index outside the set universe");
  }
  void same_universe(const IndexSet& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("index sets over different universes");
  }
  void clear_tail() {
    if (universe_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace clgeom
