// Copyright 2026 The antik Authors. All rights reserved.
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
#include <vector>

#include "antik/errors.hh"

namespace antik {

// A set of states over a fixed universe 0..universe-1, stored as a
// multi-word bit vector.  States are dense integer ids; the owning game maps
// them back to source names.  Value type, cheap to copy at desk scale.
class StateSet {
 public:
  StateSet() = default;

  explicit StateSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static StateSet full(std::size_t universe) {
    StateSet s(universe);
    for (std::size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~0ull;
    s.trim();
    return s;
  }

  static StateSet of(std::size_t universe,
                     std::initializer_list<std::uint32_t> members) {
    StateSet s(universe);
    for (auto m : members) s.set(m);
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool test(std::uint32_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void set(std::uint32_t i) {
    check_internal(i < universe_, "StateSet::set: state out of range");
    words_[i >> 6] |= 1ull << (i & 63);
  }

  void reset(std::uint32_t i) { words_[i >> 6] &= ~(1ull << (i & 63)); }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }

  bool subset_of(const StateSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool proper_subset_of(const StateSet& o) const {
    return subset_of(o) && *this != o;
  }

  bool intersects(const StateSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  StateSet& operator|=(const StateSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  StateSet& operator&=(const StateSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  // Set difference.
  StateSet& operator-=(const StateSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  StateSet complement() const {
    StateSet r = full(universe_);
    r -= *this;
    return r;
  }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend bool operator!=(const StateSet& a, const StateSet& b) {
    return !(a == b);
  }

  // Canonical order: by cardinality, then by the earliest state in which the
  // two sets differ (the set containing it comes first).  Total on a fixed
  // universe; makes antichains and reports deterministic.
  static bool canonical_less(const StateSet& a, const StateSet& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      std::uint64_t d = a.words_[i] ^ b.words_[i];
      if (d) return a.words_[i] & (d & -d);
    }
    return false;
  }

  template <class F>
  void for_each(F f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        std::uint32_t bit = static_cast<std::uint32_t>(std::countr_zero(w));
        f(static_cast<std::uint32_t>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::uint32_t s) { out.push_back(s); });
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ universe_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  void same_universe(const StateSet& o) const {
    check_internal(universe_ == o.universe_,
                   "StateSet: mixed universes in set operation");
  }

  void trim() {
    if (universe_ % 64 != 0 && !words_.empty())
      words_.back() &= (1ull << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

}  // namespace antik
