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

#include <algorithm>
#include <cstddef>
#include <vector>

#include "antik/state_set.hh"

namespace antik {

// An antichain of nonempty state sets: pairwise incomparable under set
// inclusion, kept in canonical order.  Represents the downward-closed family
// of all subsets of its elements; the empty antichain is the bottom of the
// lattice and {L} the top.
class Antichain {
 public:
  Antichain() = default;

  static Antichain bottom() { return Antichain(); }

  static Antichain top(std::size_t universe) {
    Antichain a;
    a.elems_.push_back(StateSet::full(universe));
    return a;
  }

  static Antichain singleton(StateSet s) {
    Antichain a;
    a.insert(std::move(s));
    return a;
  }

  // Maximal elements of an arbitrary family; empty sets are dropped.
  static Antichain maximal(const std::vector<StateSet>& sets) {
    Antichain a;
    for (const auto& s : sets) a.insert(s);
    return a;
  }

  const std::vector<StateSet>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  // Inserts s unless it is empty or dominated; evicts elements s dominates.
  void insert(StateSet s) {
    if (s.empty()) return;
    for (const auto& e : elems_)
      if (s.subset_of(e)) return;
    std::erase_if(elems_, [&](const StateSet& e) { return e.subset_of(s); });
    auto pos = std::lower_bound(elems_.begin(), elems_.end(), s,
                                StateSet::canonical_less);
    elems_.insert(pos, std::move(s));
  }

  // True iff s is in the represented downward-closed family.
  bool dominates(const StateSet& s) const {
    for (const auto& e : elems_)
      if (s.subset_of(e)) return true;
    return false;
  }

  // The lattice order: every element of this is below some element of other.
  bool leq(const Antichain& other) const {
    for (const auto& s : elems_)
      if (!other.dominates(s)) return false;
    return true;
  }

  friend bool operator==(const Antichain& a, const Antichain& b) {
    return a.elems_ == b.elems_;
  }
  friend bool operator!=(const Antichain& a, const Antichain& b) {
    return !(a == b);
  }

 private:
  std::vector<StateSet> elems_;
};

inline Antichain join(const Antichain& a, const Antichain& b) {
  Antichain r = a;
  for (const auto& s : b.elements()) r.insert(s);
  return r;
}

// Pairwise intersections, pruned on insertion.
inline Antichain meet(const Antichain& a, const Antichain& b) {
  Antichain r;
  for (const auto& s : a.elements())
    for (const auto& t : b.elements()) r.insert(s & t);
  return r;
}

}  // namespace antik
