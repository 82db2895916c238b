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

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "antik/game.hh"

namespace antik {

// Hash-consed storage of knowledge sets, shared between the two derived
// game constructions built from one arena.
class SetPool {
 public:
  std::uint32_t intern(const StateSet& s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(sets_.size());
    sets_.push_back(s);
    index_.emplace(sets_.back(), id);
    return id;
  }

  const StateSet& operator[](std::uint32_t id) const { return sets_[id]; }
  std::size_t size() const { return sets_.size(); }

 private:
  std::vector<StateSet> sets_;
  std::unordered_map<StateSet, std::uint32_t, StateSetHash> index_;
};

// The arena over knowledge sets: states are the nonempty sets of source
// states the observer considers possible, moves refine them through the
// observation blocks.  Either the fragment reachable from {initial}, or the
// full family of nonempty sets when `full` is set.
struct SubsetGame {
  const GameStructure* source = nullptr;
  SetPool* pool = nullptr;
  bool full = false;

  std::vector<std::uint32_t> states;  // pool ids, position = local state id
  std::uint32_t initial = 0;          // local id
  // obs_of[i] is the unique block covering states[i]; UINT32_MAX if the set
  // straddles blocks (possible only in the full construction).
  std::vector<std::uint32_t> obs_of;
  // succ[i * num_letters + a] = local ids, deterministic order.
  std::vector<std::vector<std::uint32_t>> succ;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_letters() const { return source->num_letters(); }
  const StateSet& knowledge(std::uint32_t i) const { return (*pool)[states[i]]; }
  const std::vector<std::uint32_t>& successors(std::uint32_t i,
                                               std::uint32_t a) const {
    return succ[i * num_letters() + a];
  }

  std::string state_name(std::uint32_t i) const {
    std::string n = "{";
    bool first = true;
    knowledge(i).for_each([&](std::uint32_t st) {
      if (!first) n += ",";
      n += source->state_name(st);
      first = false;
    });
    return n + "}";
  }
};

// The arena over (knowledge set, state) pairs used for almost-sure analysis.
// Pairs sharing a knowledge set are indistinguishable to the observer and
// are grouped into classes.
struct KnowledgeGame {
  struct State {
    std::uint32_t set_id;    // pool id of the knowledge component
    std::uint32_t location;  // source state
  };

  const GameStructure* source = nullptr;
  SetPool* pool = nullptr;

  std::vector<State> states;
  std::uint32_t initial = 0;
  std::vector<std::uint32_t> obs_of;     // block of the knowledge component
  std::vector<std::uint32_t> class_of;   // class id per state
  std::vector<std::vector<std::uint32_t>> class_members;
  std::vector<std::vector<std::uint32_t>> succ;  // [i * num_letters + a]

  std::size_t num_states() const { return states.size(); }
  std::size_t num_letters() const { return source->num_letters(); }
  const StateSet& knowledge(std::uint32_t i) const {
    return (*pool)[states[i].set_id];
  }
  const std::vector<std::uint32_t>& successors(std::uint32_t i,
                                               std::uint32_t a) const {
    return succ[i * num_letters() + a];
  }

  std::string state_name(std::uint32_t i) const {
    std::string n = "{";
    bool first = true;
    knowledge(i).for_each([&](std::uint32_t st) {
      if (!first) n += ",";
      n += source->state_name(st);
      first = false;
    });
    return n + "}|" + source->state_name(states[i].location);
  }

  // Pairs whose knowledge sits inside a target observation block.
  StateSet target_pairs(const std::vector<std::uint32_t>& target_obs) const {
    StateSet out(num_states());
    for (std::uint32_t i = 0; i < num_states(); ++i)
      for (auto o : target_obs)
        if (knowledge(i).subset_of(source->observation_block(o))) out.set(i);
    return out;
  }
};

namespace detail {

inline std::uint32_t unique_block_of(const GameStructure& g, const StateSet& s) {
  for (std::uint32_t o = 0; o < g.num_observations(); ++o) {
    if (s.subset_of(g.observation_block(o))) return o;
    if (s.intersects(g.observation_block(o))) return UINT32_MAX;
  }
  return UINT32_MAX;
}

}  // namespace detail

// Breadth-first construction of the reachable knowledge arena.  Every
// reachable set lies inside a single observation block; this is checked as
// the construction runs.
inline SubsetGame build_gk(const GameStructure& g, SetPool& pool) {
  g.ensure_valid();
  SubsetGame gk;
  gk.source = &g;
  gk.pool = &pool;

  std::unordered_map<std::uint32_t, std::uint32_t> local;  // pool id -> local
  std::deque<std::uint32_t> work;

  auto add = [&](const StateSet& s) -> std::uint32_t {
    std::uint32_t pid = pool.intern(s);
    auto it = local.find(pid);
    if (it != local.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(gk.states.size());
    local.emplace(pid, id);
    gk.states.push_back(pid);
    std::uint32_t o = detail::unique_block_of(g, s);
    check_internal(o != UINT32_MAX,
                   "reachable knowledge set straddles observation blocks");
    gk.obs_of.push_back(o);
    work.push_back(id);
    return id;
  };

  StateSet init(g.num_states());
  init.set(g.initial());
  gk.initial = add(init);

  while (!work.empty()) {
    std::uint32_t id = work.front();
    work.pop_front();
    StateSet s = (*gk.pool)[gk.states[id]];
    for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
      std::vector<std::uint32_t> outs;
      for (std::uint32_t o = 0; o < g.num_observations(); ++o) {
        StateSet next = g.knowledge_update(s, a, o);
        if (!next.empty()) outs.push_back(add(next));
      }
      check_internal(!outs.empty(), "knowledge arena lost totality");
      if (gk.succ.size() < (id + 1) * g.num_letters())
        gk.succ.resize((id + 1) * g.num_letters());
      gk.succ[id * g.num_letters() + a] = std::move(outs);
    }
  }
  gk.succ.resize(gk.states.size() * g.num_letters());
  return gk;
}

// The knowledge arena over every nonempty subset of states, including
// unreachable ones.  Exponential; intended for small cross-check instances.
inline SubsetGame build_gk_full(const GameStructure& g, SetPool& pool) {
  g.ensure_valid();
  check_internal(g.num_states() <= 20, "full knowledge arena too large");
  SubsetGame gk;
  gk.source = &g;
  gk.pool = &pool;
  gk.full = true;

  std::size_t n = g.num_states();
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    StateSet s(n);
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) s.set(i);
    std::uint32_t pid = pool.intern(s);
    local.emplace(pid, static_cast<std::uint32_t>(gk.states.size()));
    gk.states.push_back(pid);
    gk.obs_of.push_back(detail::unique_block_of(g, s));
  }
  StateSet init(n);
  init.set(g.initial());
  gk.initial = local.at(pool.intern(init));

  gk.succ.resize(gk.states.size() * g.num_letters());
  for (std::uint32_t id = 0; id < gk.states.size(); ++id) {
    const StateSet& s = (*gk.pool)[gk.states[id]];
    for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
      std::vector<std::uint32_t>& outs = gk.succ[id * g.num_letters() + a];
      for (std::uint32_t o = 0; o < g.num_observations(); ++o) {
        StateSet next = g.knowledge_update(s, a, o);
        if (!next.empty()) outs.push_back(local.at(pool.intern(next)));
      }
    }
  }
  return gk;
}

// Breadth-first construction of the reachable (knowledge, state) arena,
// with indistinguishability classes materialized.
inline KnowledgeGame build_knw(const GameStructure& g, SetPool& pool) {
  g.ensure_valid();
  KnowledgeGame h;
  h.source = &g;
  h.pool = &pool;

  std::unordered_map<std::uint64_t, std::uint32_t> local;  // (set_id, loc)
  std::deque<std::uint32_t> work;
  auto key = [](std::uint32_t set_id, std::uint32_t loc) {
    return (static_cast<std::uint64_t>(set_id) << 32) | loc;
  };

  auto add = [&](const StateSet& s, std::uint32_t loc) -> std::uint32_t {
    check_internal(s.test(loc), "pair state outside its knowledge set");
    std::uint32_t pid = pool.intern(s);
    auto it = local.find(key(pid, loc));
    if (it != local.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(h.states.size());
    local.emplace(key(pid, loc), id);
    h.states.push_back({pid, loc});
    std::uint32_t o = detail::unique_block_of(g, s);
    check_internal(o != UINT32_MAX,
                   "reachable knowledge set straddles observation blocks");
    h.obs_of.push_back(o);
    work.push_back(id);
    return id;
  };

  StateSet init(g.num_states());
  init.set(g.initial());
  h.initial = add(init, g.initial());

  while (!work.empty()) {
    std::uint32_t id = work.front();
    work.pop_front();
    StateSet s = (*h.pool)[h.states[id].set_id];
    std::uint32_t loc = h.states[id].location;
    for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
      std::vector<std::uint32_t> outs;
      for (std::uint32_t o = 0; o < g.num_observations(); ++o) {
        StateSet next = g.knowledge_update(s, a, o);
        if (next.empty()) continue;
        StateSet moves = g.successors(loc, a) & g.observation_block(o);
        moves.for_each(
            [&](std::uint32_t dst) { outs.push_back(add(next, dst)); });
      }
      check_internal(!outs.empty(), "pair arena lost totality");
      if (h.succ.size() < (id + 1) * g.num_letters())
        h.succ.resize((id + 1) * g.num_letters());
      h.succ[id * g.num_letters() + a] = std::move(outs);
    }
  }
  h.succ.resize(h.states.size() * g.num_letters());

  // Group states by knowledge component.
  std::unordered_map<std::uint32_t, std::uint32_t> class_index;
  h.class_of.resize(h.states.size());
  for (std::uint32_t i = 0; i < h.states.size(); ++i) {
    auto [it, fresh] = class_index.emplace(
        h.states[i].set_id, static_cast<std::uint32_t>(h.class_members.size()));
    if (fresh) h.class_members.emplace_back();
    h.class_of[i] = it->second;
    h.class_members[it->second].push_back(i);
  }
  return h;
}

// A finite play prefix of the source arena: state letter state ... state.
struct Prefix {
  std::vector<std::uint32_t> states;
  std::vector<std::uint32_t> letters;  // size = states.size() - 1
};

// Lifts a play prefix to the pair arena by tracking knowledge step by step.
// Returns local ids into a freshly built (or caller-supplied) KnowledgeGame.
inline std::vector<std::uint32_t> map_prefix(const KnowledgeGame& h,
                                             const Prefix& rho) {
  const GameStructure& g = *h.source;
  check_internal(!rho.states.empty(), "empty prefix");
  if (rho.states.front() != g.initial())
    throw input_error("prefix does not start at the initial state");
  if (rho.letters.size() + 1 != rho.states.size())
    throw input_error("prefix must alternate states and letters");

  std::unordered_map<std::uint64_t, std::uint32_t> index;
  for (std::uint32_t i = 0; i < h.num_states(); ++i)
    index[(static_cast<std::uint64_t>(h.states[i].set_id) << 32) |
          h.states[i].location] = i;

  std::vector<std::uint32_t> out;
  StateSet know(g.num_states());
  know.set(g.initial());
  auto emit = [&](const StateSet& s, std::uint32_t loc) {
    auto it = index.find(
        (static_cast<std::uint64_t>(h.pool->intern(s)) << 32) | loc);
    check_internal(it != index.end(), "lifted prefix leaves the reachable arena");
    out.push_back(it->second);
  };
  emit(know, rho.states[0]);
  for (std::size_t i = 0; i + 1 < rho.states.size(); ++i) {
    std::uint32_t a = rho.letters[i];
    std::uint32_t next = rho.states[i + 1];
    if (!g.has_transition(rho.states[i], a, next))
      throw input_error("illegal prefix: missing transition at step " +
                        std::to_string(i));
    know = g.knowledge_update(know, a, g.observation_of(next));
    check_internal(!know.empty(), "knowledge tracking reached the empty set");
    emit(know, next);
  }
  return out;
}

}  // namespace antik
