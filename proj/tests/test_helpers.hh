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

#include <string>
#include <unordered_set>
#include <vector>

#include "antik/game.hh"
#include "antik/mucalc.hh"
#include "antik/oracle.hh"

namespace antik::test {

// The six-state arena where the observer must gamble at the middle block: a
// reachability target behind a two-way split the adversary controls.
inline GameStructure fork_game() {
  GameStructure::Builder b;
  for (auto* n : {"l1", "l2", "l2'", "l3", "l3'", "l4"}) b.state(n);
  b.letter("a").letter("b");
  b.initial("l1");
  for (auto* x : {"a", "b"}) {
    b.transition("l1", x, "l2").transition("l1", x, "l2'");
    b.transition("l3", x, "l1");
    b.transition("l3'", x, "l4");
    b.transition("l4", x, "l4");
  }
  b.transition("l2", "a", "l3").transition("l2", "b", "l3'");
  b.transition("l2'", "a", "l3'").transition("l2'", "b", "l3");
  b.observation("o1", {"l1"});
  b.observation("o2", {"l2", "l2'"});
  b.observation("o3", {"l3", "l3'"});
  b.observation("o4", {"l4"});
  b.objective(Objective::Kind::Reach, {"o4"});
  return b.build();
}

// The seven-state arena where repeated reachability needs both memory and
// randomization: two twin corridors whose exits demand opposite letters.
inline GameStructure corridor_game() {
  GameStructure::Builder b;
  for (auto* n : {"l0", "l1", "l2", "l3", "l4", "l5", "l6"}) b.state(n);
  b.letter("a").letter("b");
  b.initial("l0");
  b.transition("l0", "a", "l1").transition("l0", "a", "l2");
  b.transition("l0", "a", "l4").transition("l0", "b", "l0");
  b.transition("l1", "a", "l3").transition("l1", "b", "l0");
  b.transition("l2", "a", "l0").transition("l2", "b", "l3");
  b.transition("l3", "a", "l5").transition("l3", "b", "l6");
  b.transition("l4", "a", "l6").transition("l4", "b", "l5");
  for (auto* x : {"a", "b"}) {
    b.transition("l5", x, "l5");
    b.transition("l6", x, "l6");
  }
  b.observation("o1", {"l0"});
  b.observation("o2", {"l1", "l2"});
  b.observation("o3", {"l3", "l4"});
  b.observation("o4", {"l5"});
  b.observation("o5", {"l6"});
  b.objective(Objective::Kind::Buchi, {"o4"});
  return b.build();
}

inline std::uint32_t state_id(const GameStructure& g, const std::string& n) {
  auto s = g.find_state(n);
  if (!s) throw std::runtime_error("no state " + n);
  return *s;
}

inline std::uint32_t obs_id(const GameStructure& g, const std::string& n) {
  auto o = g.find_observation(n);
  if (!o) throw std::runtime_error("no observation " + n);
  return *o;
}

inline std::uint32_t letter_id(const GameStructure& g, const std::string& n) {
  auto a = g.find_letter(n);
  if (!a) throw std::runtime_error("no letter " + n);
  return *a;
}

inline StateSet set_of(const GameStructure& g,
                       std::initializer_list<const char*> names) {
  StateSet s(g.num_states());
  for (auto* n : names) s.set(state_id(g, n));
  return s;
}

// Every nonempty subset of the universe, for enumeration oracles.
inline std::vector<StateSet> all_nonempty_subsets(std::size_t universe) {
  std::vector<StateSet> out;
  for (std::uint64_t mask = 1; mask < (1ull << universe); ++mask) {
    StateSet s(universe);
    for (std::uint32_t i = 0; i < universe; ++i)
      if (mask & (1ull << i)) s.set(i);
    out.push_back(s);
  }
  return out;
}

// Explicit downward closure of an antichain, as a hash set.
inline std::unordered_set<StateSet, StateSetHash> closure_of(
    const Antichain& q, std::size_t universe) {
  std::unordered_set<StateSet, StateSetHash> out;
  for (const auto& s : all_nonempty_subsets(universe))
    if (q.dominates(s)) out.insert(s);
  return out;
}

inline Antichain random_antichain(SplitMix64& rng, std::size_t universe,
                                  int tries = 4) {
  Antichain a;
  for (int i = 0; i < tries; ++i) {
    StateSet s(universe);
    for (std::uint32_t j = 0; j < universe; ++j)
      if (rng.bounded(2)) s.set(j);
    a.insert(s);
  }
  return a;
}

// ---------------------------------------------------------------------------
// Structural verification of deterministic knowledge strategies: build the
// graph of knowledge sets visited under the strategy (one edge per possible
// observation) and check the objective on it exactly.

struct StrategyGraph {
  std::vector<StateSet> nodes;
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<bool> in_target;
};

inline StrategyGraph strategy_graph(const GameStructure& g,
                                    const KnowledgeStrategy& strat) {
  StrategyGraph sg;
  std::unordered_map<StateSet, std::uint32_t, StateSetHash> index;
  std::vector<std::uint32_t> work;

  auto add = [&](const StateSet& s) -> std::uint32_t {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(sg.nodes.size());
    index.emplace(s, id);
    sg.nodes.push_back(s);
    sg.succ.emplace_back();
    bool tgt = false;
    for (auto o : strat.target)
      if (s.subset_of(g.observation_block(o))) tgt = true;
    sg.in_target.push_back(tgt);
    work.push_back(id);
    return id;
  };

  StateSet init(g.num_states());
  init.set(g.initial());
  add(init);
  while (!work.empty()) {
    std::uint32_t id = work.back();
    work.pop_back();
    StateSet s = sg.nodes[id];
    std::uint32_t a = strat.resolve(g, s);
    for (std::uint32_t o = 0; o < g.num_observations(); ++o) {
      StateSet next = g.knowledge_update(s, a, o);
      if (!next.empty()) sg.succ[id].push_back(add(next));
    }
  }
  return sg;
}

// True iff the subgraph on non-target nodes is acyclic, i.e. every infinite
// play hits a target node.
inline bool every_play_reaches_target(const StrategyGraph& sg) {
  std::vector<int> mark(sg.nodes.size(), 0);  // 0 new, 1 open, 2 done
  auto dfs = [&](auto&& self, std::uint32_t v) -> bool {
    if (sg.in_target[v]) return true;
    if (mark[v] == 1) return false;  // cycle through non-target nodes
    if (mark[v] == 2) return true;
    mark[v] = 1;
    for (auto w : sg.succ[v])
      if (!self(self, w)) return false;
    mark[v] = 2;
    return true;
  };
  for (std::uint32_t v = 0; v < sg.nodes.size(); ++v)
    if (!dfs(dfs, v)) return false;
  return true;
}

inline bool every_node_in_target(const StrategyGraph& sg) {
  for (std::uint32_t v = 0; v < sg.nodes.size(); ++v)
    if (!sg.in_target[v]) return false;
  return true;
}

// True iff from every node, the target is revisited along every play: the
// non-target subgraph must be acyclic (reaching a target resets the search).
inline bool every_play_revisits_target(const StrategyGraph& sg) {
  return every_play_reaches_target(sg);
}

}  // namespace antik::test
