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
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "antik/antichain.hh"
#include "antik/errors.hh"
#include "antik/state_set.hh"

namespace antik {

// Winning conditions, all expressed over observations.
struct Objective {
  enum class Kind { Reach, Safe, Buchi, CoBuchi, Parity };

  Kind kind = Kind::Reach;
  // Target observation ids (Reach/Safe/Buchi/CoBuchi); sorted.
  std::vector<std::uint32_t> target;
  // Priority per observation id (Parity).
  std::vector<std::uint32_t> priority;

  bool has_target(std::uint32_t obs) const {
    return std::binary_search(target.begin(), target.end(), obs);
  }
};

inline const char* objective_kind_name(Objective::Kind k) {
  switch (k) {
    case Objective::Kind::Reach: return "reach";
    case Objective::Kind::Safe: return "safe";
    case Objective::Kind::Buchi: return "buchi";
    case Objective::Kind::CoBuchi: return "cobuchi";
    case Objective::Kind::Parity: return "parity";
  }
  return "?";
}

struct ValidationIssue {
  std::string rule;     // "totality" | "partition" | "objective"
  std::string message;  // names the offending state/letter/observation
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// A two-player turn-based arena with one observer: Player 1 picks letters,
// Player 2 resolves nondeterminism, and Player 1 sees only which observation
// block the play is in.  Immutable after construction; all queries are pure.
//
// Structural requirements (reported by validate, required by the solvers):
//   - every (state, letter) pair has at least one successor;
//   - the observation blocks are nonempty, pairwise disjoint, and cover all
//     states.
class GameStructure {
 public:
  GameStructure() = default;

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_letters() const { return letter_names_.size(); }
  std::size_t num_observations() const { return obs_names_.size(); }
  std::uint32_t initial() const { return initial_; }

  const std::string& state_name(std::uint32_t s) const {
    return state_names_[s];
  }
  const std::string& letter_name(std::uint32_t a) const {
    return letter_names_[a];
  }
  const std::string& observation_name(std::uint32_t o) const {
    return obs_names_[o];
  }

  std::optional<std::uint32_t> find_state(const std::string& n) const {
    auto it = state_index_.find(n);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::uint32_t> find_letter(const std::string& n) const {
    auto it = letter_index_.find(n);
    if (it == letter_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::uint32_t> find_observation(const std::string& n) const {
    auto it = obs_index_.find(n);
    if (it == obs_index_.end()) return std::nullopt;
    return it->second;
  }

  const StateSet& observation_block(std::uint32_t o) const {
    return gamma_[o];
  }

  // Successors of a single state under one letter.
  const StateSet& successors(std::uint32_t state, std::uint32_t letter) const {
    return post_[state * num_letters() + letter];
  }

  bool has_transition(std::uint32_t src, std::uint32_t letter,
                      std::uint32_t dst) const {
    return successors(src, letter).test(dst);
  }

  // The observation containing a state.  Requires a validated partition.
  std::uint32_t observation_of(std::uint32_t state) const {
    check_internal(!obs_of_.empty(),
                   "observation_of requires a validated game");
    return obs_of_[state];
  }

  const Objective& objective() const { return objective_; }
  void set_objective(Objective o) { objective_ = std::move(o); }

  // Successors of a set of states under one letter.
  StateSet post(const StateSet& s, std::uint32_t letter) const {
    check_input(s.universe() == num_states(),
                "post: state set does not belong to this game");
    check_input(letter < num_letters(), "post: unknown letter");
    StateSet out(num_states());
    s.for_each([&](std::uint32_t st) { out |= successors(st, letter); });
    return out;
  }

  // One step of knowledge tracking: from knowledge s, after playing letter
  // and observing block o, the new knowledge is post(s, letter) restricted to
  // that block.  Empty means the observation is impossible.
  StateSet knowledge_update(const StateSet& s, std::uint32_t letter,
                            std::uint32_t obs) const {
    check_input(!s.empty(), "knowledge_update: empty knowledge");
    check_input(obs < num_observations(), "knowledge_update: unknown observation");
    return post(s, letter) & gamma_[obs];
  }

  ValidationReport validate() const {
    ValidationReport rep;
    for (std::uint32_t st = 0; st < num_states(); ++st)
      for (std::uint32_t a = 0; a < num_letters(); ++a)
        if (successors(st, a).empty())
          rep.issues.push_back(
              {"totality", "state '" + state_names_[st] + "' has no successor for letter '" +
                               letter_names_[a] + "'"});
    StateSet covered(num_states());
    for (std::uint32_t o = 0; o < num_observations(); ++o) {
      if (gamma_[o].empty())
        rep.issues.push_back(
            {"partition", "observation '" + obs_names_[o] + "' is empty"});
      if (gamma_[o].intersects(covered)) {
        StateSet overlap = gamma_[o] & covered;
        overlap.for_each([&](std::uint32_t st) {
          rep.issues.push_back(
              {"partition", "state '" + state_names_[st] +
                                "' belongs to more than one observation"});
        });
      }
      covered |= gamma_[o];
    }
    covered.complement().for_each([&](std::uint32_t st) {
      rep.issues.push_back({"partition", "state '" + state_names_[st] +
                                             "' belongs to no observation"});
    });
    if (objective_.kind == Objective::Kind::Parity &&
        objective_.priority.size() != num_observations())
      rep.issues.push_back(
          {"objective", "parity objective must assign a priority to every observation"});
    return rep;
  }

  // Throws input_error with the full list of violations when invalid.
  void ensure_valid() const {
    ValidationReport rep = validate();
    if (rep.ok()) return;
    std::string msg = "invalid game:";
    for (const auto& i : rep.issues) msg += "\n  [" + i.rule + "] " + i.message;
    throw input_error(msg);
  }

  // Redirects every transition leaving a target observation back to the
  // source state, making target blocks absorbing.  Turns reachability into
  // an equivalent repeated-visit condition.
  GameStructure with_absorbing_observations(
      const std::vector<std::uint32_t>& obs_ids) const {
    GameStructure g = *this;
    StateSet absorb(num_states());
    for (auto o : obs_ids) absorb |= gamma_[o];
    absorb.for_each([&](std::uint32_t st) {
      for (std::uint32_t a = 0; a < num_letters(); ++a) {
        StateSet self(num_states());
        self.set(st);
        g.post_[st * num_letters() + a] = self;
      }
    });
    return g;
  }

  class Builder;

 private:
  friend class Builder;

  void check_input(bool cond, const char* what) const {
    if (!cond) throw input_error(what);
  }

  std::vector<std::string> state_names_, letter_names_, obs_names_;
  std::unordered_map<std::string, std::uint32_t> state_index_, letter_index_,
      obs_index_;
  std::uint32_t initial_ = 0;
  std::vector<StateSet> post_;   // [state * num_letters + letter]
  std::vector<StateSet> gamma_;  // per observation
  std::vector<std::uint32_t> obs_of_;  // per state; empty until partition holds
  Objective objective_;
};

class GameStructure::Builder {
 public:
  Builder& state(const std::string& name) {
    if (g_.state_index_.count(name))
      throw input_error("duplicate state '" + name + "'");
    g_.state_index_[name] = static_cast<std::uint32_t>(g_.state_names_.size());
    g_.state_names_.push_back(name);
    return *this;
  }

  Builder& letter(const std::string& name) {
    if (g_.letter_index_.count(name))
      throw input_error("duplicate letter '" + name + "'");
    g_.letter_index_[name] = static_cast<std::uint32_t>(g_.letter_names_.size());
    g_.letter_names_.push_back(name);
    return *this;
  }

  Builder& initial(const std::string& name) {
    initial_name_ = name;
    return *this;
  }

  Builder& transition(const std::string& src, const std::string& letter,
                      const std::string& dst) {
    transitions_.push_back({src, letter, dst});
    return *this;
  }

  Builder& observation(const std::string& name,
                       const std::vector<std::string>& states) {
    if (g_.obs_index_.count(name))
      throw input_error("duplicate observation '" + name + "'");
    g_.obs_index_[name] = static_cast<std::uint32_t>(g_.obs_names_.size());
    g_.obs_names_.push_back(name);
    obs_blocks_.push_back(states);
    return *this;
  }

  Builder& objective(Objective::Kind kind,
                     const std::vector<std::string>& target_names,
                     const std::map<std::string, std::uint32_t>& priorities = {}) {
    obj_kind_ = kind;
    obj_target_names_ = target_names;
    obj_priorities_ = priorities;
    return *this;
  }

  // Interns all names and assembles the game.  Shape errors (unknown names,
  // missing initial) throw; totality and partition are left to validate().
  GameStructure build() {
    if (g_.state_names_.empty()) throw input_error("game has no states");
    if (g_.letter_names_.empty()) throw input_error("game has no letters");
    auto init = g_.find_state(initial_name_);
    if (!init)
      throw input_error("initial state '" + initial_name_ + "' is not a state");
    g_.initial_ = *init;

    std::size_t n = g_.num_states(), k = g_.num_letters();
    g_.post_.assign(n * k, StateSet(n));
    for (const auto& t : transitions_) {
      auto s = g_.find_state(t.src);
      if (!s) throw input_error("transition source '" + t.src + "' is not a state");
      auto a = g_.find_letter(t.letter);
      if (!a) throw input_error("transition letter '" + t.letter + "' is not in the alphabet");
      auto d = g_.find_state(t.dst);
      if (!d) throw input_error("transition target '" + t.dst + "' is not a state");
      g_.post_[*s * k + *a].set(*d);
    }

    g_.gamma_.assign(g_.obs_names_.size(), StateSet(n));
    for (std::size_t o = 0; o < obs_blocks_.size(); ++o) {
      for (const auto& sn : obs_blocks_[o]) {
        auto s = g_.find_state(sn);
        if (!s)
          throw input_error("observation '" + g_.obs_names_[o] +
                            "' lists unknown state '" + sn + "'");
        g_.gamma_[o].set(*s);
      }
    }

    resolve_objective();
    index_observations();
    return std::move(g_);
  }

 private:
  void resolve_objective() {
    Objective obj;
    obj.kind = obj_kind_;
    for (const auto& tn : obj_target_names_) {
      auto o = g_.find_observation(tn);
      if (!o) {
        if (g_.find_state(tn))
          throw input_error("objective target '" + tn +
                            "' is a state; objectives range over observations");
        throw input_error("objective target '" + tn + "' is not an observation");
      }
      obj.target.push_back(*o);
    }
    std::sort(obj.target.begin(), obj.target.end());
    obj.target.erase(std::unique(obj.target.begin(), obj.target.end()),
                     obj.target.end());
    if (obj.kind == Objective::Kind::Parity) {
      obj.priority.assign(g_.obs_names_.size(), 0);
      std::vector<bool> seen(g_.obs_names_.size(), false);
      for (const auto& [name, prio] : obj_priorities_) {
        auto o = g_.find_observation(name);
        if (!o) {
          if (g_.find_state(name))
            throw input_error("priority key '" + name +
                              "' is a state; priorities range over observations");
          throw input_error("priority key '" + name + "' is not an observation");
        }
        obj.priority[*o] = prio;
        seen[*o] = true;
      }
      for (std::size_t o = 0; o < seen.size(); ++o)
        if (!seen[o])
          throw input_error("parity objective misses a priority for observation '" +
                            g_.obs_names_[o] + "'");
    }
    g_.objective_ = std::move(obj);
  }

  // Fill obs_of_ only when the blocks really partition the states, so that
  // invalid games can still be inspected and reported on.
  void index_observations() {
    std::size_t n = g_.num_states();
    std::vector<std::uint32_t> obs_of(n, UINT32_MAX);
    bool partition = true;
    for (std::uint32_t o = 0; o < g_.gamma_.size(); ++o) {
      if (g_.gamma_[o].empty()) partition = false;
      g_.gamma_[o].for_each([&](std::uint32_t st) {
        if (obs_of[st] != UINT32_MAX) partition = false;
        obs_of[st] = o;
      });
    }
    for (auto v : obs_of)
      if (v == UINT32_MAX) partition = false;
    if (partition) g_.obs_of_ = std::move(obs_of);
  }

  struct RawTransition {
    std::string src, letter, dst;
  };

  GameStructure g_;
  std::string initial_name_;
  std::vector<RawTransition> transitions_;
  std::vector<std::vector<std::string>> obs_blocks_;
  Objective::Kind obj_kind_ = Objective::Kind::Reach;
  std::vector<std::string> obj_target_names_;
  std::map<std::string, std::uint32_t> obj_priorities_;
};

// An arena whose observations may overlap: every state sits in at least one
// block, and the observer is told which block after each move.
struct CoverGameStructure {
  GameStructure base;  // gamma may overlap; obs_of is unused

  void ensure_covering() const {
    StateSet covered(base.num_states());
    for (std::uint32_t o = 0; o < base.num_observations(); ++o)
      covered |= base.observation_block(o);
    if (covered != StateSet::full(base.num_states()))
      throw input_error("covering violation: some state has no observation");
    for (std::uint32_t st = 0; st < base.num_states(); ++st)
      for (std::uint32_t a = 0; a < base.num_letters(); ++a)
        if (base.successors(st, a).empty())
          throw input_error("totality violation in covering game");
  }
};

// Rebuilds an overlapping-observation arena as a partitioned one over state
// pairs (state, block).  Player 2's freedom to pick the announced block moves
// into the transition relation.  The initial pair uses the first block
// containing the initial state.
inline GameStructure encode_overlapping(const CoverGameStructure& cover) {
  cover.ensure_covering();
  const GameStructure& g = cover.base;

  GameStructure::Builder b;
  std::vector<std::vector<std::string>> blocks(g.num_observations());
  auto pair_name = [&](std::uint32_t st, std::uint32_t o) {
    return g.state_name(st) + "@" + g.observation_name(o);
  };
  for (std::uint32_t o = 0; o < g.num_observations(); ++o)
    g.observation_block(o).for_each([&](std::uint32_t st) {
      b.state(pair_name(st, o));
      blocks[o].push_back(pair_name(st, o));
    });
  for (std::uint32_t a = 0; a < g.num_letters(); ++a)
    b.letter(g.letter_name(a));

  for (std::uint32_t o = 0; o < g.num_observations(); ++o)
    if (g.observation_block(o).test(g.initial())) {
      b.initial(pair_name(g.initial(), o));
      break;
    }

  for (std::uint32_t o = 0; o < g.num_observations(); ++o)
    g.observation_block(o).for_each([&](std::uint32_t st) {
      for (std::uint32_t a = 0; a < g.num_letters(); ++a)
        g.successors(st, a).for_each([&](std::uint32_t dst) {
          for (std::uint32_t o2 = 0; o2 < g.num_observations(); ++o2)
            if (g.observation_block(o2).test(dst))
              b.transition(pair_name(st, o), g.letter_name(a),
                           pair_name(dst, o2));
        });
    });

  for (std::uint32_t o = 0; o < g.num_observations(); ++o)
    b.observation(g.observation_name(o), blocks[o]);

  std::vector<std::string> target_names;
  for (auto t : g.objective().target)
    target_names.push_back(g.observation_name(t));
  std::map<std::string, std::uint32_t> prios;
  if (g.objective().kind == Objective::Kind::Parity)
    for (std::uint32_t o = 0; o < g.num_observations(); ++o)
      prios[g.observation_name(o)] = g.objective().priority[o];
  b.objective(g.objective().kind, target_names, prios);

  GameStructure out = b.build();
  out.ensure_valid();
  return out;
}

}  // namespace antik
