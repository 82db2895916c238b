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
//
// Bounded-tape alternating machines and their encoding as imperfect-
// information reachability games: the observer simulates the machine while
// the adversary secretly monitors one tape cell, punishing any lie about its
// content.  A correctness and stress generator for the solvers.

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "antik/game.hh"

namespace antik {

// Tape symbols are 0, 1, and 2; 2 is the blank.
inline constexpr std::uint8_t kBlank = 2;

struct AlternatingMachine {
  struct Step {
    std::uint32_t from;
    std::uint8_t read;
    std::uint32_t to;
    std::uint8_t write;
    std::int8_t dir;  // -1 or +1
  };

  std::vector<std::string> control_names;
  std::uint32_t initial_control = 0;
  std::vector<bool> is_and;  // mode per control; false = branch (or)
  std::vector<Step> delta;
  std::vector<bool> accepting;

  std::size_t num_controls() const { return control_names.size(); }

  // Branching starts at an or-control and strictly alternates with
  // and-controls along every step.
  void ensure_well_formed() const {
    if (control_names.empty()) throw input_error("machine has no controls");
    if (is_and.size() != num_controls() || accepting.size() != num_controls())
      throw input_error("machine: modes and accepting must cover all controls");
    if (is_and[initial_control])
      throw input_error("machine: the initial control must be an or-control");
    for (const auto& s : delta) {
      if (s.from >= num_controls() || s.to >= num_controls())
        throw input_error("machine: step references an unknown control");
      if (s.read > kBlank || s.write > kBlank)
        throw input_error("machine: tape symbols are 0, 1, or 2");
      if (s.dir != -1 && s.dir != 1)
        throw input_error("machine: head moves are -1 or +1");
      if (is_and[s.from] == is_and[s.to])
        throw input_error("machine: steps must alternate or- and and-controls");
    }
  }
};

namespace detail {

inline std::vector<std::uint8_t> initial_tape(std::uint32_t cells,
                                              const std::string& word) {
  if (word.size() > cells)
    throw input_error("word does not fit on the tape");
  std::vector<std::uint8_t> tape(cells, kBlank);
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] != '0' && word[i] != '1')
      throw input_error("word must be over {0,1}");
    tape[i] = static_cast<std::uint8_t>(word[i] - '0');
  }
  return tape;
}

inline std::size_t configuration_space(const AlternatingMachine& m,
                                       std::uint32_t cells) {
  std::size_t tapes = 1;
  for (std::uint32_t i = 0; i < cells; ++i) tapes *= 3;
  return m.num_controls() * cells * tapes;
}

}  // namespace detail

// Evaluates the machine on a word over a bounded tape by alternating
// reachability on the configuration graph: an or-configuration succeeds if
// some move does, an and-configuration if it has moves and all succeed, and
// accepting controls succeed outright.  A branch with no moves fails unless
// already accepting.
inline bool machine_accepts(const AlternatingMachine& m, std::uint32_t cells,
                            const std::string& word,
                            std::size_t cap = 1000000) {
  m.ensure_well_formed();
  if (cells == 0) throw input_error("tape must have at least one cell");
  std::size_t space = detail::configuration_space(m, cells);
  if (space > cap)
    throw input_error("configuration space " + std::to_string(space) +
                      " exceeds cap " + std::to_string(cap));

  std::size_t tapes = space / (m.num_controls() * cells);
  auto encode_tape = [&](const std::vector<std::uint8_t>& t) {
    std::size_t code = 0;
    for (std::uint32_t i = cells; i-- > 0;) code = code * 3 + t[i];
    return code;
  };
  auto id = [&](std::uint32_t q, std::uint32_t head, std::size_t tape_code) {
    return (static_cast<std::size_t>(q) * cells + head) * tapes + tape_code;
  };

  std::vector<std::vector<std::uint32_t>> succ(space);
  std::vector<std::uint8_t> tape(cells);
  for (std::size_t code = 0; code < tapes; ++code) {
    std::size_t c = code;
    for (std::uint32_t i = 0; i < cells; ++i) {
      tape[i] = static_cast<std::uint8_t>(c % 3);
      c /= 3;
    }
    for (std::uint32_t q = 0; q < m.num_controls(); ++q)
      for (std::uint32_t head = 0; head < cells; ++head)
        for (const auto& s : m.delta) {
          if (s.from != q || s.read != tape[head]) continue;
          std::int64_t nh = static_cast<std::int64_t>(head) + s.dir;
          if (nh < 0 || nh >= cells) continue;
          std::uint8_t saved = tape[head];
          tape[head] = s.write;
          succ[id(q, head, code)].push_back(static_cast<std::uint32_t>(
              id(s.to, static_cast<std::uint32_t>(nh), encode_tape(tape))));
          tape[head] = saved;
        }
  }

  std::vector<char> good(space, 0);
  for (std::uint32_t q = 0; q < m.num_controls(); ++q)
    if (m.accepting[q])
      for (std::uint32_t head = 0; head < cells; ++head)
        for (std::size_t code = 0; code < tapes; ++code)
          good[id(q, head, code)] = 1;

  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t v = 0; v < space; ++v) {
      if (good[v]) continue;
      std::uint32_t q = static_cast<std::uint32_t>(v / (tapes * cells));
      bool ok;
      if (m.is_and[q]) {
        ok = !succ[v].empty();
        for (auto w : succ[v])
          if (!good[w]) {
            ok = false;
            break;
          }
      } else {
        ok = false;
        for (auto w : succ[v])
          if (good[w]) {
            ok = true;
            break;
          }
      }
      if (ok) {
        good[v] = 1;
        grew = true;
      }
    }
  }

  return good[id(m.initial_control, 0,
                 encode_tape(detail::initial_tape(cells, word)))];
}

struct MachineGame {
  GameStructure game;
  std::size_t or_layer_total = 0, and_layer_total = 0;
  std::size_t or_layer_reachable = 0, and_layer_reachable = 0;
};

// Builds the reachability game simulating the machine on the word.  Game
// states carry (last adversary move, control, head) visibly and the
// monitored pair (cell, symbol) invisibly; or-layer states let the observer
// pick a machine step plus a claim for the next cell, and-layer states hand
// the step choice to the adversary.  Claims about the monitored cell are
// checked both where the head is and where it moves; a lie, an invalid step,
// or a dead end leads to an absorbing sink.  The objective is to reach an
// observation whose control is accepting.
inline MachineGame build_machine_game(const AlternatingMachine& m,
                                      std::uint32_t cells,
                                      const std::string& word,
                                      std::size_t cap = 1000000) {
  m.ensure_well_formed();
  if (cells == 0) throw input_error("tape must have at least one cell");
  std::vector<std::uint8_t> tape0 = detail::initial_tape(cells, word);
  {
    std::size_t layer1 = (m.delta.size() + 1) * m.num_controls() * cells *
                         cells * 3;
    std::size_t layer2 = m.num_controls() * cells * 3 * cells * 3;
    if (layer1 + layer2 > cap)
      throw input_error("game space " + std::to_string(layer1 + layer2) +
                        " exceeds cap " + std::to_string(cap));
  }

  // States of the or-layer: (step, control, head, cell, symbol); step is the
  // adversary's last move, or kNone on the first round.  States of the
  // and-layer: (control, head, claim, cell, symbol).
  constexpr std::uint32_t kNone = UINT32_MAX;
  struct OrState {
    std::uint32_t step, control, head, cell;
    std::uint8_t symbol;
    bool operator<(const OrState& o) const {
      return std::tie(step, control, head, cell, symbol) <
             std::tie(o.step, o.control, o.head, o.cell, o.symbol);
    }
  };
  struct AndState {
    std::uint32_t control, head, cell;
    std::uint8_t claim, symbol;
    bool operator<(const AndState& o) const {
      return std::tie(control, head, claim, cell, symbol) <
             std::tie(o.control, o.head, o.claim, o.cell, o.symbol);
    }
  };

  auto step_name = [&](std::uint32_t s) {
    return s == kNone ? std::string("-") : "t" + std::to_string(s);
  };
  auto or_name = [&](const OrState& s) {
    return "[" + step_name(s.step) + "," + m.control_names[s.control] + ",h" +
           std::to_string(s.head + 1) + "|k" + std::to_string(s.cell + 1) +
           "," + std::to_string(s.symbol) + "]";
  };
  auto and_name = [&](const AndState& s) {
    return "[" + m.control_names[s.control] + ",h" + std::to_string(s.head + 1) +
           "," + std::to_string(s.claim) + "|k" + std::to_string(s.cell + 1) +
           "," + std::to_string(s.symbol) + "]";
  };
  auto or_obs = [&](const OrState& s) {
    return "[" + step_name(s.step) + "," + m.control_names[s.control] + ",h" +
           std::to_string(s.head + 1) + "]";
  };
  auto and_obs = [&](const AndState& s) {
    return "[" + m.control_names[s.control] + ",h" + std::to_string(s.head + 1) +
           "," + std::to_string(s.claim) + "]";
  };

  GameStructure::Builder b;
  b.state("init").state("sink");
  b.letter("eps");
  for (std::uint32_t t = 0; t < m.delta.size(); ++t)
    for (std::uint8_t claim = 0; claim <= kBlank; ++claim)
      b.letter("t" + std::to_string(t) + "/" + std::to_string(claim));
  b.initial("init");

  std::map<OrState, std::string> or_states;
  std::map<AndState, std::string> and_states;
  std::deque<std::pair<bool, std::size_t>> work;  // (is_and, index key order)
  std::vector<OrState> or_queue;
  std::vector<AndState> and_queue;

  auto add_or = [&](const OrState& s) {
    auto [it, fresh] = or_states.emplace(s, or_name(s));
    if (fresh) {
      b.state(it->second);
      or_queue.push_back(s);
      work.push_back({false, or_queue.size() - 1});
    }
    return it->second;
  };
  auto add_and = [&](const AndState& s) {
    auto [it, fresh] = and_states.emplace(s, and_name(s));
    if (fresh) {
      b.state(it->second);
      and_queue.push_back(s);
      work.push_back({true, and_queue.size() - 1});
    }
    return it->second;
  };

  // First round: the adversary fixes the monitored pair consistently with
  // the input word; any non-eps opening is punished.
  for (std::uint32_t cell = 0; cell < cells; ++cell)
    b.transition("init", "eps",
                 add_or({kNone, m.initial_control, 0, cell, tape0[cell]}));
  for (std::uint32_t t = 0; t < m.delta.size(); ++t)
    for (std::uint8_t claim = 0; claim <= kBlank; ++claim)
      b.transition("init", "t" + std::to_string(t) + "/" + std::to_string(claim),
                   "sink");
  for (std::uint32_t t = 0; t < m.delta.size(); ++t)
    for (std::uint8_t claim = 0; claim <= kBlank; ++claim)
      b.transition("sink", "t" + std::to_string(t) + "/" + std::to_string(claim),
                   "sink");
  b.transition("sink", "eps", "sink");

  while (!work.empty()) {
    auto [in_and_layer, idx] = work.front();
    work.pop_front();
    if (!in_and_layer) {
      OrState s = or_queue[idx];
      std::string src = or_states.at(s);
      b.transition(src, "eps", "sink");
      for (std::uint32_t t = 0; t < m.delta.size(); ++t) {
        const auto& st = m.delta[t];
        std::int64_t nh = static_cast<std::int64_t>(s.head) + st.dir;
        for (std::uint8_t claim = 0; claim <= kBlank; ++claim) {
          std::string letter =
              "t" + std::to_string(t) + "/" + std::to_string(claim);
          bool invalid = st.from != s.control || nh < 0 || nh >= cells;
          bool lie = (s.head == s.cell && st.read != s.symbol) ||
                     (!invalid && static_cast<std::uint32_t>(nh) == s.cell &&
                      claim != s.symbol);
          if (invalid || lie) {
            b.transition(src, letter, "sink");
            continue;
          }
          std::uint8_t symbol = s.head == s.cell ? st.write : s.symbol;
          b.transition(src, letter,
                       add_and({st.to, static_cast<std::uint32_t>(nh), s.cell,
                                claim, symbol}));
        }
      }
    } else {
      AndState s = and_queue[idx];
      std::string src = and_states.at(s);
      bool any = false;
      for (std::uint32_t t = 0; t < m.delta.size(); ++t) {
        const auto& st = m.delta[t];
        if (st.from != s.control || st.read != s.claim) continue;
        std::int64_t nh = static_cast<std::int64_t>(s.head) + st.dir;
        if (nh < 0 || nh >= cells) continue;
        any = true;
        std::uint8_t symbol = s.head == s.cell ? st.write : s.symbol;
        b.transition(src, "eps",
                     add_or({t, st.to, static_cast<std::uint32_t>(nh), s.cell,
                             symbol}));
      }
      if (!any) b.transition(src, "eps", "sink");
      for (std::uint32_t t = 0; t < m.delta.size(); ++t)
        for (std::uint8_t claim = 0; claim <= kBlank; ++claim)
          b.transition(src,
                       "t" + std::to_string(t) + "/" + std::to_string(claim),
                       "sink");
    }
  }

  // Observations project away the monitored pair.
  b.observation("init", {"init"});
  b.observation("sink", {"sink"});
  std::map<std::string, std::vector<std::string>> blocks;
  std::map<std::string, bool> block_accepting;
  for (const auto& [s, name] : or_states) {
    blocks[or_obs(s)].push_back(name);
    block_accepting[or_obs(s)] = m.accepting[s.control];
  }
  for (const auto& [s, name] : and_states) {
    blocks[and_obs(s)].push_back(name);
    block_accepting[and_obs(s)] = m.accepting[s.control];
  }
  std::vector<std::string> targets;
  for (const auto& [obs, states] : blocks) {
    b.observation(obs, states);
    if (block_accepting[obs]) targets.push_back(obs);
  }
  b.objective(Objective::Kind::Reach, targets);

  MachineGame out;
  out.game = b.build();
  out.game.ensure_valid();
  out.or_layer_total =
      (m.delta.size() + 1) * m.num_controls() * cells * cells * 3;
  out.and_layer_total = m.num_controls() * cells * 3 * cells * 3;
  out.or_layer_reachable = or_states.size();
  out.and_layer_reachable = and_states.size();
  return out;
}

}  // namespace antik
