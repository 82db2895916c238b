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

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "antik/atm.hh"
#include "antik/game.hh"
#include "antik/knowledge.hh"

namespace antik {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(origin + ": JSON parse error at " +
                      line_column(text, e.byte ? e.byte - 1 : 0) + ": " +
                      e.what());
  }
}

inline const Json& field(const Json& j, const char* name,
                         const std::string& origin) {
  if (!j.is_object())
    throw input_error(origin + ": expected an object");
  auto it = j.find(name);
  if (it == j.end())
    throw input_error(origin + ": missing field '" + std::string(name) + "'");
  return *it;
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw input_error(where + ": expected a string");
  return j.get<std::string>();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// Game description files:
// {
//   "states": ["l1", ...],
//   "initial": "l1",
//   "alphabet": ["a", "b"],
//   "transitions": [["l1", "a", "l2"], ...],
//   "observations": {"o1": ["l1"], ...},          // order defines indexing
//   "objective": {"kind": "reach", "target": ["o4"]}
//                or {"kind": "parity", "priority": {"o1": 0, ...}}
// }
inline GameStructure parse_game_text(const std::string& text,
                                     const std::string& origin) {
  Json j = detail::parse_text(text, origin);
  GameStructure::Builder b;

  const Json& states = detail::field(j, "states", origin);
  if (!states.is_array()) throw input_error(origin + ": 'states' must be an array");
  for (std::size_t i = 0; i < states.size(); ++i)
    b.state(detail::as_string(states[i],
                              origin + ": states[" + std::to_string(i) + "]"));

  b.initial(detail::as_string(detail::field(j, "initial", origin),
                              origin + ": initial"));

  const Json& alphabet = detail::field(j, "alphabet", origin);
  if (!alphabet.is_array())
    throw input_error(origin + ": 'alphabet' must be an array");
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    b.letter(detail::as_string(
        alphabet[i], origin + ": alphabet[" + std::to_string(i) + "]"));

  const Json& transitions = detail::field(j, "transitions", origin);
  if (!transitions.is_array())
    throw input_error(origin + ": 'transitions' must be an array");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const Json& t = transitions[i];
    std::string where = origin + ": transitions[" + std::to_string(i) + "]";
    if (!t.is_array() || t.size() != 3)
      throw input_error(where + ": expected [source, letter, target]");
    b.transition(detail::as_string(t[0], where), detail::as_string(t[1], where),
                 detail::as_string(t[2], where));
  }

  const Json& observations = detail::field(j, "observations", origin);
  if (!observations.is_object())
    throw input_error(origin + ": 'observations' must be an object");
  for (const auto& [name, block] : observations.items()) {
    std::string where = origin + ": observations." + name;
    if (!block.is_array()) throw input_error(where + ": expected an array");
    std::vector<std::string> members;
    for (std::size_t i = 0; i < block.size(); ++i)
      members.push_back(detail::as_string(block[i], where));
    b.observation(name, members);
  }

  const Json& objective = detail::field(j, "objective", origin);
  std::string kind_name = detail::as_string(
      detail::field(objective, "kind", origin + ": objective"),
      origin + ": objective.kind");
  Objective::Kind kind;
  if (kind_name == "reach") kind = Objective::Kind::Reach;
  else if (kind_name == "safe") kind = Objective::Kind::Safe;
  else if (kind_name == "buchi") kind = Objective::Kind::Buchi;
  else if (kind_name == "cobuchi") kind = Objective::Kind::CoBuchi;
  else if (kind_name == "parity") kind = Objective::Kind::Parity;
  else
    throw input_error(origin +
                      ": objective.kind must be one of reach, safe, buchi, "
                      "cobuchi, parity");

  std::vector<std::string> target;
  std::map<std::string, std::uint32_t> priorities;
  if (kind == Objective::Kind::Parity) {
    const Json& prio = detail::field(objective, "priority", origin + ": objective");
    if (!prio.is_object())
      throw input_error(origin + ": objective.priority must be an object");
    for (const auto& [name, p] : prio.items()) {
      if (!p.is_number_unsigned())
        throw input_error(origin + ": objective.priority." + name +
                          " must be a nonnegative integer");
      priorities[name] = p.get<std::uint32_t>();
    }
  } else {
    const Json& t = detail::field(objective, "target", origin + ": objective");
    if (!t.is_array())
      throw input_error(origin + ": objective.target must be an array");
    for (std::size_t i = 0; i < t.size(); ++i)
      target.push_back(
          detail::as_string(t[i], origin + ": objective.target[" +
                                      std::to_string(i) + "]"));
  }
  b.objective(kind, target, priorities);
  return b.build();
}

inline GameStructure load_game(const std::string& path) {
  return parse_game_text(detail::read_file(path), path);
}

inline Json dump_game(const GameStructure& g) {
  Json j;
  j["states"] = Json::array();
  for (std::uint32_t s = 0; s < g.num_states(); ++s)
    j["states"].push_back(g.state_name(s));
  j["initial"] = g.state_name(g.initial());
  j["alphabet"] = Json::array();
  for (std::uint32_t a = 0; a < g.num_letters(); ++a)
    j["alphabet"].push_back(g.letter_name(a));
  j["transitions"] = Json::array();
  for (std::uint32_t s = 0; s < g.num_states(); ++s)
    for (std::uint32_t a = 0; a < g.num_letters(); ++a)
      g.successors(s, a).for_each([&](std::uint32_t d) {
        j["transitions"].push_back(
            Json::array({g.state_name(s), g.letter_name(a), g.state_name(d)}));
      });
  j["observations"] = Json::object();
  for (std::uint32_t o = 0; o < g.num_observations(); ++o) {
    Json block = Json::array();
    g.observation_block(o).for_each(
        [&](std::uint32_t s) { block.push_back(g.state_name(s)); });
    j["observations"][g.observation_name(o)] = block;
  }
  Json obj;
  obj["kind"] = objective_kind_name(g.objective().kind);
  if (g.objective().kind == Objective::Kind::Parity) {
    Json prio = Json::object();
    for (std::uint32_t o = 0; o < g.num_observations(); ++o)
      prio[g.observation_name(o)] = g.objective().priority[o];
    obj["priority"] = prio;
  } else {
    Json t = Json::array();
    for (auto o : g.objective().target) t.push_back(g.observation_name(o));
    obj["target"] = t;
  }
  j["objective"] = obj;
  return j;
}

// Machine description files:
// {
//   "states": ["q0", "qa"], "initial": "q0",
//   "modes": {"q0": "or", "qa": "and"},
//   "accepting": ["qa"],
//   "delta": [["q0", "1", "qa", "1", 1], ...],   // [from, read, to, write, dir]
//   "word": "1", "cells": 2
// }
struct MachineInstance {
  AlternatingMachine machine;
  std::uint32_t cells = 0;
  std::string word;
};

inline MachineInstance parse_machine_text(const std::string& text,
                                          const std::string& origin) {
  Json j = detail::parse_text(text, origin);
  MachineInstance inst;
  AlternatingMachine& m = inst.machine;

  const Json& states = detail::field(j, "states", origin);
  if (!states.is_array()) throw input_error(origin + ": 'states' must be an array");
  std::map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::string n = detail::as_string(states[i], origin + ": states");
    if (index.count(n)) throw input_error(origin + ": duplicate control '" + n + "'");
    index[n] = static_cast<std::uint32_t>(m.control_names.size());
    m.control_names.push_back(n);
  }
  auto control = [&](const std::string& n, const std::string& where) {
    auto it = index.find(n);
    if (it == index.end())
      throw input_error(where + ": unknown control '" + n + "'");
    return it->second;
  };

  m.initial_control = control(
      detail::as_string(detail::field(j, "initial", origin), origin + ": initial"),
      origin + ": initial");

  m.is_and.assign(m.control_names.size(), false);
  const Json& modes = detail::field(j, "modes", origin);
  if (!modes.is_object()) throw input_error(origin + ": 'modes' must be an object");
  std::vector<bool> mode_seen(m.control_names.size(), false);
  for (const auto& [name, mode] : modes.items()) {
    std::uint32_t q = control(name, origin + ": modes");
    std::string v = detail::as_string(mode, origin + ": modes." + name);
    if (v != "or" && v != "and")
      throw input_error(origin + ": modes." + name + " must be 'or' or 'and'");
    m.is_and[q] = v == "and";
    mode_seen[q] = true;
  }
  for (std::size_t q = 0; q < mode_seen.size(); ++q)
    if (!mode_seen[q])
      throw input_error(origin + ": missing mode for control '" +
                        m.control_names[q] + "'");

  m.accepting.assign(m.control_names.size(), false);
  const Json& accepting = detail::field(j, "accepting", origin);
  if (!accepting.is_array())
    throw input_error(origin + ": 'accepting' must be an array");
  for (const auto& a : accepting)
    m.accepting[control(detail::as_string(a, origin + ": accepting"),
                        origin + ": accepting")] = true;

  auto symbol = [&](const Json& v, const std::string& where) -> std::uint8_t {
    std::string s = detail::as_string(v, where);
    if (s != "0" && s != "1" && s != "2")
      throw input_error(where + ": tape symbol must be \"0\", \"1\", or \"2\"");
    return static_cast<std::uint8_t>(s[0] - '0');
  };

  const Json& delta = detail::field(j, "delta", origin);
  if (!delta.is_array()) throw input_error(origin + ": 'delta' must be an array");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const Json& t = delta[i];
    std::string where = origin + ": delta[" + std::to_string(i) + "]";
    if (!t.is_array() || t.size() != 5)
      throw input_error(where + ": expected [from, read, to, write, dir]");
    AlternatingMachine::Step s;
    s.from = control(detail::as_string(t[0], where), where);
    s.read = symbol(t[1], where);
    s.to = control(detail::as_string(t[2], where), where);
    s.write = symbol(t[3], where);
    if (!t[4].is_number_integer())
      throw input_error(where + ": dir must be -1 or 1");
    s.dir = static_cast<std::int8_t>(t[4].get<int>());
    m.delta.push_back(s);
  }

  const Json& cells = detail::field(j, "cells", origin);
  if (!cells.is_number_unsigned() || cells.get<std::uint32_t>() == 0)
    throw input_error(origin + ": 'cells' must be a positive integer");
  inst.cells = cells.get<std::uint32_t>();
  inst.word = detail::as_string(detail::field(j, "word", origin), origin + ": word");

  m.ensure_well_formed();
  return inst;
}

inline MachineInstance load_machine(const std::string& path) {
  return parse_machine_text(detail::read_file(path), path);
}

// The knowledge arena as a game file: states named by their knowledge sets,
// blocks inherited from the source observations (empty blocks dropped), the
// objective carried over.
inline Json dump_subset_game(const SubsetGame& gk) {
  const GameStructure& g = *gk.source;
  Json j;
  j["states"] = Json::array();
  for (std::uint32_t i = 0; i < gk.num_states(); ++i)
    j["states"].push_back(gk.state_name(i));
  j["initial"] = gk.state_name(gk.initial);
  j["alphabet"] = Json::array();
  for (std::uint32_t a = 0; a < g.num_letters(); ++a)
    j["alphabet"].push_back(g.letter_name(a));
  j["transitions"] = Json::array();
  for (std::uint32_t i = 0; i < gk.num_states(); ++i)
    for (std::uint32_t a = 0; a < g.num_letters(); ++a)
      for (auto d : gk.successors(i, a))
        j["transitions"].push_back(Json::array(
            {gk.state_name(i), g.letter_name(a), gk.state_name(d)}));
  j["observations"] = Json::object();
  std::vector<bool> present(g.num_observations(), false);
  for (std::uint32_t o = 0; o < g.num_observations(); ++o) {
    Json block = Json::array();
    for (std::uint32_t i = 0; i < gk.num_states(); ++i)
      if (gk.obs_of[i] == o) block.push_back(gk.state_name(i));
    if (!block.empty()) {
      j["observations"][g.observation_name(o)] = block;
      present[o] = true;
    }
  }
  Json obj;
  obj["kind"] = objective_kind_name(g.objective().kind);
  if (g.objective().kind == Objective::Kind::Parity) {
    Json prio = Json::object();
    for (std::uint32_t o = 0; o < g.num_observations(); ++o)
      if (present[o]) prio[g.observation_name(o)] = g.objective().priority[o];
    obj["priority"] = prio;
  } else {
    Json t = Json::array();
    for (auto o : g.objective().target)
      if (present[o]) t.push_back(g.observation_name(o));
    obj["target"] = t;
  }
  j["objective"] = obj;
  return j;
}

inline Json dump_knowledge_game(const KnowledgeGame& h) {
  const GameStructure& g = *h.source;
  Json j;
  j["states"] = Json::array();
  for (std::uint32_t i = 0; i < h.num_states(); ++i)
    j["states"].push_back(h.state_name(i));
  j["initial"] = h.state_name(h.initial);
  j["alphabet"] = Json::array();
  for (std::uint32_t a = 0; a < g.num_letters(); ++a)
    j["alphabet"].push_back(g.letter_name(a));
  j["transitions"] = Json::array();
  for (std::uint32_t i = 0; i < h.num_states(); ++i)
    for (std::uint32_t a = 0; a < g.num_letters(); ++a)
      for (auto d : h.successors(i, a))
        j["transitions"].push_back(
            Json::array({h.state_name(i), g.letter_name(a), h.state_name(d)}));
  j["observations"] = Json::object();
  std::vector<bool> present(g.num_observations(), false);
  for (std::uint32_t o = 0; o < g.num_observations(); ++o) {
    Json block = Json::array();
    for (std::uint32_t i = 0; i < h.num_states(); ++i)
      if (h.obs_of[i] == o) block.push_back(h.state_name(i));
    if (!block.empty()) {
      j["observations"][g.observation_name(o)] = block;
      present[o] = true;
    }
  }
  Json obj;
  obj["kind"] = objective_kind_name(g.objective().kind);
  if (g.objective().kind == Objective::Kind::Parity) {
    Json prio = Json::object();
    for (std::uint32_t o = 0; o < g.num_observations(); ++o)
      if (present[o]) prio[g.observation_name(o)] = g.objective().priority[o];
    obj["priority"] = prio;
  } else {
    Json t = Json::array();
    for (auto o : g.objective().target)
      if (present[o]) t.push_back(g.observation_name(o));
    obj["target"] = t;
  }
  j["objective"] = obj;
  return j;
}

inline std::string dot_subset_game(const SubsetGame& gk) {
  const GameStructure& g = *gk.source;
  std::string out = "digraph knowledge {\n  rankdir=LR;\n";
  for (std::uint32_t i = 0; i < gk.num_states(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + gk.state_name(i) + "\\n" +
           g.observation_name(gk.obs_of[i]) + "\"];\n";
  for (std::uint32_t i = 0; i < gk.num_states(); ++i)
    for (std::uint32_t a = 0; a < g.num_letters(); ++a)
      for (auto d : gk.successors(i, a))
        out += "  n" + std::to_string(i) + " -> n" + std::to_string(d) +
               " [label=\"" + g.letter_name(a) + "\"];\n";
  out += "}\n";
  return out;
}

inline std::string dot_knowledge_game(const KnowledgeGame& h) {
  const GameStructure& g = *h.source;
  std::string out = "digraph pairs {\n  rankdir=LR;\n";
  for (std::size_t c = 0; c < h.class_members.size(); ++c) {
    out += "  subgraph cluster_" + std::to_string(c) + " {\n    style=dashed;\n";
    for (auto i : h.class_members[c])
      out += "    n" + std::to_string(i) + " [label=\"" + h.state_name(i) +
             "\"];\n";
    out += "  }\n";
  }
  for (std::uint32_t i = 0; i < h.num_states(); ++i)
    for (std::uint32_t a = 0; a < g.num_letters(); ++a)
      for (auto d : h.successors(i, a))
        out += "  n" + std::to_string(i) + " -> n" + std::to_string(d) +
               " [label=\"" + g.letter_name(a) + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace antik
