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
#include <string>
#include <vector>

#include "antik/almost_buchi.hh"
#include "antik/json_io.hh"
#include "antik/mucalc.hh"

namespace antik {

inline constexpr const char* kReportVersion = "1";

// Machine reports are deterministic for identical inputs and seeds; timing
// goes to the human summary on stderr only.

inline std::vector<std::string> sorted_names(const GameStructure& g,
                                             const StateSet& s) {
  std::vector<std::string> names;
  s.for_each([&](std::uint32_t st) { names.push_back(g.state_name(st)); });
  std::sort(names.begin(), names.end());
  return names;
}

inline std::string knowledge_key(const GameStructure& g, const StateSet& s) {
  std::string key;
  for (const auto& n : sorted_names(g, s)) {
    if (!key.empty()) key += ",";
    key += n;
  }
  return key;
}

// Sorted array of sorted state-name arrays.
inline Json antichain_to_json(const GameStructure& g, const Antichain& q) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : q.elements()) rows.push_back(sorted_names(g, s));
  std::sort(rows.begin(), rows.end(),
            [](const std::vector<std::string>& a,
               const std::vector<std::string>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  Json out = Json::array();
  for (const auto& row : rows) out.push_back(row);
  return out;
}

inline Json objective_to_json(const GameStructure& g, const Objective& obj) {
  Json j;
  j["kind"] = objective_kind_name(obj.kind);
  if (obj.kind == Objective::Kind::Parity) {
    Json prio = Json::object();
    for (std::uint32_t o = 0; o < g.num_observations(); ++o)
      prio[g.observation_name(o)] = obj.priority[o];
    j["priority"] = prio;
  } else {
    Json t = Json::array();
    for (auto o : obj.target) t.push_back(g.observation_name(o));
    j["target"] = t;
  }
  return j;
}

inline Json stats_to_json(const EvalStats& stats) {
  Json j;
  Json fixpoints = Json::array();
  for (const auto& f : stats.fixpoints) {
    Json e;
    e["var"] = f.var;
    e["kind"] = f.is_mu ? "mu" : "nu";
    e["iterations"] = f.iterations;
    fixpoints.push_back(e);
  }
  j["fixpoints"] = fixpoints;
  j["cpre_calls"] = stats.cpre_calls;
  j["max_value_size"] = stats.max_value_size;
  return j;
}

inline Json sure_report(const GameStructure& g, const SureSolveResult& res) {
  Json j;
  j["version"] = kReportVersion;
  j["mode"] = "sure";
  j["verdict"] = res.verdict;
  j["objective"] = objective_to_json(g, g.objective());
  j["formula"] = res.formula.to_string(g);
  j["winning"] = antichain_to_json(g, res.winning);
  if (res.strategy) {
    Json moves = Json::object();
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& s : res.strategy->winning.elements())
      rows.emplace_back(knowledge_key(g, s),
                        g.letter_name(res.strategy->resolve(g, s)));
    std::sort(rows.begin(), rows.end());
    for (auto& [k, v] : rows) moves[k] = v;
    j["strategy"] = moves;
  } else {
    j["strategy"] = nullptr;
  }
  j["stats"] = stats_to_json(res.stats);
  return j;
}

inline Json almost_report_explicit(const KnowledgeGame& h,
                                   const AlmostBuchiResult& res,
                                   bool with_ranks) {
  const GameStructure& g = *h.source;
  Json j;
  j["version"] = kReportVersion;
  j["mode"] = "almost-buchi";
  j["algorithm"] = "explicit";
  j["verdict"] = res.verdict;
  j["objective"] = objective_to_json(g, g.objective());
  j["arena_states"] = h.num_states();
  j["winning_states"] = res.winning.count();

  // Winning set as, per source state, the maximal winning knowledge sets.
  std::vector<std::pair<std::string, Json>> rows;
  for (std::uint32_t st = 0; st < g.num_states(); ++st) {
    Antichain max_sets;
    for (std::uint32_t q = 0; q < h.num_states(); ++q)
      if (res.winning.test(q) && h.states[q].location == st)
        max_sets.insert(h.knowledge(q));
    if (!max_sets.empty())
      rows.emplace_back(g.state_name(st), antichain_to_json(g, max_sets));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Json winning = Json::array();
  for (auto& [name, sets] : rows) {
    Json e;
    e["state"] = name;
    e["knowledge"] = sets;
    winning.push_back(e);
  }
  j["winning"] = winning;

  Json moves = Json::object();
  std::vector<std::pair<std::string, Json>> move_rows;
  for (const auto& [cls, letters] : res.strategy.moves) {
    Json arr = Json::array();
    letters.for_each([&](std::uint32_t a) { arr.push_back(g.letter_name(a)); });
    move_rows.emplace_back(
        knowledge_key(g, h.knowledge(h.class_members[cls][0])), arr);
  }
  std::sort(move_rows.begin(), move_rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, v] : move_rows) moves[k] = v;
  j["strategy"] = moves;

  if (with_ranks) {
    std::vector<std::pair<std::pair<std::uint32_t, std::string>, Json>> rrows;
    for (std::uint32_t q = 0; q < h.num_states(); ++q) {
      if (!res.winning.test(q)) continue;
      Json e;
      e["knowledge"] = sorted_names(g, h.knowledge(q));
      e["state"] = g.state_name(h.states[q].location);
      e["rank"] = res.rank[q];
      rrows.push_back({{res.rank[q], h.state_name(q)}, e});
    }
    std::sort(rrows.begin(), rrows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Json ranks = Json::array();
    for (auto& [k, v] : rrows) ranks.push_back(v);
    j["ranks"] = ranks;
  }

  Json iter;
  iter["outer_iterations"] = res.outer_iterations;
  iter["inner_iterations"] = res.inner_iterations;
  iter["max_rank"] = res.max_rank;
  j["stats"] = iter;
  return j;
}

inline Json almost_report_direct(const GameStructure& g,
                                 const DirectAlmostBuchiResult& res) {
  Json j;
  j["version"] = kReportVersion;
  j["mode"] = "almost-buchi";
  j["algorithm"] = "direct";
  j["verdict"] = res.verdict;
  j["objective"] = objective_to_json(g, g.objective());

  std::vector<std::pair<std::string, Json>> rows;
  for (std::uint32_t st = 0; st < g.num_states(); ++st) {
    const Antichain& sets = res.winning.per_location[st];
    if (sets.empty()) continue;
    rows.emplace_back(g.state_name(st), antichain_to_json(g, sets));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Json winning = Json::array();
  for (auto& [name, sets] : rows) {
    Json e;
    e["state"] = name;
    e["knowledge"] = sets;
    winning.push_back(e);
  }
  j["winning"] = winning;

  // Allowed letters for each distinct maximal knowledge set.
  Antichain classes;
  for (const auto& a : res.winning.per_location)
    for (const auto& s : a.elements()) classes.insert(s);
  std::vector<std::pair<std::string, Json>> move_rows;
  for (const auto& s : classes.elements()) {
    StateSet letters = direct_allow_class(g, s, res.winning);
    Json arr = Json::array();
    letters.for_each([&](std::uint32_t a) { arr.push_back(g.letter_name(a)); });
    move_rows.emplace_back(knowledge_key(g, s), arr);
  }
  std::sort(move_rows.begin(), move_rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Json moves = Json::object();
  for (auto& [k, v] : move_rows) moves[k] = v;
  j["strategy"] = moves;

  Json iter;
  iter["outer_iterations"] = res.outer_iterations;
  iter["inner_iterations"] = res.inner_iterations;
  j["stats"] = iter;
  return j;
}

inline Json validation_report_json(const GameStructure& g,
                                   const ValidationReport& rep) {
  Json j;
  j["version"] = kReportVersion;
  j["mode"] = "validate";
  j["valid"] = rep.ok();
  j["states"] = g.num_states();
  j["letters"] = g.num_letters();
  j["observations"] = g.num_observations();
  Json issues = Json::array();
  for (const auto& i : rep.issues) {
    Json e;
    e["rule"] = i.rule;
    e["message"] = i.message;
    issues.push_back(e);
  }
  j["issues"] = issues;
  return j;
}

}  // namespace antik
