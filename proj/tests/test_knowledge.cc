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

#include <algorithm>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "antik/knowledge.hh"
#include "antik/oracle.hh"
#include "test_helpers.hh"

using namespace antik;

namespace {

std::uint32_t gk_state(const SubsetGame& gk, const StateSet& s) {
  for (std::uint32_t i = 0; i < gk.num_states(); ++i)
    if (gk.knowledge(i) == s) return i;
  throw std::runtime_error("knowledge set not present");
}

std::uint32_t h_state(const KnowledgeGame& h, const StateSet& s,
                      std::uint32_t loc) {
  for (std::uint32_t i = 0; i < h.num_states(); ++i)
    if (h.knowledge(i) == s && h.states[i].location == loc) return i;
  throw std::runtime_error("pair state not present");
}

}  // namespace

TEST_CASE("reachable knowledge sets of the fork arena") {
  GameStructure g = test::fork_game();
  SetPool pool;
  SubsetGame gk = build_gk(g, pool);
  REQUIRE(gk.num_states() == 4);
  std::set<std::string> names;
  for (std::uint32_t i = 0; i < 4; ++i) names.insert(gk.state_name(i));
  CHECK(names == std::set<std::string>{"{l1}", "{l2,l2'}", "{l3,l3'}", "{l4}"});

  // From the middle block, both letters may reveal the restart or the goal.
  std::uint32_t mid = gk_state(gk, test::set_of(g, {"l3", "l3'"}));
  for (std::uint32_t a = 0; a < 2; ++a) {
    auto outs = gk.successors(mid, a);
    REQUIRE(outs.size() == 2);
    std::set<std::string> branch{gk.state_name(outs[0]), gk.state_name(outs[1])};
    CHECK(branch == std::set<std::string>{"{l1}", "{l4}"});
  }
}

TEST_CASE("perfect information keeps knowledge singleton") {
  GameStructure::Builder b;
  b.state("x").state("y").letter("a").initial("x");
  b.transition("x", "a", "y").transition("y", "a", "x");
  b.observation("x", {"x"}).observation("y", {"y"});
  b.objective(Objective::Kind::Reach, {"y"});
  GameStructure g = b.build();
  SetPool pool;
  SubsetGame gk = build_gk(g, pool);
  CHECK(gk.num_states() == g.num_states());
  for (std::uint32_t i = 0; i < gk.num_states(); ++i)
    CHECK(gk.knowledge(i).count() == 1);

  KnowledgeGame h = build_knw(g, pool);
  CHECK(h.num_states() == g.num_states());
  for (std::size_t c = 0; c < h.class_members.size(); ++c)
    CHECK(h.class_members[c].size() == 1);
}

TEST_CASE("reachable knowledge always sits inside one observation block") {
  SplitMix64 rng(404);
  for (int round = 0; round < 50; ++round) {
    GameStructure g = random_game(rng.next(), 6, 2, 3);
    SetPool pool;
    SubsetGame gk = build_gk(g, pool);
    for (std::uint32_t i = 0; i < gk.num_states(); ++i) {
      REQUIRE(gk.obs_of[i] != UINT32_MAX);
      CHECK(gk.knowledge(i).subset_of(g.observation_block(gk.obs_of[i])));
    }
    CHECK(gk.num_states() <= (1u << g.num_states()) - 1);
  }
}

TEST_CASE("the pair arena of the fork game matches the hand construction") {
  GameStructure g = test::fork_game();
  SetPool pool;
  KnowledgeGame h = build_knw(g, pool);
  REQUIRE(h.num_states() == 6);

  StateSet k1 = test::set_of(g, {"l1"});
  StateSet k2 = test::set_of(g, {"l2", "l2'"});
  StateSet k3 = test::set_of(g, {"l3", "l3'"});
  StateSet k4 = test::set_of(g, {"l4"});
  std::uint32_t q_l2 = h_state(h, k2, test::state_id(g, "l2"));
  std::uint32_t q_l3p = h_state(h, k3, test::state_id(g, "l3'"));
  std::uint32_t q_l3 = h_state(h, k3, test::state_id(g, "l3"));
  std::uint32_t q_l4 = h_state(h, k4, test::state_id(g, "l4"));

  std::uint32_t b = test::letter_id(g, "b");
  auto outs = h.successors(q_l2, b);
  REQUIRE(outs.size() == 1);
  CHECK(outs[0] == q_l3p);  // the inner corridor swaps under b

  for (std::uint32_t a = 0; a < 2; ++a) {
    auto from_l3p = h.successors(q_l3p, a);
    REQUIRE(from_l3p.size() == 1);
    CHECK(from_l3p[0] == q_l4);
    auto from_l3 = h.successors(q_l3, a);
    REQUIRE(from_l3.size() == 1);
    CHECK(from_l3[0] == h_state(h, k1, test::state_id(g, "l1")));
  }

  // Initial class is a singleton.
  CHECK(h.class_members[h.class_of[h.initial]].size() == 1);

  // Pairs sharing a knowledge set share a class.
  CHECK(h.class_of[q_l3] == h.class_of[q_l3p]);
  CHECK(h.class_of[q_l3] != h.class_of[q_l2]);
}

TEST_CASE("pair-arena size is bounded by total knowledge membership") {
  SplitMix64 rng(808);
  for (int round = 0; round < 30; ++round) {
    GameStructure g = random_game(rng.next(), 6, 2, 3);
    SetPool pool;
    SubsetGame gk = build_gk(g, pool);
    KnowledgeGame h = build_knw(g, pool);
    std::size_t membership = 0;
    for (std::uint32_t i = 0; i < gk.num_states(); ++i)
      membership += gk.knowledge(i).count();
    CHECK(h.num_states() == membership);
  }
}

TEST_CASE("every transition is matched across its target class") {
  SplitMix64 rng(909);
  for (int round = 0; round < 40; ++round) {
    GameStructure g = random_game(rng.next(), 6, 2, 3);
    SetPool pool;
    KnowledgeGame h = build_knw(g, pool);
    for (std::uint32_t q1 = 0; q1 < h.num_states(); ++q1)
      for (std::uint32_t a = 0; a < h.num_letters(); ++a)
        for (auto q1p : h.successors(q1, a))
          for (auto q2p : h.class_members[h.class_of[q1p]]) {
            bool found = false;
            for (auto q2 : h.class_members[h.class_of[q1]]) {
              const auto& outs = h.successors(q2, a);
              if (std::find(outs.begin(), outs.end(), q2p) != outs.end())
                found = true;
            }
            CHECK(found);
          }
  }
}

TEST_CASE("at most one knowledge successor per reached location") {
  SplitMix64 rng(1010);
  for (int round = 0; round < 40; ++round) {
    GameStructure g = random_game(rng.next(), 6, 2, 3);
    SetPool pool;
    KnowledgeGame h = build_knw(g, pool);
    for (std::uint32_t q = 0; q < h.num_states(); ++q)
      for (std::uint32_t a = 0; a < h.num_letters(); ++a) {
        std::set<std::uint32_t> locs;
        std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (auto j : h.successors(q, a)) {
          locs.insert(h.states[j].location);
          pairs.insert({h.states[j].location, h.states[j].set_id});
        }
        CHECK(locs.size() == pairs.size());
      }
  }
}

TEST_CASE("play prefixes lift to pair-arena prefixes") {
  GameStructure g = test::fork_game();
  SetPool pool;
  KnowledgeGame h = build_knw(g, pool);

  SECTION("the empty history maps to the initial pair") {
    Prefix rho{{test::state_id(g, "l1")}, {}};
    auto lifted = map_prefix(h, rho);
    REQUIRE(lifted.size() == 1);
    CHECK(lifted[0] == h.initial);
  }

  SECTION("a three-step history tracks knowledge exactly") {
    Prefix rho{{test::state_id(g, "l1"), test::state_id(g, "l2"),
                test::state_id(g, "l3'")},
               {test::letter_id(g, "a"), test::letter_id(g, "b")}};
    auto lifted = map_prefix(h, rho);
    REQUIRE(lifted.size() == 3);
    CHECK(h.state_name(lifted[0]) == "{l1}|l1");
    CHECK(h.state_name(lifted[1]) == "{l2,l2'}|l2");
    CHECK(h.state_name(lifted[2]) == "{l3,l3'}|l3'");
  }

  SECTION("observation-equivalent histories land in the same classes") {
    Prefix rho{{test::state_id(g, "l1"), test::state_id(g, "l2"),
                test::state_id(g, "l3'")},
               {test::letter_id(g, "a"), test::letter_id(g, "b")}};
    Prefix rho2{{test::state_id(g, "l1"), test::state_id(g, "l2'"),
                 test::state_id(g, "l3")},
                {test::letter_id(g, "a"), test::letter_id(g, "b")}};
    auto lifted = map_prefix(h, rho);
    auto lifted2 = map_prefix(h, rho2);
    REQUIRE(lifted.size() == lifted2.size());
    for (std::size_t i = 0; i < lifted.size(); ++i)
      CHECK(h.class_of[lifted[i]] == h.class_of[lifted2[i]]);
  }

  SECTION("illegal histories are rejected") {
    Prefix bad{{test::state_id(g, "l1"), test::state_id(g, "l4")},
               {test::letter_id(g, "a")}};
    CHECK_THROWS_AS(map_prefix(h, bad), input_error);
    Prefix wrong_start{{test::state_id(g, "l2")}, {}};
    CHECK_THROWS_AS(map_prefix(h, wrong_start), input_error);
  }
}
