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

#include <catch2/catch_amalgamated.hpp>

#include "antik/json_io.hh"
#include "antik/oracle.hh"
#include "test_helpers.hh"

using namespace antik;

TEST_CASE("absorbing targets are reach-winning") {
  GameStructure::Builder b;
  b.state("s").state("t").letter("a").initial("s");
  b.transition("s", "a", "t").transition("t", "a", "t");
  b.observation("s", {"s"}).observation("t", {"t"});
  b.objective(Objective::Kind::Reach, {"t"});
  GameStructure g = b.build();
  PerfectArena arena = arena_from_game(g);
  PerfectSolution sol = solve_perfect(arena, g.objective());
  CHECK(sol.winning == StateSet::full(2));
}

TEST_CASE("the fork arena's knowledge game is not reach-winnable") {
  GameStructure g = test::fork_game();
  SetPool pool;
  SubsetGame gk = build_gk(g, pool);
  PerfectArena arena = arena_from_subset_game(gk);
  PerfectSolution sol = solve_perfect(arena, g.objective());
  CHECK(!sol.winning.test(gk.initial));

  // The spoiler stays outside the winning region, which contains no target,
  // so the objective is falsified forever.
  for (std::uint32_t s = 0; s < arena.n_states; ++s) {
    if (sol.winning.test(s)) continue;
    CHECK(arena.obs_of[s] != test::obs_id(g, "o4"));
    for (std::uint32_t l = 0; l < arena.n_letters; ++l) {
      std::int32_t pick = sol.spoiler[s * arena.n_letters + l];
      REQUIRE(pick >= 0);
      CHECK(!sol.winning.test(static_cast<std::uint32_t>(pick)));
    }
  }
}

TEST_CASE("oracle solutions agree with formula evaluation on every kind") {
  SplitMix64 rng(1234);
  const Objective::Kind kinds[] = {
      Objective::Kind::Reach, Objective::Kind::Safe, Objective::Kind::Buchi,
      Objective::Kind::CoBuchi, Objective::Kind::Parity};
  for (int round = 0; round < 60; ++round) {
    GameStructure g = random_game(rng.next(), 2 + rng.bounded(5),
                                  1 + rng.bounded(3), 1 + rng.bounded(3));
    SetPool pool;
    SubsetGame gk = build_gk(g, pool);
    PerfectArena arena = arena_from_subset_game(gk);
    for (auto kind : kinds) {
      Objective obj = random_objective(rng, g, kind);
      PerfectSolution sol = solve_perfect(arena, obj);
      StateSet by_formula = eval_subset(gk, characteristic_formula(g, obj));
      CHECK(sol.winning == by_formula);
    }
  }
}

TEST_CASE("oracle witnesses force the objective") {
  SplitMix64 rng(5678);
  int reach_rounds = 0, safe_rounds = 0;
  for (int round = 0; round < 60; ++round) {
    GameStructure g = random_game(rng.next(), 6, 2, 3);
    SetPool pool;
    SubsetGame gk = build_gk(g, pool);
    PerfectArena arena = arena_from_subset_game(gk);

    Objective reach = random_objective(rng, g, Objective::Kind::Reach);
    PerfectSolution sol = solve_perfect(arena, reach);
    StateSet targets(arena.n_states);
    for (std::uint32_t s = 0; s < arena.n_states; ++s)
      for (auto o : reach.target)
        if (arena.obs_of[s] == o) targets.set(s);

    // Following the witness letter strictly descends a rank function until
    // the target: check by walking every winning state to the target.
    sol.winning.for_each([&](std::uint32_t s) {
      ++reach_rounds;
      std::uint32_t cur = s;
      std::size_t fuel = arena.n_states + 1;
      StateSet seen(arena.n_states);
      while (!targets.test(cur)) {
        REQUIRE(fuel-- > 0);
        REQUIRE(!seen.test(cur));
        seen.set(cur);
        std::int32_t l = sol.strategy[cur];
        REQUIRE(l >= 0);
        // The adversary picks the worst successor; all must stay winning,
        // and at least one path must shorten, so walk the maximum-rank one.
        std::uint32_t next = cur;
        bool moved = false;
        for (auto j : arena.successors(cur, static_cast<std::uint32_t>(l))) {
          REQUIRE(sol.winning.test(j));
          if (!moved || !targets.test(j)) {
            next = j;
            moved = true;
          }
        }
        cur = next;
      }
    });

    Objective safe = random_objective(rng, g, Objective::Kind::Safe);
    PerfectSolution ssol = solve_perfect(arena, safe);
    StateSet safe_states(arena.n_states);
    for (std::uint32_t s = 0; s < arena.n_states; ++s)
      for (auto o : safe.target)
        if (arena.obs_of[s] == o) safe_states.set(s);
    ssol.winning.for_each([&](std::uint32_t s) {
      ++safe_rounds;
      CHECK(safe_states.test(s));
      std::int32_t l = ssol.strategy[s];
      REQUIRE(l >= 0);
      for (auto j : arena.successors(s, static_cast<std::uint32_t>(l)))
        CHECK(ssol.winning.test(j));
    });
  }
  CHECK(reach_rounds > 0);
  CHECK(safe_rounds > 0);
}

TEST_CASE("full-powerset semantics") {
  GameStructure g = test::fork_game();

  SECTION("atoms pick out every nonempty subset of their block") {
    FullSemantics fs =
        eval_subset_full(g, Formula::atom(test::obs_id(g, "o3")));
    std::size_t hits = 0;
    fs.value.for_each([&](std::uint32_t i) {
      CHECK(fs.arena.knowledge(i).subset_of(test::set_of(g, {"l3", "l3'"})));
      ++hits;
    });
    CHECK(hits == 3);  // {l3}, {l3'}, {l3,l3'}
  }

  SECTION("closed formulas yield downward-closed families") {
    SplitMix64 rng(31);
    for (int round = 0; round < 20; ++round) {
      Formula phi = random_formula(rng, g, 4, 2);
      FullSemantics fs = eval_subset_full(g, phi);
      for (std::uint32_t i = 0; i < fs.arena.num_states(); ++i) {
        if (!fs.value.test(i)) continue;
        for (std::uint32_t j = 0; j < fs.arena.num_states(); ++j)
          if (fs.arena.knowledge(j).subset_of(fs.arena.knowledge(i)))
            CHECK(fs.value.test(j));
      }
      CHECK(fs.maximal_value() == eval_antichain(g, phi));
    }
  }

  SECTION("the ceiling is enforced") {
    GameStructure big = random_game(7, 13, 2, 3);
    CHECK_THROWS_AS(eval_subset_full(big, Formula::falsum()), input_error);
    CHECK_NOTHROW(eval_subset_full(big, Formula::falsum(), {}, 13));
  }
}

TEST_CASE("random games are valid and reproducible") {
  for (std::uint64_t seed : {1ull, 99ull, 31415ull}) {
    GameStructure g1 = random_game(seed, 6, 3, 3);
    CHECK(g1.validate().ok());
    GameStructure g2 = random_game(seed, 6, 3, 3);
    CHECK(dump_game(g1) == dump_game(g2));
  }
  CHECK(dump_game(random_game(1, 6, 3, 3)) != dump_game(random_game(2, 6, 3, 3)));
}

TEST_CASE("simulation on the fork arena stays in the winning set") {
  GameStructure g = test::fork_game();
  SetPool pool;
  KnowledgeGame h = build_knw(g, pool);
  StateSet targets = h.target_pairs({test::obs_id(g, "o4")});
  AlmostBuchiResult res = solve_almost_buchi(h, targets);
  REQUIRE(res.verdict);

  SimulationStats stats =
      simulate(h, res.strategy, targets, res.winning, 2026, 200, 10000);
  CHECK(stats.trials_with_exit == 0);
  CHECK(stats.fraction_with_at_least(5) >= 0.99);

  // Identical seeds give identical trajectories.
  SimulationStats again =
      simulate(h, res.strategy, targets, res.winning, 2026, 200, 10000);
  CHECK(stats.target_visits == again.target_visits);

  // Corrupting the strategy with a disallowed letter is detected as an exit
  // from the winning set.
  GameStructure trap = test::corridor_game();
  SetPool pool2;
  KnowledgeGame h2 = build_knw(trap, pool2);
  StateSet targets2 = h2.target_pairs(trap.objective().target);
  AlmostBuchiResult res2 = solve_almost_buchi(h2, targets2);
  REQUIRE(res2.verdict);
  PositionalStrategy corrupted = res2.strategy;
  for (auto& [cls, letters] : corrupted.moves)
    letters = StateSet::full(h2.num_letters());
  SimulationStats bad =
      simulate(h2, corrupted, targets2, res2.winning, 7, 200, 2000);
  CHECK(bad.trials_with_exit > 0);
}

TEST_CASE("the three sweeps pass at reduced size") {
  CHECK(sweep_correspondence(12, 60, 10).ok());
  CHECK(sweep_sure_oracle(13, 60).ok());
  CHECK(sweep_almost_agreement(14, 60).ok());
}
