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

#include "antik/mucalc.hh"
#include "antik/oracle.hh"
#include "test_helpers.hh"

using namespace antik;

TEST_CASE("formula parsing and printing") {
  GameStructure g = test::fork_game();
  Formula f = parse_formula("mu X . or(atom o4, pre(X))", g);
  CHECK(f.to_string(g) == "mu X . or(atom o4, pre(X))");
  CHECK(f.closed());

  Formula open = parse_formula("and(atom o1, Y)", g);
  CHECK(!open.closed());
  CHECK(open.free_variables() == std::set<std::string>{"Y"});

  CHECK_THROWS_AS(parse_formula("mu X or(X, X)", g), input_error);
  CHECK_THROWS_AS(parse_formula("atom nosuch", g), input_error);
  CHECK_THROWS_AS(parse_formula("pre(atom o1) trailing", g), input_error);
}

TEST_CASE("controllable predecessors over knowledge sets") {
  GameStructure g = test::fork_game();
  SetPool pool;
  SubsetGame gk = build_gk(g, pool);

  CHECK(cpre_subset(gk, StateSet(gk.num_states())).empty());
  CHECK(cpre_subset(gk, StateSet::full(gk.num_states())) ==
        StateSet::full(gk.num_states()));

  // Only the absorbing goal confines into {goal}: the middle block reaches
  // both the restart and the goal under either letter.
  StateSet goal_only(gk.num_states());
  for (std::uint32_t i = 0; i < gk.num_states(); ++i)
    if (gk.state_name(i) == "{l4}") goal_only.set(i);
  StateSet pre = cpre_subset(gk, goal_only);
  CHECK(pre == goal_only);
}

TEST_CASE("antichain predecessor endpoints") {
  GameStructure g = test::fork_game();
  CHECK(cpre_antichain(g, Antichain::bottom()).empty());
  CHECK(cpre_antichain(g, Antichain::top(g.num_states())) ==
        Antichain::top(g.num_states()));
}

TEST_CASE("antichain predecessor equals the full-powerset predecessor") {
  SplitMix64 rng(606);
  for (int round = 0; round < 60; ++round) {
    GameStructure g = random_game(rng.next(), 2 + rng.bounded(5), 1 + rng.bounded(3),
                                  1 + rng.bounded(3));
    SetPool pool;
    SubsetGame full = build_gk_full(g, pool);
    Antichain q = test::random_antichain(rng, g.num_states());

    // Downward closure of q as a set over the full arena, then cpre there.
    StateSet dq(full.num_states());
    for (std::uint32_t i = 0; i < full.num_states(); ++i)
      if (q.dominates(full.knowledge(i))) dq.set(i);
    StateSet pre = cpre_subset(full, dq);
    Antichain expected;
    pre.for_each([&](std::uint32_t i) { expected.insert(full.knowledge(i)); });

    CHECK(cpre_antichain(g, q) == expected);
  }
}

TEST_CASE("both predecessors are monotone") {
  SplitMix64 rng(707);
  for (int round = 0; round < 40; ++round) {
    GameStructure g = random_game(rng.next(), 5, 2, 2);
    Antichain q1 = test::random_antichain(rng, g.num_states());
    Antichain q2 = join(q1, test::random_antichain(rng, g.num_states()));
    CHECK(cpre_antichain(g, q1).leq(cpre_antichain(g, q2)));

    SetPool pool;
    SubsetGame gk = build_gk(g, pool);
    StateSet u1(gk.num_states());
    for (std::uint32_t i = 0; i < gk.num_states(); ++i)
      if (rng.bounded(2)) u1.set(i);
    StateSet u2 = u1;
    for (std::uint32_t i = 0; i < gk.num_states(); ++i)
      if (rng.bounded(2)) u2.set(i);
    CHECK(cpre_subset(gk, u1).subset_of(cpre_subset(gk, u2)));
  }
}

TEST_CASE("atoms and fixed-point bases over the subset lattice") {
  GameStructure g = test::fork_game();
  SetPool pool;
  SubsetGame gk = build_gk(g, pool);

  StateSet atom4 = eval_subset(gk, Formula::atom(test::obs_id(g, "o4")));
  REQUIRE(atom4.count() == 1);
  CHECK(gk.state_name(*atom4.members().begin()) == "{l4}");

  CHECK(eval_subset(gk, parse_formula("nu X . X", g)) ==
        StateSet::full(gk.num_states()));
  CHECK(eval_subset(gk, parse_formula("mu X . X", g)).empty());
}

TEST_CASE("the fork game is not sure-winnable for reachability") {
  GameStructure g = test::fork_game();
  SetPool pool;
  SubsetGame gk = build_gk(g, pool);
  Formula phi = parse_formula("mu X . or(atom o4, pre(X))", g);

  StateSet subset_value = eval_subset(gk, phi);
  CHECK(!subset_value.test(gk.initial));

  Antichain antichain_value = eval_antichain(g, phi);
  CHECK(eval_antichain(g, Formula::atom(test::obs_id(g, "o4"))) ==
        Antichain::singleton(test::set_of(g, {"l4"})));
  CHECK(!antichain_value.dominates(test::set_of(g, {"l1"})));
}

TEST_CASE("unbound variables are reported") {
  GameStructure g = test::fork_game();
  Formula open = parse_formula("pre(Z)", g);
  CHECK_THROWS_AS(eval_antichain(g, open), input_error);
  AntichainValuation val{{"Z", Antichain::top(g.num_states())}};
  CHECK(eval_antichain(g, open, val) == Antichain::top(g.num_states()));
}

TEST_CASE("characteristic formulas have the documented shape") {
  GameStructure g = test::fork_game();
  Objective reach{Objective::Kind::Reach, {test::obs_id(g, "o4")}, {}};
  CHECK(characteristic_formula(g, reach).to_string(g) ==
        "mu X . or(atom o4, pre(X))");

  Objective safe{Objective::Kind::Safe, {test::obs_id(g, "o1")}, {}};
  CHECK(characteristic_formula(g, safe).to_string(g) ==
        "nu X . and(atom o1, pre(X))");

  Objective buchi{Objective::Kind::Buchi, {test::obs_id(g, "o4")}, {}};
  CHECK(characteristic_formula(g, buchi).to_string(g) ==
        "nu Y . mu X . or(pre(X), and(atom o4, pre(Y)))");

  Objective cobuchi{Objective::Kind::CoBuchi, {test::obs_id(g, "o4")}, {}};
  CHECK(characteristic_formula(g, cobuchi).to_string(g) ==
        "mu Y . nu X . or(and(atom o4, pre(X)), pre(Y))");
}

TEST_CASE("uniform priority zero wins everything") {
  GameStructure g = test::fork_game();
  Objective parity{Objective::Kind::Parity, {}, {0, 0, 0, 0}};
  SureSolveResult res = solve_sure(g, parity);
  CHECK(res.verdict);
  // Every knowledge set inside a block is winning, exactly as for safety
  // over all observations.
  Objective safe_all{Objective::Kind::Safe, {0, 1, 2, 3}, {}};
  CHECK(res.winning == solve_sure(g, safe_all).winning);

  SetPool pool;
  SubsetGame gk = build_gk(g, pool);
  CHECK(eval_subset(gk, characteristic_formula(g, parity)) ==
        StateSet::full(gk.num_states()));
}

TEST_CASE("subset evaluation preserves downward closure") {
  SplitMix64 rng(111);
  for (int round = 0; round < 30; ++round) {
    GameStructure g = random_game(rng.next(), 5, 2, 2);
    SetPool pool;
    SubsetGame full = build_gk_full(g, pool);

    // A downward-closed valuation for one free variable.
    Antichain seed = test::random_antichain(rng, g.num_states());
    StateSet dv(full.num_states());
    for (std::uint32_t i = 0; i < full.num_states(); ++i)
      if (seed.dominates(full.knowledge(i))) dv.set(i);

    Formula phi = Formula::mk_or(
        random_formula(rng, g, 3, 1),
        Formula::mk_and(Formula::pre(Formula::var("free")),
                        random_formula(rng, g, 2, 1)));
    StateSet value = eval_subset(full, phi, {{"free", dv}});

    for (std::uint32_t i = 0; i < full.num_states(); ++i) {
      if (!value.test(i)) continue;
      for (std::uint32_t j = 0; j < full.num_states(); ++j)
        if (full.knowledge(j).subset_of(full.knowledge(i)))
          CHECK(value.test(j));
    }
  }
}

TEST_CASE("maximal subset semantics equals antichain semantics") {
  SplitMix64 rng(222);
  for (int round = 0; round < 40; ++round) {
    GameStructure g = random_game(rng.next(), 2 + rng.bounded(5),
                                  1 + rng.bounded(3), 1 + rng.bounded(3));
    SetPool pool;
    SubsetGame full = build_gk_full(g, pool);
    for (int j = 0; j < 5; ++j) {
      Formula phi = random_formula(rng, g, 4, 2);
      StateSet value = eval_subset(full, phi);
      Antichain maximal;
      value.for_each([&](std::uint32_t i) { maximal.insert(full.knowledge(i)); });
      CHECK(maximal == eval_antichain(g, phi));
    }
  }
}

TEST_CASE("correspondence also holds under valuations") {
  SplitMix64 rng(333);
  for (int round = 0; round < 25; ++round) {
    GameStructure g = random_game(rng.next(), 5, 2, 2);
    SetPool pool;
    SubsetGame full = build_gk_full(g, pool);

    Antichain seed = test::random_antichain(rng, g.num_states());
    StateSet dv(full.num_states());
    for (std::uint32_t i = 0; i < full.num_states(); ++i)
      if (seed.dominates(full.knowledge(i))) dv.set(i);

    Formula phi =
        Formula::mk_or(Formula::pre(Formula::var("v")),
                       Formula::mu("X", Formula::mk_or(Formula::var("v"),
                                                       Formula::pre(Formula::var("X")))));
    StateSet value = eval_subset(full, phi, {{"v", dv}});
    Antichain maximal;
    value.for_each([&](std::uint32_t i) { maximal.insert(full.knowledge(i)); });
    CHECK(maximal == eval_antichain(g, phi, {{"v", seed}}));
  }
}

TEST_CASE("solve_sure on the two reference arenas") {
  GameStructure fork = test::fork_game();
  SureSolveResult r1 = solve_sure(fork, fork.objective());
  CHECK(!r1.verdict);

  GameStructure corridor = test::corridor_game();
  SureSolveResult r2 = solve_sure(corridor, corridor.objective());
  CHECK(!r2.verdict);

  Objective safe_all{Objective::Kind::Safe, {0, 1, 2, 3}, {}};
  SureSolveResult r3 = solve_sure(fork, safe_all);
  CHECK(r3.verdict);
  CHECK(r3.winning == Antichain::top(fork.num_states()));
}

TEST_CASE("the dedicated solve loops match the generic evaluator") {
  SplitMix64 rng(444);
  const Objective::Kind kinds[] = {Objective::Kind::Reach,
                                   Objective::Kind::Safe,
                                   Objective::Kind::Buchi};
  for (int round = 0; round < 40; ++round) {
    GameStructure g = random_game(rng.next(), 6, 2, 3);
    for (auto kind : kinds) {
      Objective obj = random_objective(rng, g, kind);
      SureSolveResult res = solve_sure(g, obj);
      CHECK(res.winning == eval_antichain(g, characteristic_formula(g, obj)));
    }
  }
}

TEST_CASE("iteration counts stay within the lattice height") {
  SplitMix64 rng(555);
  for (int round = 0; round < 20; ++round) {
    GameStructure g = random_game(rng.next(), 5, 2, 2);
    SetPool pool;
    SubsetGame gk = build_gk(g, pool);
    EvalStats stats;
    eval_subset(gk, characteristic_formula(g, g.objective()), {}, &stats);
    for (const auto& f : stats.fixpoints)
      CHECK(f.iterations <= gk.num_states() + 2);
  }
}

TEST_CASE("extracted strategies win structurally") {
  SplitMix64 rng(666);
  int reach_checked = 0, safe_checked = 0, buchi_checked = 0;
  for (int round = 0; round < 120; ++round) {
    GameStructure g = random_game(rng.next(), 6, 2, 3);

    Objective reach = random_objective(rng, g, Objective::Kind::Reach);
    SureSolveResult r = solve_sure(g, reach);
    if (r.verdict) {
      ++reach_checked;
      test::StrategyGraph sg = test::strategy_graph(g, *r.strategy);
      CHECK(test::every_play_reaches_target(sg));
    }

    Objective safe = random_objective(rng, g, Objective::Kind::Safe);
    SureSolveResult s = solve_sure(g, safe);
    if (s.verdict) {
      ++safe_checked;
      test::StrategyGraph sg = test::strategy_graph(g, *s.strategy);
      CHECK(test::every_node_in_target(sg));
    }

    Objective buchi = random_objective(rng, g, Objective::Kind::Buchi);
    SureSolveResult b = solve_sure(g, buchi);
    if (b.verdict) {
      ++buchi_checked;
      test::StrategyGraph sg = test::strategy_graph(g, *b.strategy);
      CHECK(test::every_play_revisits_target(sg));
    }
  }
  // The sweep must actually exercise all three extractors.
  CHECK(reach_checked > 10);
  CHECK(safe_checked > 10);
  CHECK(buchi_checked > 10);
}
