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

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "antik/almost_buchi.hh"
#include "antik/atm.hh"
#include "antik/game.hh"
#include "antik/json_io.hh"
#include "antik/knowledge.hh"
#include "antik/mucalc.hh"
#include "antik/oracle.hh"
#include "antik/report.hh"

namespace {

using antik::Json;

// Exit codes: 0 verdict true / pass, 1 verdict false, 2 input error,
// 3 broken internal invariant.
constexpr int kTrue = 0, kFalse = 1, kInputError = 2, kInternalError = 3;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

int cmd_validate(const std::string& file) {
  antik::GameStructure g = antik::load_game(file);
  antik::ValidationReport rep = g.validate();
  emit(antik::validation_report_json(g, rep));
  std::cerr << file << ": " << (rep.ok() ? "valid" : "invalid") << " ("
            << rep.issues.size() << " issue(s))\n";
  return rep.ok() ? kTrue : kFalse;
}

int cmd_solve_sure(const std::string& file, bool use_explicit, bool witness) {
  antik::GameStructure g = antik::load_game(file);
  g.ensure_valid();
  Timer timer;

  if (use_explicit) {
    antik::SetPool pool;
    antik::SubsetGame gk = antik::build_gk(g, pool);
    antik::EvalStats stats;
    antik::Formula phi = antik::characteristic_formula(g, g.objective());
    antik::StateSet value = antik::eval_subset(gk, phi, {}, &stats);
    bool verdict = value.test(gk.initial);

    antik::Antichain maximal;
    value.for_each([&](std::uint32_t i) { maximal.insert(gk.knowledge(i)); });
    Json j;
    j["version"] = antik::kReportVersion;
    j["mode"] = "sure";
    j["algorithm"] = "explicit-subset";
    j["verdict"] = verdict;
    j["objective"] = antik::objective_to_json(g, g.objective());
    j["formula"] = phi.to_string(g);
    j["arena_states"] = gk.num_states();
    j["winning"] = antik::antichain_to_json(g, maximal);
    j["strategy"] = nullptr;
    j["stats"] = antik::stats_to_json(stats);
    emit(j);
    std::cerr << file << ": sure " << (verdict ? "winning" : "not winning")
              << " [explicit, " << gk.num_states() << " knowledge states, "
              << timer.ms() << " ms]\n";
    return verdict ? kTrue : kFalse;
  }

  antik::SureSolveResult res = antik::solve_sure(g, g.objective());
  Json j = antik::sure_report(g, res);
  if (witness && !res.strategy) {
    // Positional witness over the knowledge arena from the brute-force
    // solver; regions stay symbolic.
    antik::SetPool pool;
    antik::SubsetGame gk = antik::build_gk(g, pool);
    antik::PerfectArena arena = antik::arena_from_subset_game(gk);
    antik::PerfectSolution ref = antik::solve_perfect(arena, g.objective());
    antik::check_internal(ref.winning.test(gk.initial) == res.verdict,
                          "oracle witness disagrees with symbolic verdict");
    Json moves = Json::object();
    std::vector<std::pair<std::string, std::string>> rows;
    ref.winning.for_each([&](std::uint32_t i) {
      rows.emplace_back(antik::knowledge_key(g, gk.knowledge(i)),
                        g.letter_name(ref.strategy[i]));
    });
    std::sort(rows.begin(), rows.end());
    for (auto& [k, v] : rows) moves[k] = v;
    j["strategy"] = moves;
    j["strategy_source"] = "oracle";
  }
  emit(j);
  std::cerr << file << ": sure " << (res.verdict ? "winning" : "not winning")
            << " [antichain, " << timer.ms() << " ms]\n";
  return res.verdict ? kTrue : kFalse;
}

int cmd_solve_almost(const std::string& file, bool ranks, bool direct) {
  antik::GameStructure g = antik::load_game(file);
  g.ensure_valid();
  const antik::Objective& obj = g.objective();

  switch (obj.kind) {
    case antik::Objective::Kind::Buchi:
      break;
    case antik::Objective::Kind::Reach:
      // Repeated visits to an absorbing target are equivalent to one visit.
      g = g.with_absorbing_observations(obj.target);
      g.ensure_valid();
      break;
    case antik::Objective::Kind::Safe:
      throw antik::input_error(
          "almost-sure safety coincides with sure winning; use 'solve sure'");
    case antik::Objective::Kind::CoBuchi:
    case antik::Objective::Kind::Parity:
      throw antik::input_error(
          "almost-sure solving is open for this objective kind; supported: "
          "buchi (and reach as a special case)");
  }

  Timer timer;
  if (direct) {
    antik::DirectAlmostBuchiResult res =
        antik::solve_almost_buchi_direct(g, g.objective().target);
    emit(antik::almost_report_direct(g, res));
    std::cerr << file << ": almost-sure "
              << (res.verdict ? "winning" : "not winning") << " [direct, "
              << timer.ms() << " ms]\n";
    return res.verdict ? kTrue : kFalse;
  }

  antik::SetPool pool;
  antik::KnowledgeGame h = antik::build_knw(g, pool);
  antik::AlmostBuchiResult res =
      antik::solve_almost_buchi(h, h.target_pairs(g.objective().target));
  emit(antik::almost_report_explicit(h, res, ranks));
  std::cerr << file << ": almost-sure "
            << (res.verdict ? "winning" : "not winning") << " [explicit, "
            << h.num_states() << " pair states, " << timer.ms() << " ms]\n";
  return res.verdict ? kTrue : kFalse;
}

int cmd_construct(const std::string& file, bool knw, bool dot) {
  antik::GameStructure g = antik::load_game(file);
  g.ensure_valid();
  antik::SetPool pool;
  if (knw) {
    antik::KnowledgeGame h = antik::build_knw(g, pool);
    if (dot)
      std::cout << antik::dot_knowledge_game(h);
    else
      emit(antik::dump_knowledge_game(h));
    std::cerr << file << ": pair arena with " << h.num_states()
              << " states in " << h.class_members.size() << " classes\n";
  } else {
    antik::SubsetGame gk = antik::build_gk(g, pool);
    if (dot)
      std::cout << antik::dot_subset_game(gk);
    else
      emit(antik::dump_subset_game(gk));
    std::cerr << file << ": knowledge arena with " << gk.num_states()
              << " states\n";
  }
  return kTrue;
}

int cmd_eval(const std::string& file, const std::string& formula_text,
             const std::string& lattice) {
  antik::GameStructure g = antik::load_game(file);
  g.ensure_valid();
  antik::Formula phi = antik::parse_formula(formula_text, g);
  if (!phi.closed())
    throw antik::input_error("eval requires a closed formula");

  Json j;
  j["version"] = antik::kReportVersion;
  j["mode"] = "eval";
  j["formula"] = phi.to_string(g);
  j["lattice"] = lattice;
  bool verdict = false;
  antik::EvalStats stats;
  if (lattice == "antichain") {
    antik::Antichain value = antik::eval_antichain(g, phi, {}, &stats);
    antik::StateSet init(g.num_states());
    init.set(g.initial());
    verdict = value.dominates(init);
    j["value"] = antik::antichain_to_json(g, value);
  } else if (lattice == "subset") {
    antik::SetPool pool;
    antik::SubsetGame gk = antik::build_gk(g, pool);
    antik::StateSet value = antik::eval_subset(gk, phi, {}, &stats);
    verdict = value.test(gk.initial);
    antik::Antichain maximal;
    value.for_each([&](std::uint32_t i) { maximal.insert(gk.knowledge(i)); });
    j["value"] = antik::antichain_to_json(g, maximal);
    j["arena_states"] = gk.num_states();
  } else {
    throw antik::input_error("--lattice must be 'antichain' or 'subset'");
  }
  j["verdict"] = verdict;
  j["stats"] = antik::stats_to_json(stats);
  emit(j);
  std::cerr << file << ": formula holds at the initial state: "
            << (verdict ? "yes" : "no") << "\n";
  return verdict ? kTrue : kFalse;
}

int cmd_oracle_sweep(std::uint64_t seed, int count, std::uint32_t states) {
  Timer timer;
  std::vector<antik::SweepOutcome> sweeps;
  sweeps.push_back(antik::sweep_correspondence(seed, count, 20, states));
  sweeps.push_back(antik::sweep_sure_oracle(seed + 1, count, states));
  sweeps.push_back(antik::sweep_almost_agreement(seed + 2, count, states));

  bool pass = true;
  Json j;
  j["version"] = antik::kReportVersion;
  j["mode"] = "oracle-sweep";
  j["seed"] = seed;
  Json arr = Json::array();
  for (const auto& s : sweeps) {
    pass = pass && s.ok();
    Json e;
    e["name"] = s.name;
    e["runs"] = s.runs;
    e["failures"] = s.failures;
    e["details"] = s.details;
    arr.push_back(e);
    std::cerr << (s.ok() ? "  ok   " : "  FAIL ") << s.name << " (" << s.runs
              << " checks, " << s.failures << " failures)\n";
  }
  j["sweeps"] = arr;
  j["pass"] = pass;
  emit(j);
  std::cerr << "sweeps " << (pass ? "passed" : "FAILED") << " in "
            << timer.ms() << " ms\n";
  return pass ? kTrue : kFalse;
}

int cmd_gen_atm(const std::string& file, const std::string& output,
                bool stats) {
  antik::MachineInstance inst = antik::load_machine(file);
  antik::MachineGame mg =
      antik::build_machine_game(inst.machine, inst.cells, inst.word);
  Json j = antik::dump_game(mg.game);
  if (output.empty()) {
    emit(j);
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw antik::input_error("cannot write '" + output + "'");
    out << j.dump(2) << "\n";
  }
  std::cerr << file << ": game with " << mg.game.num_states() << " states, "
            << mg.game.num_letters() << " letters\n";
  if (stats)
    std::cerr << "  choice layer: " << mg.or_layer_reachable << " reachable of "
              << mg.or_layer_total << "\n  response layer: "
              << mg.and_layer_reachable << " reachable of " << mg.and_layer_total
              << "\n";
  return kTrue;
}

int cmd_simulate(const std::string& file, std::uint32_t trials,
                 std::uint32_t steps, std::uint64_t seed) {
  antik::GameStructure g = antik::load_game(file);
  g.ensure_valid();
  antik::Objective obj = g.objective();
  if (obj.kind == antik::Objective::Kind::Reach) {
    g = g.with_absorbing_observations(obj.target);
    g.ensure_valid();
  } else if (obj.kind != antik::Objective::Kind::Buchi) {
    throw antik::input_error("simulate needs a buchi or reach objective");
  }

  antik::SetPool pool;
  antik::KnowledgeGame h = antik::build_knw(g, pool);
  antik::StateSet targets = h.target_pairs(g.objective().target);
  antik::AlmostBuchiResult res = antik::solve_almost_buchi(h, targets);
  if (!res.verdict)
    throw antik::input_error(
        "simulate: the initial state is not almost-surely winning");

  antik::SimulationStats stats = antik::simulate(
      h, res.strategy, targets, res.winning, seed, steps, trials);

  std::uint32_t min_visits = UINT32_MAX;
  double total = 0;
  for (auto v : stats.target_visits) {
    min_visits = std::min(min_visits, v);
    total += v;
  }
  Json j;
  j["version"] = antik::kReportVersion;
  j["mode"] = "simulate";
  j["seed"] = seed;
  j["trials"] = trials;
  j["steps"] = steps;
  j["winning_exits"] = stats.trials_with_exit;
  j["target_visits_min"] = trials ? min_visits : 0;
  j["target_visits_mean"] = trials ? total / trials : 0.0;
  j["fraction_at_least_5"] = stats.fraction_with_at_least(5);
  emit(j);
  std::cerr << file << ": " << trials << " trials x " << steps << " steps, "
            << stats.trials_with_exit << " exits\n";
  if (stats.trials_with_exit > 0)
    throw antik::internal_error("simulation left the winning set");
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"antichain solver for games with imperfect information"};
  app.require_subcommand(1);

  std::string file, output, formula_text, lattice = "antichain";
  bool ranks = false, direct = false, use_explicit = false, witness = false,
       dot = false, stats = false;
  std::uint64_t seed = 1;
  int count = 100;
  std::uint32_t states = 6, trials = 10000, steps = 200;

  auto* validate = app.add_subcommand("validate", "check a game file");
  validate->add_option("file", file)->required();

  auto* solve = app.add_subcommand("solve", "solve a game");
  solve->require_subcommand(1);
  auto* sure = solve->add_subcommand("sure", "deterministic sure winning");
  sure->add_option("file", file)->required();
  sure->add_flag("--explicit", use_explicit,
                 "solve on the explicit knowledge arena");
  sure->add_flag("--witness", witness,
                 "emit an oracle positional witness when the symbolic solver "
                 "yields only a region");
  auto* almost =
      solve->add_subcommand("almost-buchi", "almost-sure repeated reachability");
  almost->add_option("file", file)->required();
  almost->add_flag("--ranks", ranks, "include the rank decomposition");
  auto* direct_flag =
      almost->add_flag("--direct", direct, "antichain algorithm, no pair arena");
  almost->add_flag("--explicit", use_explicit, "explicit pair arena (default)")
      ->excludes(direct_flag);

  auto* construct = app.add_subcommand("construct", "emit derived arenas");
  construct->require_subcommand(1);
  auto* gk = construct->add_subcommand("gk", "knowledge-subset arena");
  gk->add_option("file", file)->required();
  gk->add_flag("--dot", dot, "DOT output");
  auto* knw = construct->add_subcommand("knw", "(knowledge, state) pair arena");
  knw->add_option("file", file)->required();
  knw->add_flag("--dot", dot, "DOT output");

  auto* eval = app.add_subcommand("eval", "evaluate a fixed-point formula");
  eval->add_option("file", file)->required();
  eval->add_option("--formula", formula_text, "prefix syntax, e.g. 'mu X . or(atom o4, pre(X))'")
      ->required();
  eval->add_option("--lattice", lattice, "antichain (default) or subset");

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
  auto* sweep = oracle->add_subcommand("sweep", "random cross-check sweeps");
  sweep->add_option("--seed", seed);
  sweep->add_option("--count", count, "games per sweep");
  sweep->add_option("--states", states, "max states per game");

  auto* gen = app.add_subcommand("gen-atm", "machine instance to game file");
  gen->add_option("file", file)->required();
  gen->add_option("-o,--output", output, "write the game here (default stdout)");
  gen->add_flag("--stats", stats, "print layer sizes");

  auto* sim = app.add_subcommand("simulate", "play the uniform strategy");
  sim->add_option("file", file)->required();
  sim->add_option("--trials", trials);
  sim->add_option("--steps", steps);
  sim->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*sure) return cmd_solve_sure(file, use_explicit, witness);
    if (*almost) return cmd_solve_almost(file, ranks, direct);
    if (*gk) return cmd_construct(file, false, dot);
    if (*knw) return cmd_construct(file, true, dot);
    if (*eval) return cmd_eval(file, formula_text, lattice);
    if (*sweep) return cmd_oracle_sweep(seed, count, states);
    if (*gen) return cmd_gen_atm(file, output, stats);
    if (*sim) return cmd_simulate(file, trials, steps, seed);
  } catch (const antik::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const antik::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}
