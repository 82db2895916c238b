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
// Brute-force reference implementations: attractor and Zielonka solvers for
// perfect-information arenas, full-powerset formula semantics, random
// instance generation, and strategy simulation.  Everything here is meant to
// cross-check the symbolic algorithms on small instances through an
// independent code path.

#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "antik/almost_buchi.hh"
#include "antik/game.hh"
#include "antik/knowledge.hh"
#include "antik/mucalc.hh"

namespace antik {

// Deterministic 64-bit generator; identical seeds give identical streams on
// every platform.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint32_t bounded(std::uint32_t n) {
    return static_cast<std::uint32_t>(next() % n);
  }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 r(seed ^ (0xd6e8feb86659fd93ull * (index + 1)));
    return r.next();
  }
};

// ---------------------------------------------------------------------------
// Perfect-information arenas

// A perfect-information letter game: Player 1 picks a letter, Player 2 picks
// one of the letter's successors.  States carry an observation label so that
// objectives over observations apply unchanged.
struct PerfectArena {
  std::size_t n_states = 0, n_letters = 0, n_obs = 0;
  std::uint32_t initial = 0;
  std::vector<std::vector<std::uint32_t>> succ;  // [s * n_letters + a]
  std::vector<std::uint32_t> obs_of;

  const std::vector<std::uint32_t>& successors(std::uint32_t s,
                                               std::uint32_t a) const {
    return succ[s * n_letters + a];
  }

  void ensure_total() const {
    for (const auto& v : succ)
      check_internal(!v.empty(), "perfect arena is not total");
  }
};

inline PerfectArena arena_from_game(const GameStructure& g) {
  g.ensure_valid();
  for (std::uint32_t o = 0; o < g.num_observations(); ++o)
    if (g.observation_block(o).count() != 1)
      throw input_error(
          "perfect-information arena requires singleton observations");
  PerfectArena a;
  a.n_states = g.num_states();
  a.n_letters = g.num_letters();
  a.n_obs = g.num_observations();
  a.initial = g.initial();
  a.succ.resize(a.n_states * a.n_letters);
  for (std::uint32_t s = 0; s < a.n_states; ++s)
    for (std::uint32_t l = 0; l < a.n_letters; ++l)
      a.succ[s * a.n_letters + l] = g.successors(s, l).members();
  a.obs_of.resize(a.n_states);
  for (std::uint32_t s = 0; s < a.n_states; ++s)
    a.obs_of[s] = g.observation_of(s);
  return a;
}

inline PerfectArena arena_from_subset_game(const SubsetGame& gk) {
  PerfectArena a;
  a.n_states = gk.num_states();
  a.n_letters = gk.num_letters();
  a.n_obs = gk.source->num_observations();
  a.initial = gk.initial;
  a.succ.resize(a.n_states * a.n_letters);
  for (std::uint32_t s = 0; s < a.n_states; ++s)
    for (std::uint32_t l = 0; l < a.n_letters; ++l)
      a.succ[s * a.n_letters + l] = gk.successors(s, l);
  a.obs_of = gk.obs_of;
  for (auto o : a.obs_of)
    check_internal(o != UINT32_MAX,
                   "subset arena has states outside any observation");
  a.ensure_total();
  return a;
}

struct PerfectSolution {
  StateSet winning;                        // Player-1 sure-winning states
  std::vector<std::int32_t> strategy;      // letter per winning state, else -1
  // Player-2 positional witness on the complement, per (state, letter);
  // filled for reach and safe objectives only.
  std::vector<std::int32_t> spoiler;
};

namespace detail {

inline StateSet arena_targets(const PerfectArena& a,
                              const std::vector<std::uint32_t>& target_obs) {
  StateSet t(a.n_states);
  for (std::uint32_t s = 0; s < a.n_states; ++s)
    for (auto o : target_obs)
      if (a.obs_of[s] == o) t.set(s);
  return t;
}

inline bool confined(const PerfectArena& a, std::uint32_t s, std::uint32_t l,
                     const StateSet& u) {
  for (auto j : a.successors(s, l))
    if (!u.test(j)) return false;
  return true;
}

// States from which Player 1 forces the next state into u.
inline StateSet cpre1(const PerfectArena& a, const StateSet& u) {
  StateSet out(a.n_states);
  for (std::uint32_t s = 0; s < a.n_states; ++s)
    for (std::uint32_t l = 0; l < a.n_letters; ++l)
      if (confined(a, s, l, u)) {
        out.set(s);
        break;
      }
  return out;
}

// Player-1 attractor with a rank-decreasing letter recorded on entry.
inline StateSet attractor1(const PerfectArena& a, const StateSet& base,
                           std::vector<std::int32_t>* strategy) {
  StateSet u = base;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::uint32_t s = 0; s < a.n_states; ++s) {
      if (u.test(s)) continue;
      for (std::uint32_t l = 0; l < a.n_letters; ++l)
        if (confined(a, s, l, u)) {
          u.set(s);
          if (strategy) (*strategy)[s] = static_cast<std::int32_t>(l);
          grew = true;
          break;
        }
    }
  }
  return u;
}

// Player-2 attractor: states where every letter admits a successor in the
// growing set; the chosen successor per letter is the spoiling move.
inline StateSet attractor2(const PerfectArena& a, const StateSet& base,
                           std::vector<std::int32_t>* spoiler) {
  StateSet u = base;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::uint32_t s = 0; s < a.n_states; ++s) {
      if (u.test(s)) continue;
      bool all_letters = true;
      std::vector<std::int32_t> pick(a.n_letters, -1);
      for (std::uint32_t l = 0; l < a.n_letters && all_letters; ++l) {
        all_letters = false;
        for (auto j : a.successors(s, l))
          if (u.test(j)) {
            pick[l] = static_cast<std::int32_t>(j);
            all_letters = true;
            break;
          }
      }
      if (all_letters) {
        u.set(s);
        if (spoiler)
          for (std::uint32_t l = 0; l < a.n_letters; ++l)
            (*spoiler)[s * a.n_letters + l] = pick[l];
        grew = true;
      }
    }
  }
  return u;
}

PerfectSolution solve_parity_zielonka(const PerfectArena& a,
                                      const std::vector<std::uint32_t>& prio);

}  // namespace detail

// Sure-winning states for Player 1, by attractor fixed points for the four
// simple kinds and Zielonka recursion for parity.  Emits a positional
// witness for Player 1 on the winning region and, for reach and safe, a
// positional spoiler for Player 2 on the complement.
inline PerfectSolution solve_perfect(const PerfectArena& a,
                                     const Objective& obj) {
  a.ensure_total();
  PerfectSolution sol;
  sol.strategy.assign(a.n_states, -1);
  sol.spoiler.assign(a.n_states * a.n_letters, -1);
  StateSet t = detail::arena_targets(a, obj.target);

  switch (obj.kind) {
    case Objective::Kind::Reach: {
      sol.winning = detail::attractor1(a, t, &sol.strategy);
      sol.winning.for_each([&](std::uint32_t s) {
        if (sol.strategy[s] < 0) sol.strategy[s] = 0;  // already on target
      });
      // Spoiler: stay outside the attractor.
      for (std::uint32_t s = 0; s < a.n_states; ++s) {
        if (sol.winning.test(s)) continue;
        for (std::uint32_t l = 0; l < a.n_letters; ++l)
          for (auto j : a.successors(s, l))
            if (!sol.winning.test(j)) {
              sol.spoiler[s * a.n_letters + l] = static_cast<std::int32_t>(j);
              break;
            }
      }
      break;
    }
    case Objective::Kind::Safe: {
      StateSet w = t;
      while (true) {
        StateSet next = t & detail::cpre1(a, w);
        if (next == w) break;
        w = std::move(next);
      }
      sol.winning = w;
      sol.winning.for_each([&](std::uint32_t s) {
        for (std::uint32_t l = 0; l < a.n_letters; ++l)
          if (detail::confined(a, s, l, w)) {
            sol.strategy[s] = static_cast<std::int32_t>(l);
            break;
          }
      });
      detail::attractor2(a, t.complement(), &sol.spoiler);
      break;
    }
    case Objective::Kind::Buchi: {
      StateSet w = StateSet::full(a.n_states);
      while (true) {
        StateSet recharge = t & detail::cpre1(a, w);
        StateSet next = detail::attractor1(a, recharge, nullptr);
        if (next == w) break;
        w = std::move(next);
      }
      sol.winning = w;
      // Recharge states confine to w; the rest follow the attractor ranks.
      StateSet recharge = t & detail::cpre1(a, w);
      std::vector<std::int32_t> attr_strat(a.n_states, -1);
      detail::attractor1(a, recharge, &attr_strat);
      sol.winning.for_each([&](std::uint32_t s) {
        if (recharge.test(s)) {
          for (std::uint32_t l = 0; l < a.n_letters; ++l)
            if (detail::confined(a, s, l, w)) {
              sol.strategy[s] = static_cast<std::int32_t>(l);
              break;
            }
        } else {
          sol.strategy[s] = attr_strat[s];
        }
      });
      break;
    }
    case Objective::Kind::CoBuchi: {
      StateSet w(a.n_states);
      while (true) {
        // nu X . ((t and cpre(X)) or cpre(w))
        StateSet inner = StateSet::full(a.n_states);
        while (true) {
          StateSet next =
              (t & detail::cpre1(a, inner)) | detail::cpre1(a, w);
          if (next == inner) break;
          inner = std::move(next);
        }
        if (inner == w) break;
        w = std::move(inner);
      }
      sol.winning = w;
      // Inside the final stable part, stay there; otherwise descend.
      StateSet stable(a.n_states);
      {
        StateSet inner = StateSet::full(a.n_states);
        while (true) {
          StateSet next = t & detail::cpre1(a, inner);
          if (next == inner) break;
          inner = std::move(next);
        }
        stable = inner;  // safe-in-target core
      }
      std::vector<std::int32_t> attr_strat(a.n_states, -1);
      detail::attractor1(a, stable, &attr_strat);
      sol.winning.for_each([&](std::uint32_t s) {
        if (stable.test(s)) {
          for (std::uint32_t l = 0; l < a.n_letters; ++l)
            if (detail::confined(a, s, l, stable)) {
              sol.strategy[s] = static_cast<std::int32_t>(l);
              break;
            }
        } else {
          sol.strategy[s] = attr_strat[s];
        }
      });
      break;
    }
    case Objective::Kind::Parity: {
      std::vector<std::uint32_t> prio(a.n_states);
      for (std::uint32_t s = 0; s < a.n_states; ++s)
        prio[s] = obj.priority[a.obs_of[s]];
      sol = detail::solve_parity_zielonka(a, prio);
      break;
    }
  }
  return sol;
}

namespace detail {

// Zielonka recursion over the bipartite vertex game: choice vertices (one
// per state) owned by Player 1, move vertices (state, letter) owned by
// Player 2, both carrying the state's priority; minimum priority seen
// infinitely often decides.
inline PerfectSolution solve_parity_zielonka(
    const PerfectArena& a, const std::vector<std::uint32_t>& prio) {
  const std::size_t n = a.n_states, k = a.n_letters;
  const std::size_t total = n + n * k;
  auto move_vertex = [&](std::uint32_t s, std::uint32_t l) {
    return static_cast<std::uint32_t>(n + s * k + l);
  };
  auto owner = [&](std::uint32_t v) { return v < n ? 1 : 2; };
  auto vprio = [&](std::uint32_t v) {
    return v < n ? prio[v] : prio[(v - n) / k];
  };

  // edges
  auto for_succ = [&](std::uint32_t v, auto f) {
    if (v < n) {
      for (std::uint32_t l = 0; l < k; ++l) f(move_vertex(v, l));
    } else {
      std::uint32_t s = (v - n) / k, l = (v - n) % k;
      for (auto j : a.successors(s, l)) f(j);
    }
  };

  std::vector<std::int32_t> strat1(total, -1), strat2(total, -1);

  // Attractor for `player` toward `base` inside `alive`.
  auto attr = [&](int player, std::vector<char> base,
                  const std::vector<char>& alive) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::uint32_t v = 0; v < total; ++v) {
        if (!alive[v] || base[v]) continue;
        bool join = false;
        std::int32_t pick = -1;
        if (owner(v) == player) {
          for_succ(v, [&](std::uint32_t w) {
            if (join || !alive[w]) return;
            if (base[w]) {
              join = true;
              pick = static_cast<std::int32_t>(w);
            }
          });
        } else {
          join = true;
          for_succ(v, [&](std::uint32_t w) {
            if (alive[w] && !base[w]) join = false;
          });
        }
        if (join) {
          base[v] = 1;
          if (pick >= 0)
            (player == 1 ? strat1 : strat2)[v] = pick;
          grew = true;
        }
      }
    }
    return base;
  };

  // Recursive solve on the alive subgame; returns Player-1 region.
  auto solve = [&](auto&& self, const std::vector<char>& alive)
      -> std::pair<std::vector<char>, std::vector<char>> {
    std::vector<char> w1(total, 0), w2(total, 0);
    std::uint32_t best = UINT32_MAX;
    for (std::uint32_t v = 0; v < total; ++v)
      if (alive[v]) best = std::min(best, vprio(v));
    if (best == UINT32_MAX) return {w1, w2};

    int player = (best % 2 == 0) ? 1 : 2;
    std::vector<char> top(total, 0);
    for (std::uint32_t v = 0; v < total; ++v)
      if (alive[v] && vprio(v) == best) top[v] = 1;
    std::vector<char> attracted = attr(player, top, alive);
    std::vector<char> rest = alive;
    for (std::uint32_t v = 0; v < total; ++v)
      if (attracted[v]) rest[v] = 0;
    auto [r1, r2] = self(self, rest);
    auto& mine = player == 1 ? r1 : r2;
    auto& theirs = player == 1 ? r2 : r1;

    bool theirs_empty = true;
    for (std::uint32_t v = 0; v < total; ++v)
      if (theirs[v]) theirs_empty = false;

    if (theirs_empty) {
      for (std::uint32_t v = 0; v < total; ++v)
        if (alive[v]) (player == 1 ? w1 : w2)[v] = 1;
      // On the top vertices the owner may play anywhere inside the subgame.
      auto& strat = player == 1 ? strat1 : strat2;
      for (std::uint32_t v = 0; v < total; ++v) {
        if (!top[v] || owner(v) != player) continue;
        for_succ(v, [&](std::uint32_t w) {
          if (strat[v] < 0 && alive[w]) strat[v] = static_cast<std::int32_t>(w);
        });
      }
      return {w1, w2};
    }

    std::vector<char> trap = attr(3 - player, theirs, alive);
    std::vector<char> rest2 = alive;
    for (std::uint32_t v = 0; v < total; ++v)
      if (trap[v]) rest2[v] = 0;
    auto [s1, s2] = self(self, rest2);
    if (player == 1) {
      w1 = s1;
      w2 = s2;
      for (std::uint32_t v = 0; v < total; ++v)
        if (trap[v]) w2[v] = 1;
    } else {
      w1 = s1;
      w2 = s2;
      for (std::uint32_t v = 0; v < total; ++v)
        if (trap[v]) w1[v] = 1;
    }
    return {w1, w2};
  };

  std::vector<char> alive(total, 1);
  auto [w1, w2] = solve(solve, alive);

  PerfectSolution sol;
  sol.winning = StateSet(n);
  sol.strategy.assign(n, -1);
  sol.spoiler.assign(n * k, -1);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (!w1[s]) continue;
    sol.winning.set(s);
    std::int32_t mv = strat1[s];
    check_internal(mv >= 0, "parity recursion left a winning state unresolved");
    sol.strategy[s] = (mv - static_cast<std::int32_t>(n)) % static_cast<std::int32_t>(k);
  }
  for (std::uint32_t s = 0; s < n; ++s)
    for (std::uint32_t l = 0; l < k; ++l) {
      std::uint32_t v = move_vertex(s, l);
      if (w2[v] && strat2[v] >= 0 && strat2[v] < static_cast<std::int32_t>(n))
        sol.spoiler[s * k + l] = strat2[v];
    }
  return sol;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Full-powerset semantics

struct FullSemantics {
  std::unique_ptr<SetPool> pool;
  SubsetGame arena;
  StateSet value;  // over arena states

  Antichain maximal_value() const {
    Antichain a;
    value.for_each([&](std::uint32_t i) { a.insert(arena.knowledge(i)); });
    return a;
  }
};

// Evaluates a formula over every nonempty subset of states, by explicit
// enumeration.  Refuses games beyond the ceiling.
inline FullSemantics eval_subset_full(const GameStructure& g,
                                      const Formula& phi,
                                      const SubsetValuation& valuation = {},
                                      std::size_t ceiling = 12) {
  if (g.num_states() > ceiling)
    throw input_error("full powerset evaluation refused: " +
                      std::to_string(g.num_states()) + " states exceeds ceiling " +
                      std::to_string(ceiling));
  FullSemantics out;
  out.pool = std::make_unique<SetPool>();
  out.arena = build_gk_full(g, *out.pool);
  out.value = eval_subset(out.arena, phi, valuation);
  return out;
}

// ---------------------------------------------------------------------------
// Random instances

// A valid game from a seed: random transitions patched to totality, a random
// surjective observation assignment.  Same seed, same game.
inline GameStructure random_game(std::uint64_t seed, std::uint32_t n_states,
                                 std::uint32_t n_letters,
                                 std::uint32_t n_observations) {
  check_internal(n_observations <= n_states && n_observations >= 1,
                 "random_game: need 1 <= observations <= states");
  SplitMix64 rng(seed);
  GameStructure::Builder b;
  for (std::uint32_t s = 0; s < n_states; ++s)
    b.state("s" + std::to_string(s));
  for (std::uint32_t l = 0; l < n_letters; ++l)
    b.letter(std::string(1, static_cast<char>('a' + l)));
  b.initial("s0");

  for (std::uint32_t s = 0; s < n_states; ++s)
    for (std::uint32_t l = 0; l < n_letters; ++l) {
      bool any = false;
      for (std::uint32_t d = 0; d < n_states; ++d)
        if (rng.bounded(4) == 0) {
          b.transition("s" + std::to_string(s),
                       std::string(1, static_cast<char>('a' + l)),
                       "s" + std::to_string(d));
          any = true;
        }
      if (!any)
        b.transition("s" + std::to_string(s),
                     std::string(1, static_cast<char>('a' + l)),
                     "s" + std::to_string(rng.bounded(n_states)));
    }

  // Surjective observation assignment: one pinned state per block, the rest
  // uniform.
  std::vector<std::uint32_t> obs_of(n_states);
  std::vector<std::uint32_t> perm(n_states);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::uint32_t i = n_states; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.bounded(i)]);
  for (std::uint32_t o = 0; o < n_observations; ++o) obs_of[perm[o]] = o;
  for (std::uint32_t i = n_observations; i < n_states; ++i)
    obs_of[perm[i]] = rng.bounded(n_observations);
  for (std::uint32_t o = 0; o < n_observations; ++o) {
    std::vector<std::string> members;
    for (std::uint32_t s = 0; s < n_states; ++s)
      if (obs_of[s] == o) members.push_back("s" + std::to_string(s));
    b.observation("o" + std::to_string(o), members);
  }
  b.objective(Objective::Kind::Reach, {});
  GameStructure g = b.build();
  g.ensure_valid();
  return g;
}

inline Objective random_objective(SplitMix64& rng, const GameStructure& g,
                                  Objective::Kind kind) {
  Objective obj;
  obj.kind = kind;
  if (kind == Objective::Kind::Parity) {
    obj.priority.resize(g.num_observations());
    for (auto& p : obj.priority) p = rng.bounded(4);
  } else {
    for (std::uint32_t o = 0; o < g.num_observations(); ++o)
      if (rng.bounded(2) == 0) obj.target.push_back(o);
  }
  return obj;
}

// Random closed formula with bounded depth and fixed-point alternation.
inline Formula random_formula(SplitMix64& rng, const GameStructure& g,
                              int max_depth, int max_alternation) {
  struct Gen {
    SplitMix64& rng;
    const GameStructure& g;
    int fresh = 0;

    Formula leaf(const std::vector<std::string>& scope) {
      if (!scope.empty() && rng.bounded(2) == 0)
        return Formula::var(scope[rng.bounded(
            static_cast<std::uint32_t>(scope.size()))]);
      return Formula::atom(rng.bounded(
          static_cast<std::uint32_t>(g.num_observations())));
    }

    // last: 0 none, 1 mu, 2 nu; alt: remaining polarity switches
    Formula go(int depth, int last, int alt,
               std::vector<std::string>& scope) {
      if (depth <= 0) return leaf(scope);
      switch (rng.bounded(12)) {
        case 0:
        case 1:
          return leaf(scope);
        case 2:
        case 3:
        case 4: {
          Formula a = go(depth - 1, last, alt, scope);
          Formula b = go(depth - 1, last, alt, scope);
          return Formula::mk_or(std::move(a), std::move(b));
        }
        case 5:
        case 6:
        case 7: {
          Formula a = go(depth - 1, last, alt, scope);
          Formula b = go(depth - 1, last, alt, scope);
          return Formula::mk_and(std::move(a), std::move(b));
        }
        case 8:
        case 9:
          return Formula::pre(go(depth - 1, last, alt, scope));
        default: {
          bool want_mu = rng.bounded(2) == 0;
          int polarity = want_mu ? 1 : 2;
          int nalt = alt;
          if (last != 0 && last != polarity) {
            if (alt == 0) return leaf(scope);
            nalt = alt - 1;
          }
          std::string x = "V" + std::to_string(fresh++);
          scope.push_back(x);
          Formula body = go(depth - 1, polarity, nalt, scope);
          scope.pop_back();
          return want_mu ? Formula::mu(x, std::move(body))
                         : Formula::nu(x, std::move(body));
        }
      }
    }
  };
  Gen gen{rng, g};
  std::vector<std::string> scope;
  return gen.go(max_depth, 0, max_alternation, scope);
}

// ---------------------------------------------------------------------------
// Strategy simulation

struct SimulationStats {
  std::uint32_t trials = 0, steps = 0;
  std::uint32_t trials_with_exit = 0;   // left the winning set
  std::vector<std::uint32_t> target_visits;  // per trial

  double fraction_with_at_least(std::uint32_t k) const {
    if (target_visits.empty()) return 0.0;
    std::size_t n = 0;
    for (auto v : target_visits)
      if (v >= k) ++n;
    return static_cast<double>(n) / static_cast<double>(target_visits.size());
  }
};

// Plays the uniform positional strategy against a uniformly random adversary.
// Per-trial seeds derive deterministically from the master seed, so trials
// can be partitioned across workers without changing the outcome.
inline SimulationStats simulate(const KnowledgeGame& h,
                                const PositionalStrategy& strategy,
                                const StateSet& targets,
                                const StateSet& winning, std::uint64_t seed,
                                std::uint32_t steps, std::uint32_t trials) {
  if (!winning.test(h.initial))
    throw input_error("simulate: initial state is not in the winning set");
  SimulationStats stats;
  stats.trials = trials;
  stats.steps = steps;
  stats.target_visits.reserve(trials);

  for (std::uint32_t t = 0; t < trials; ++t) {
    SplitMix64 rng(SplitMix64::derive(seed, t));
    std::uint32_t q = h.initial;
    std::uint32_t visits = 0;
    bool exited = false;
    for (std::uint32_t i = 0; i < steps; ++i) {
      auto it = strategy.moves.find(h.class_of[q]);
      if (it == strategy.moves.end()) {
        exited = true;
        break;
      }
      std::vector<std::uint32_t> letters = it->second.members();
      std::uint32_t a = letters[rng.bounded(
          static_cast<std::uint32_t>(letters.size()))];
      const auto& outs = h.successors(q, a);
      q = outs[rng.bounded(static_cast<std::uint32_t>(outs.size()))];
      if (!winning.test(q)) {
        exited = true;
        break;
      }
      if (targets.test(q)) ++visits;
    }
    if (exited) ++stats.trials_with_exit;
    stats.target_visits.push_back(visits);
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Cross-check sweeps

struct SweepOutcome {
  std::string name;
  std::uint32_t runs = 0;
  std::uint32_t failures = 0;
  std::vector<std::string> details;

  bool ok() const { return failures == 0; }

  void fail(const std::string& what) {
    ++failures;
    if (details.size() < 10) details.push_back(what);
  }
};

// Maximal elements of the full-powerset value must equal the antichain
// value, formula by formula.
inline SweepOutcome sweep_correspondence(std::uint64_t seed, int games,
                                         int formulas_per_game,
                                         std::uint32_t max_states = 6,
                                         std::uint32_t max_letters = 3,
                                         std::uint32_t max_obs = 3) {
  SweepOutcome out;
  out.name = "subset/antichain correspondence";
  SplitMix64 rng(seed);
  for (int i = 0; i < games; ++i) {
    std::uint32_t n = 2 + rng.bounded(max_states - 1);
    std::uint32_t k = 1 + rng.bounded(max_letters);
    std::uint32_t o = 1 + rng.bounded(std::min(n, max_obs));
    GameStructure g = random_game(rng.next(), n, k, o);
    SetPool pool;
    SubsetGame full = build_gk_full(g, pool);
    for (int j = 0; j < formulas_per_game; ++j) {
      Formula phi = random_formula(rng, g, 4, 2);
      ++out.runs;
      StateSet subset_value = eval_subset(full, phi);
      Antichain from_subsets;
      subset_value.for_each(
          [&](std::uint32_t s) { from_subsets.insert(full.knowledge(s)); });
      Antichain direct = eval_antichain(g, phi);
      if (from_subsets != direct)
        out.fail("game " + std::to_string(i) + " formula " +
                 phi.to_string(g));
    }
  }
  return out;
}

// Antichain verdicts must match the perfect-information solution of the
// knowledge arena, for every objective kind.
inline SweepOutcome sweep_sure_oracle(std::uint64_t seed, int games,
                                      std::uint32_t max_states = 6) {
  SweepOutcome out;
  out.name = "sure winning vs oracle";
  SplitMix64 rng(seed);
  const Objective::Kind kinds[] = {
      Objective::Kind::Reach, Objective::Kind::Safe, Objective::Kind::Buchi,
      Objective::Kind::CoBuchi, Objective::Kind::Parity};
  for (int i = 0; i < games; ++i) {
    std::uint32_t n = 2 + rng.bounded(max_states - 1);
    std::uint32_t k = 1 + rng.bounded(3u);
    std::uint32_t o = 1 + rng.bounded(std::min(n, 3u));
    GameStructure g = random_game(rng.next(), n, k, o);
    SetPool pool;
    SubsetGame gk = build_gk(g, pool);
    PerfectArena arena = arena_from_subset_game(gk);
    for (auto kind : kinds) {
      Objective obj = random_objective(rng, g, kind);
      ++out.runs;
      bool symbolic = solve_sure(g, obj).verdict;
      PerfectSolution ref = solve_perfect(arena, obj);
      bool oracle = ref.winning.test(gk.initial);
      StateSet by_formula =
          eval_subset(gk, characteristic_formula(g, obj));
      bool formula_verdict = by_formula.test(gk.initial);
      if (symbolic != oracle || by_formula != ref.winning)
        out.fail("game " + std::to_string(i) + " kind " +
                 objective_kind_name(kind) + ": antichain=" +
                 std::to_string(symbolic) + " oracle=" + std::to_string(oracle) +
                 " formula=" + std::to_string(formula_verdict));
    }
  }
  return out;
}

// Explicit and direct almost-sure solvers must agree: same verdict, and the
// direct family restricted to reachable pairs is exactly the explicit set.
inline SweepOutcome sweep_almost_agreement(std::uint64_t seed, int games,
                                           std::uint32_t max_states = 6) {
  SweepOutcome out;
  out.name = "almost-sure explicit vs direct";
  SplitMix64 rng(seed);
  for (int i = 0; i < games; ++i) {
    std::uint32_t n = 2 + rng.bounded(max_states - 1);
    std::uint32_t k = 1 + rng.bounded(3u);
    std::uint32_t o = 1 + rng.bounded(std::min(n, 3u));
    GameStructure g = random_game(rng.next(), n, k, o);
    std::vector<std::uint32_t> target;
    for (std::uint32_t ob = 0; ob < g.num_observations(); ++ob)
      if (rng.bounded(2) == 0) target.push_back(ob);
    ++out.runs;

    SetPool pool;
    KnowledgeGame h = build_knw(g, pool);
    AlmostBuchiResult explicit_res =
        solve_almost_buchi(h, h.target_pairs(target));
    DirectAlmostBuchiResult direct_res = solve_almost_buchi_direct(g, target);

    if (explicit_res.verdict != direct_res.verdict) {
      out.fail("game " + std::to_string(i) + ": verdicts differ");
      continue;
    }
    for (std::uint32_t q = 0; q < h.num_states(); ++q) {
      bool in_explicit = explicit_res.winning.test(q);
      bool in_direct = direct_res.winning.contains(h.states[q].location,
                                                   h.knowledge(q));
      if (in_explicit != in_direct) {
        out.fail("game " + std::to_string(i) + ": membership differs at " +
                 h.state_name(q));
        break;
      }
    }
  }
  return out;
}

}  // namespace antik
