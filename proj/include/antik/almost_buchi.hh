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
#include <vector>

#include "antik/antichain.hh"
#include "antik/game.hh"
#include "antik/knowledge.hh"

namespace antik {

// ---------------------------------------------------------------------------
// Explicit algorithm on the pair arena.

// Letters under which every successor of pair state q stays in y.
inline StateSet allow(const KnowledgeGame& h, std::uint32_t q,
                      const StateSet& y) {
  check_internal(y.universe() == h.num_states(),
                 "allow: value from a different arena");
  StateSet letters(h.num_letters());
  for (std::uint32_t a = 0; a < h.num_letters(); ++a) {
    bool ok = true;
    for (auto j : h.successors(q, a))
      if (!y.test(j)) {
        ok = false;
        break;
      }
    if (ok) letters.set(a);
  }
  return letters;
}

// Letters allowed for every member of an indistinguishability class.
inline StateSet allow_class(const KnowledgeGame& h, std::uint32_t class_id,
                            const StateSet& y) {
  StateSet letters = StateSet::full(h.num_letters());
  for (auto q : h.class_members[class_id]) letters &= allow(h, q, y);
  return letters;
}

// States of y whose class allows some letter confining them to x.
inline StateSet apre(const KnowledgeGame& h, const StateSet& y,
                     const StateSet& x) {
  if (!x.subset_of(y)) throw input_error("apre: x must be a subset of y");
  std::vector<std::optional<StateSet>> class_allow(h.class_members.size());
  StateSet out(h.num_states());
  for (std::uint32_t q = 0; q < h.num_states(); ++q) {
    if (!y.test(q)) continue;
    std::uint32_t c = h.class_of[q];
    if (!class_allow[c]) class_allow[c] = allow_class(h, c, y);
    bool in = false;
    class_allow[c]->for_each([&](std::uint32_t a) {
      if (in) return;
      bool all_in = true;
      for (auto j : h.successors(q, a))
        if (!x.test(j)) {
          all_in = false;
          break;
        }
      if (all_in) in = true;
    });
    if (in) out.set(q);
  }
  return out;
}

// States of y whose class allows at least one letter.
inline StateSet spre(const KnowledgeGame& h, const StateSet& y) {
  return apre(h, y, y);
}

struct PositionalStrategy {
  // class id -> nonempty allowed letter set, played uniformly at random.
  std::map<std::uint32_t, StateSet> moves;
};

struct AlmostBuchiResult {
  bool verdict = false;
  StateSet winning;  // over pair-arena states
  // Rank per winning state: targets at 0, each next rank has a letter
  // forcing the class downward.  UINT32_MAX outside the winning set.
  std::vector<std::uint32_t> rank;
  std::uint32_t max_rank = 0;
  PositionalStrategy strategy;
  std::uint32_t outer_iterations = 0;
  std::uint32_t inner_iterations = 0;
};

// Greatest fixed point of Y -> lfp X . (apre(Y,X) or (targets and spre(Y))).
// The result is checked on every call: the winning set is class-closed and
// closed under allowed moves, every allowed class has a move, every
// non-target winning state has a rank-decreasing allowed letter, and the
// rank iteration covers the whole winning set.
inline AlmostBuchiResult solve_almost_buchi(const KnowledgeGame& h,
                                            const StateSet& targets) {
  check_internal(targets.universe() == h.num_states(),
                 "solve_almost_buchi: targets from a different arena");
  AlmostBuchiResult res;

  StateSet y = StateSet::full(h.num_states());
  while (true) {
    ++res.outer_iterations;
    StateSet base = targets & spre(h, y);
    StateSet x(h.num_states());
    while (true) {
      ++res.inner_iterations;
      StateSet next = apre(h, y, x) | base;
      if (next == x) break;
      check_internal(x.subset_of(next), "inner iteration is not increasing");
      x = std::move(next);
    }
    if (x == y) break;
    check_internal(x.subset_of(y), "outer iteration is not decreasing");
    y = std::move(x);
  }
  res.winning = y;

  // Class closure of the winning set.
  for (std::uint32_t q = 0; q < h.num_states(); ++q)
    if (res.winning.test(q))
      for (auto q2 : h.class_members[h.class_of[q]])
        check_internal(res.winning.test(q2),
                       "winning set splits an indistinguishability class");

  // Strategy: allowed letters per winning class.
  for (std::uint32_t c = 0; c < h.class_members.size(); ++c) {
    if (!res.winning.test(h.class_members[c][0])) continue;
    StateSet letters = allow_class(h, c, res.winning);
    check_internal(!letters.empty(), "winning class allows no letter");
    res.strategy.moves.emplace(c, std::move(letters));
  }

  // Move closure: allowed letters never leave the winning set.
  for (const auto& [c, letters] : res.strategy.moves)
    for (auto q : h.class_members[c])
      letters.for_each([&](std::uint32_t a) {
        for (auto j : h.successors(q, a))
          check_internal(res.winning.test(j),
                         "allowed letter escapes the winning set");
      });

  // Rank iteration restricted to the winning set.
  res.rank.assign(h.num_states(), UINT32_MAX);
  StateSet ranked = targets & res.winning;
  ranked.for_each([&](std::uint32_t q) { res.rank[q] = 0; });
  std::uint32_t level = 0;
  while (true) {
    ++level;
    StateSet next = ranked;
    for (std::uint32_t q = 0; q < h.num_states(); ++q) {
      if (!res.winning.test(q) || ranked.test(q)) continue;
      const StateSet& letters = res.strategy.moves.at(h.class_of[q]);
      bool in = false;
      letters.for_each([&](std::uint32_t a) {
        if (in) return;
        bool all_in = true;
        for (auto j : h.successors(q, a))
          if (!ranked.test(j)) {
            all_in = false;
            break;
          }
        if (all_in) in = true;
      });
      if (in) {
        next.set(q);
        res.rank[q] = level;
      }
    }
    if (next == ranked) break;
    ranked = std::move(next);
    res.max_rank = level;
  }
  check_internal(ranked == res.winning,
                 "rank iteration does not cover the winning set");

  // Progress: every non-target winning state has a letter forcing strictly
  // smaller ranks.
  for (std::uint32_t q = 0; q < h.num_states(); ++q) {
    if (!res.winning.test(q) || targets.test(q)) continue;
    const StateSet& letters = res.strategy.moves.at(h.class_of[q]);
    bool progress = false;
    letters.for_each([&](std::uint32_t a) {
      if (progress) return;
      bool down = true;
      for (auto j : h.successors(q, a))
        if (res.rank[j] >= res.rank[q]) {
          down = false;
          break;
        }
      if (down) progress = true;
    });
    check_internal(progress, "winning state has no rank-decreasing letter");
  }

  res.verdict = res.winning.test(h.initial);
  return res;
}

// ---------------------------------------------------------------------------
// Direct antichain algorithm.

// A downward-closed set of (knowledge, state) pairs under componentwise
// comparison at equal state: one antichain of knowledge sets per source
// state, each set containing its state and lying inside its observation
// block.
struct PairFamily {
  std::vector<Antichain> per_location;

  static PairFamily bottom(const GameStructure& g) {
    PairFamily f;
    f.per_location.assign(g.num_states(), Antichain::bottom());
    return f;
  }

  // All pairs: per location, the whole observation block.
  static PairFamily top(const GameStructure& g) {
    PairFamily f = bottom(g);
    for (std::uint32_t st = 0; st < g.num_states(); ++st)
      f.per_location[st] =
          Antichain::singleton(g.observation_block(g.observation_of(st)));
    return f;
  }

  // Pairs whose knowledge sits inside a target block.
  static PairFamily targets(const GameStructure& g,
                            const std::vector<std::uint32_t>& target_obs) {
    PairFamily f = bottom(g);
    for (std::uint32_t st = 0; st < g.num_states(); ++st)
      for (auto o : target_obs)
        if (g.observation_block(o).test(st)) {
          f.per_location[st] = Antichain::singleton(g.observation_block(o));
          break;
        }
    return f;
  }

  bool contains(std::uint32_t location, const StateSet& knowledge) const {
    return per_location[location].dominates(knowledge);
  }

  friend bool operator==(const PairFamily& a, const PairFamily& b) {
    return a.per_location == b.per_location;
  }
  friend bool operator!=(const PairFamily& a, const PairFamily& b) {
    return !(a == b);
  }
};

inline PairFamily join(const PairFamily& a, const PairFamily& b) {
  PairFamily r = a;
  for (std::size_t i = 0; i < r.per_location.size(); ++i)
    r.per_location[i] = join(r.per_location[i], b.per_location[i]);
  return r;
}

inline PairFamily meet(const PairFamily& a, const PairFamily& b) {
  PairFamily r = a;
  for (std::size_t i = 0; i < r.per_location.size(); ++i)
    r.per_location[i] = meet(r.per_location[i], b.per_location[i]);
  return r;
}

namespace detail {

// Maximal knowledge sets u inside block o all of whose member pairs (u, l)
// lie in y: the meet over block members l of "avoid l, or fit under y at l".
inline Antichain class_family(const GameStructure& g, const PairFamily& y,
                              std::uint32_t o) {
  Antichain acc = Antichain::singleton(g.observation_block(o));
  g.observation_block(o).for_each([&](std::uint32_t member) {
    Antichain avoid_or_fit = y.per_location[member];
    StateSet rest = g.observation_block(o);
    rest.reset(member);
    avoid_or_fit.insert(rest);
    acc = meet(acc, avoid_or_fit);
  });
  return acc;
}

}  // namespace detail

// Letters that, for every possible move from knowledge s, keep the whole
// successor class inside y.  Depends on the class only through s.
inline StateSet direct_allow_class(const GameStructure& g, const StateSet& s,
                                   const PairFamily& y) {
  StateSet letters(g.num_letters());
  for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
    StateSet successors = g.post(s, a);
    bool ok = true;
    successors.for_each([&](std::uint32_t dst) {
      if (!ok) return;
      StateSet next = successors & g.observation_block(g.observation_of(dst));
      if (!y.contains(dst, next)) ok = false;
    });
    if (ok) letters.set(a);
  }
  return letters;
}

// apre on pair families, computed per location from choice functions over
// per-block obligation antichains; never builds the pair arena.
inline PairFamily direct_apre(const GameStructure& g, const PairFamily& y,
                              const PairFamily& x) {
  const std::size_t n_obs = g.num_observations();
  PairFamily out = PairFamily::bottom(g);

  // Block-level part of the allow condition, shared by all locations.
  std::vector<Antichain> class_y(n_obs);
  for (std::uint32_t o = 0; o < n_obs; ++o)
    class_y[o] = detail::class_family(g, y, o);

  for (std::uint32_t loc = 0; loc < g.num_states(); ++loc) {
    if (y.per_location[loc].empty()) continue;
    const StateSet& home = g.observation_block(g.observation_of(loc));
    for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
      // Per-block obligations: the successor slice in block o must fit under
      // the class condition for y and, where this location itself can move,
      // under x at each of its moves.
      std::vector<std::vector<StateSet>> obligations(n_obs);
      std::vector<bool> forbid(n_obs, false);
      for (std::uint32_t o = 0; o < n_obs; ++o) {
        Antichain f = class_y[o];
        StateSet moves = g.successors(loc, a) & g.observation_block(o);
        moves.for_each([&](std::uint32_t dst) {
          f = meet(f, x.per_location[dst]);
        });
        if (f.empty())
          forbid[o] = true;  // only the empty successor slice is allowed
        else
          obligations[o] = f.elements();
      }

      auto descend = [&](auto&& self, std::size_t o, const StateSet& cur) -> void {
        if (cur.empty() || !cur.test(loc)) return;
        if (o == n_obs) {
          for (const auto& bound : y.per_location[loc].elements()) {
            StateSet s = cur & bound;
            if (s.test(loc)) out.per_location[loc].insert(s);
          }
          return;
        }
        if (forbid[o]) {
          StateSet next = cur;
          next.for_each([&](std::uint32_t st) {
            if ((g.successors(st, a) & g.observation_block(o)).empty()) return;
            next.reset(st);
          });
          self(self, o + 1, next);
          return;
        }
        for (const auto& t : obligations[o]) {
          StateSet next = cur;
          next.for_each([&](std::uint32_t st) {
            if ((g.successors(st, a) & g.observation_block(o)).subset_of(t))
              return;
            next.reset(st);
          });
          self(self, o + 1, next);
        }
      };
      descend(descend, 0, home);
    }
  }
  return out;
}

inline PairFamily direct_spre(const GameStructure& g, const PairFamily& y) {
  return direct_apre(g, y, y);
}

struct DirectAlmostBuchiResult {
  bool verdict = false;
  PairFamily winning;
  std::uint32_t outer_iterations = 0;
  std::uint32_t inner_iterations = 0;
  // Allowed letters for each maximal winning knowledge set, keyed by a
  // representative location; dominated knowledge sets resolve at runtime via
  // direct_allow_class.
};

// Same fixed point as solve_almost_buchi, evaluated over pair families.  The
// family ranges over every pair, reachable or not; restricted to the
// reachable arena its downward closure coincides with the explicit winning
// set.
inline DirectAlmostBuchiResult solve_almost_buchi_direct(
    const GameStructure& g, const std::vector<std::uint32_t>& target_obs) {
  g.ensure_valid();
  DirectAlmostBuchiResult res;
  PairFamily targets = PairFamily::targets(g, target_obs);

  PairFamily y = PairFamily::top(g);
  while (true) {
    ++res.outer_iterations;
    PairFamily base = meet(targets, direct_spre(g, y));
    PairFamily x = PairFamily::bottom(g);
    while (true) {
      ++res.inner_iterations;
      PairFamily next = join(direct_apre(g, y, x), base);
      if (next == x) break;
      x = std::move(next);
    }
    if (x == y) break;
    y = std::move(x);
  }
  res.winning = std::move(y);

  StateSet init_know(g.num_states());
  init_know.set(g.initial());
  res.verdict = res.winning.contains(g.initial(), init_know);
  return res;
}

}  // namespace antik
