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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "antik/antichain.hh"
#include "antik/game.hh"
#include "antik/knowledge.hh"

namespace antik {

// Fixed-point formulas over observation atoms:
//   phi ::= atom o | x | or(phi, phi) | and(phi, phi) | pre(phi)
//         | mu x . phi | nu x . phi
// There is no native negation; "not o" is the disjunction of all other
// observation atoms.  Variable lookup is innermost-first, so reused binder
// names behave as if renamed apart.
class Formula {
 public:
  enum class Kind { Atom, Var, Or, And, Pre, Mu, Nu };

  struct Node {
    Kind kind;
    std::uint32_t obs = 0;  // Atom
    std::string var;        // Var and binders
    std::shared_ptr<const Node> lhs, rhs;
  };

  Formula() = default;

  static Formula atom(std::uint32_t obs) {
    return make({Kind::Atom, obs, "", nullptr, nullptr});
  }
  static Formula var(std::string name) {
    return make({Kind::Var, 0, std::move(name), nullptr, nullptr});
  }
  static Formula mk_or(Formula a, Formula b) {
    return make({Kind::Or, 0, "", a.root_, b.root_});
  }
  static Formula mk_and(Formula a, Formula b) {
    return make({Kind::And, 0, "", a.root_, b.root_});
  }
  static Formula pre(Formula a) {
    return make({Kind::Pre, 0, "", a.root_, nullptr});
  }
  static Formula mu(std::string x, Formula body) {
    return make({Kind::Mu, 0, std::move(x), body.root_, nullptr});
  }
  static Formula nu(std::string x, Formula body) {
    return make({Kind::Nu, 0, std::move(x), body.root_, nullptr});
  }
  // The empty region, usable where a "false" literal is needed.
  static Formula falsum() { return mu("_bot", var("_bot")); }

  const Node* root() const { return root_.get(); }
  bool valid() const { return root_ != nullptr; }

  std::set<std::string> free_variables() const {
    std::set<std::string> out;
    std::vector<std::string> scope;
    collect_free(root_.get(), scope, out);
    return out;
  }
  bool closed() const { return free_variables().empty(); }

  std::string to_string(const GameStructure& g) const {
    return print(root_.get(), g);
  }

 private:
  static Formula make(Node n) {
    Formula f;
    f.root_ = std::make_shared<const Node>(std::move(n));
    return f;
  }

  static void collect_free(const Node* n, std::vector<std::string>& scope,
                           std::set<std::string>& out) {
    if (!n) return;
    switch (n->kind) {
      case Kind::Var:
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (*it == n->var) return;
        out.insert(n->var);
        return;
      case Kind::Mu:
      case Kind::Nu:
        scope.push_back(n->var);
        collect_free(n->lhs.get(), scope, out);
        scope.pop_back();
        return;
      default:
        collect_free(n->lhs.get(), scope, out);
        collect_free(n->rhs.get(), scope, out);
    }
  }

  static std::string print(const Node* n, const GameStructure& g) {
    switch (n->kind) {
      case Kind::Atom: return "atom " + g.observation_name(n->obs);
      case Kind::Var: return n->var;
      case Kind::Or:
        return "or(" + print(n->lhs.get(), g) + ", " + print(n->rhs.get(), g) + ")";
      case Kind::And:
        return "and(" + print(n->lhs.get(), g) + ", " + print(n->rhs.get(), g) + ")";
      case Kind::Pre: return "pre(" + print(n->lhs.get(), g) + ")";
      case Kind::Mu: return "mu " + n->var + " . " + print(n->lhs.get(), g);
      case Kind::Nu: return "nu " + n->var + " . " + print(n->lhs.get(), g);
    }
    return "?";
  }

  std::shared_ptr<const Node> root_;
};

// Parses the prefix syntax, e.g. "mu X . or(atom o4, pre(X))".
// Observation names are resolved against the game; anything else is a
// variable.
inline Formula parse_formula(const std::string& text, const GameStructure& g) {
  struct Parser {
    const std::string& s;
    const GameStructure& g;
    std::size_t i = 0;

    void skip() {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) ++i;
    }
    bool eat(char c) {
      skip();
      if (i < s.size() && s[i] == c) {
        ++i;
        return true;
      }
      return false;
    }
    void expect(char c) {
      if (!eat(c))
        throw input_error("formula: expected '" + std::string(1, c) +
                          "' at offset " + std::to_string(i));
    }
    std::string word() {
      skip();
      std::size_t start = i;
      while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\n' &&
             s[i] != '(' && s[i] != ')' && s[i] != ',' && s[i] != '.')
        ++i;
      if (start == i)
        throw input_error("formula: expected a name at offset " +
                          std::to_string(i));
      return s.substr(start, i - start);
    }

    Formula parse() {
      std::string w = word();
      if (w == "mu" || w == "nu") {
        std::string x = word();
        expect('.');
        Formula body = parse();
        return w == "mu" ? Formula::mu(x, std::move(body))
                         : Formula::nu(x, std::move(body));
      }
      if (w == "or" || w == "and") {
        expect('(');
        Formula a = parse();
        expect(',');
        Formula b = parse();
        expect(')');
        return w == "or" ? Formula::mk_or(std::move(a), std::move(b))
                         : Formula::mk_and(std::move(a), std::move(b));
      }
      if (w == "pre") {
        expect('(');
        Formula a = parse();
        expect(')');
        return Formula::pre(std::move(a));
      }
      if (w == "atom") {
        std::string o = word();
        auto id = g.find_observation(o);
        if (!id) throw input_error("formula: unknown observation '" + o + "'");
        return Formula::atom(*id);
      }
      return Formula::var(w);
    }
  };

  Parser p{text, g};
  Formula f = p.parse();
  p.skip();
  if (p.i != text.size())
    throw input_error("formula: trailing input at offset " + std::to_string(p.i));
  return f;
}

// ---------------------------------------------------------------------------
// Evaluation

struct EvalStats {
  struct Fixpoint {
    std::string var;
    bool is_mu;
    std::uint32_t iterations;
  };
  std::vector<Fixpoint> fixpoints;
  std::size_t cpre_calls = 0;
  std::size_t max_value_size = 0;  // largest lattice element seen

  void note_size(std::size_t s) {
    if (s > max_value_size) max_value_size = s;
  }
};

// Controllable predecessor in the knowledge arena: states with a letter
// confining every successor to q.
inline StateSet cpre_subset(const SubsetGame& gk, const StateSet& q) {
  check_internal(q.universe() == gk.num_states(),
                 "cpre_subset: value from a different arena");
  StateSet out(gk.num_states());
  for (std::uint32_t i = 0; i < gk.num_states(); ++i) {
    for (std::uint32_t a = 0; a < gk.num_letters(); ++a) {
      bool all_in = true;
      for (auto j : gk.successors(i, a))
        if (!q.test(j)) {
          all_in = false;
          break;
        }
      if (all_in) {
        out.set(i);
        break;
      }
    }
  }
  return out;
}

// Controllable predecessor on the antichain lattice, computed directly from
// the arena: the maximal sets s with a letter such that, block by block, the
// successors of s fit under some element of q.  Candidates are generated per
// letter from choice functions over per-block obligation sets; obligations
// are deduplicated and kept maximal, and dominated partial intersections are
// pruned.
inline Antichain cpre_antichain(const GameStructure& g, const Antichain& q) {
  Antichain out;
  if (q.empty()) return out;
  const std::size_t n = g.num_states();
  const std::size_t n_obs = g.num_observations();

  std::vector<StateSet> restricted(n);
  for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
    // obligations[o]: maximal sets of states whose a-successors inside block
    // o fit under a single element of q.
    std::vector<std::vector<StateSet>> obligations(n_obs);
    bool dead_letter = false;
    for (std::uint32_t o = 0; o < n_obs && !dead_letter; ++o) {
      for (std::uint32_t st = 0; st < n; ++st)
        restricted[st] = g.successors(st, a) & g.observation_block(o);
      Antichain obl;
      for (const auto& target : q.elements()) {
        StateSet t(n);
        for (std::uint32_t st = 0; st < n; ++st)
          if (restricted[st].subset_of(target)) t.set(st);
        obl.insert(t);
      }
      if (obl.empty()) dead_letter = true;
      obligations[o] = obl.elements();
    }
    if (dead_letter) continue;

    // Depth-first product over per-block choices; branches whose running
    // intersection is empty or already dominated cannot yield new maxima.
    auto descend = [&](auto&& self, std::size_t o, const StateSet& cur) -> void {
      if (cur.empty() || out.dominates(cur)) return;
      if (o == n_obs) {
        out.insert(cur);
        return;
      }
      for (const auto& t : obligations[o]) self(self, o + 1, cur & t);
    };
    descend(descend, 0, StateSet::full(n));
  }
  return out;
}

// The two game lattices the formulas are interpreted in.

struct SubsetLattice {
  using Value = StateSet;
  const SubsetGame* gk;

  Value bot() const { return StateSet(gk->num_states()); }
  Value top() const { return StateSet::full(gk->num_states()); }
  Value atom(std::uint32_t obs) const {
    StateSet v(gk->num_states());
    for (std::uint32_t i = 0; i < gk->num_states(); ++i)
      if (gk->obs_of[i] == obs) v.set(i);
    return v;
  }
  Value join(const Value& a, const Value& b) const { return a | b; }
  Value meet(const Value& a, const Value& b) const { return a & b; }
  Value cpre(const Value& v) const { return cpre_subset(*gk, v); }
  bool equal(const Value& a, const Value& b) const { return a == b; }
  bool leq(const Value& a, const Value& b) const { return a.subset_of(b); }
  std::size_t measure(const Value& v) const { return v.count(); }
};

struct AntichainLattice {
  using Value = Antichain;
  const GameStructure* g;

  Value bot() const { return Antichain::bottom(); }
  Value top() const { return Antichain::top(g->num_states()); }
  Value atom(std::uint32_t obs) const {
    return Antichain::singleton(g->observation_block(obs));
  }
  Value join(const Value& a, const Value& b) const { return antik::join(a, b); }
  Value meet(const Value& a, const Value& b) const { return antik::meet(a, b); }
  Value cpre(const Value& v) const { return cpre_antichain(*g, v); }
  bool equal(const Value& a, const Value& b) const { return a == b; }
  bool leq(const Value& a, const Value& b) const { return a.leq(b); }
  std::size_t measure(const Value& v) const { return v.size(); }
};

namespace detail {

template <class Lat>
typename Lat::Value eval_node(
    const Lat& lat, const Formula::Node* n,
    std::vector<std::pair<std::string, typename Lat::Value>>& scope,
    const std::map<std::string, typename Lat::Value>& valuation,
    EvalStats& stats) {
  using Value = typename Lat::Value;
  switch (n->kind) {
    case Formula::Kind::Atom:
      return lat.atom(n->obs);
    case Formula::Kind::Var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (it->first == n->var) return it->second;
      auto f = valuation.find(n->var);
      if (f == valuation.end())
        throw input_error("unbound variable '" + n->var + "'");
      return f->second;
    }
    case Formula::Kind::Or:
      return lat.join(eval_node(lat, n->lhs.get(), scope, valuation, stats),
                      eval_node(lat, n->rhs.get(), scope, valuation, stats));
    case Formula::Kind::And:
      return lat.meet(eval_node(lat, n->lhs.get(), scope, valuation, stats),
                      eval_node(lat, n->rhs.get(), scope, valuation, stats));
    case Formula::Kind::Pre: {
      ++stats.cpre_calls;
      Value v = lat.cpre(eval_node(lat, n->lhs.get(), scope, valuation, stats));
      stats.note_size(lat.measure(v));
      return v;
    }
    case Formula::Kind::Mu:
    case Formula::Kind::Nu: {
      bool is_mu = n->kind == Formula::Kind::Mu;
      Value v = is_mu ? lat.bot() : lat.top();
      scope.emplace_back(n->var, v);
      std::uint32_t iter = 0;
      while (true) {
        ++iter;
        Value next = eval_node(lat, n->lhs.get(), scope, valuation, stats);
        stats.note_size(lat.measure(next));
        // Tarski iteration from bottom (top) yields an increasing
        // (decreasing) chain; anything else is a bug.
        check_internal(is_mu ? lat.leq(scope.back().second, next)
                             : lat.leq(next, scope.back().second),
                       "fixed-point iteration is not monotone");
        if (lat.equal(next, scope.back().second)) break;
        scope.back().second = std::move(next);
      }
      Value result = std::move(scope.back().second);
      scope.pop_back();
      stats.fixpoints.push_back({n->var, is_mu, iter});
      return result;
    }
  }
  throw internal_error("eval: bad node");
}

}  // namespace detail

template <class Lat>
typename Lat::Value eval_formula(
    const Lat& lat, const Formula& phi,
    const std::map<std::string, typename Lat::Value>& valuation = {},
    EvalStats* stats = nullptr) {
  check_internal(phi.valid(), "eval: empty formula");
  EvalStats local;
  EvalStats& st = stats ? *stats : local;
  std::vector<std::pair<std::string, typename Lat::Value>> scope;
  return detail::eval_node(lat, phi.root(), scope, valuation, st);
}

using SubsetValuation = std::map<std::string, StateSet>;
using AntichainValuation = std::map<std::string, Antichain>;

// Interpretation over sets of knowledge-arena states.
inline StateSet eval_subset(const SubsetGame& gk, const Formula& phi,
                            const SubsetValuation& valuation = {},
                            EvalStats* stats = nullptr) {
  return eval_formula(SubsetLattice{&gk}, phi, valuation, stats);
}

// Interpretation over antichains, computed directly from the arena.
inline Antichain eval_antichain(const GameStructure& g, const Formula& phi,
                                const AntichainValuation& valuation = {},
                                EvalStats* stats = nullptr) {
  return eval_formula(AntichainLattice{&g}, phi, valuation, stats);
}

// ---------------------------------------------------------------------------
// Characteristic formulas

namespace detail {

inline Formula atom_disjunction(const std::vector<std::uint32_t>& obs) {
  if (obs.empty()) return Formula::falsum();
  Formula f = Formula::atom(obs.back());
  for (auto it = obs.rbegin() + 1; it != obs.rend(); ++it)
    f = Formula::mk_or(Formula::atom(*it), std::move(f));
  return f;
}

}  // namespace detail

// The closed formula whose value is the winning region for the objective:
//   reach    mu X . or(T, pre(X))
//   safe     nu X . and(T, pre(X))
//   buchi    nu Y . mu X . or(pre(X), and(T, pre(Y)))
//   cobuchi  mu Y . nu X . or(and(T, pre(X)), pre(Y))
//   parity   the alternating nest binding one variable per priority, greatest
//            fixed points on even priorities (minimum priority seen
//            infinitely often must be even).
inline Formula characteristic_formula(const GameStructure& g,
                                      const Objective& obj) {
  using F = Formula;
  auto target_atom = [&]() { return detail::atom_disjunction(obj.target); };
  switch (obj.kind) {
    case Objective::Kind::Reach:
      return F::mu("X", F::mk_or(target_atom(), F::pre(F::var("X"))));
    case Objective::Kind::Safe:
      return F::nu("X", F::mk_and(target_atom(), F::pre(F::var("X"))));
    case Objective::Kind::Buchi:
      return F::nu(
          "Y", F::mu("X", F::mk_or(F::pre(F::var("X")),
                                   F::mk_and(target_atom(),
                                             F::pre(F::var("Y"))))));
    case Objective::Kind::CoBuchi:
      return F::mu(
          "Y", F::nu("X", F::mk_or(F::mk_and(target_atom(),
                                             F::pre(F::var("X"))),
                                   F::pre(F::var("Y")))));
    case Objective::Kind::Parity: {
      check_internal(obj.priority.size() == g.num_observations(),
                     "parity objective must cover all observations");
      std::uint32_t d = 0;
      for (auto p : obj.priority) d = std::max(d, p);
      std::optional<Formula> body;
      for (std::uint32_t i = 0; i <= d; ++i) {
        std::vector<std::uint32_t> obs_i;
        for (std::uint32_t o = 0; o < obj.priority.size(); ++o)
          if (obj.priority[o] == i) obs_i.push_back(o);
        if (obs_i.empty()) continue;
        Formula part = F::mk_and(detail::atom_disjunction(obs_i),
                                 F::pre(F::var("X" + std::to_string(i))));
        body = body ? F::mk_or(std::move(*body), std::move(part))
                    : std::move(part);
      }
      Formula f = std::move(*body);
      for (std::uint32_t i = d + 1; i-- > 0;) {
        std::string x = "X" + std::to_string(i);
        f = (i % 2 == 0) ? F::nu(x, std::move(f)) : F::mu(x, std::move(f));
      }
      return f;
    }
  }
  throw internal_error("characteristic_formula: bad kind");
}

// ---------------------------------------------------------------------------
// Sure winning

// The smallest letter whose successors, block by block, fit under q; the
// one-step test behind strategy resolution.  Monotone in q and antitone in s.
inline std::optional<std::uint32_t> confining_letter(const GameStructure& g,
                                                     const StateSet& s,
                                                     const Antichain& q) {
  for (std::uint32_t a = 0; a < g.num_letters(); ++a) {
    bool ok = true;
    for (std::uint32_t o = 0; o < g.num_observations() && ok; ++o) {
      StateSet next = g.post(s, a) & g.observation_block(o);
      if (next.empty()) continue;
      if (!q.dominates(next)) ok = false;
    }
    if (ok) return a;
  }
  return std::nullopt;
}

// A deterministic strategy over knowledge sets, resolved lazily: any
// knowledge dominated by the winning antichain can be queried.
struct KnowledgeStrategy {
  Objective::Kind kind = Objective::Kind::Reach;
  std::vector<std::uint32_t> target;  // observation ids
  Antichain winning;
  std::vector<Antichain> stages;  // ascending stages of the reachability core

  bool covers(const StateSet& s) const { return winning.dominates(s); }

  std::uint32_t resolve(const GameStructure& g, const StateSet& s) const {
    check_internal(covers(s), "strategy queried outside its winning region");
    bool in_target = false;
    for (auto o : target)
      if (s.subset_of(g.observation_block(o))) in_target = true;

    if (kind == Objective::Kind::Safe ||
        (kind == Objective::Kind::Buchi && in_target)) {
      auto a = confining_letter(g, s, winning);
      check_internal(a.has_value(), "winning region is not closed");
      return *a;
    }
    if (kind == Objective::Kind::Reach && in_target) return 0;

    for (std::size_t j = 0; j < stages.size(); ++j) {
      if (!stages[j].dominates(s)) continue;
      check_internal(j > 0, "non-target knowledge at the base stage");
      auto a = confining_letter(g, s, stages[j - 1]);
      check_internal(a.has_value(), "stage decomposition lost its witness");
      return *a;
    }
    throw internal_error("winning knowledge dominated by no stage");
  }
};

struct SureSolveResult {
  bool verdict = false;
  Antichain winning;
  Formula formula;
  EvalStats stats;
  std::optional<KnowledgeStrategy> strategy;
};

namespace detail {

// Stage antichains of mu X . or(T, pre(X)) relative to an outer region
// (top() for plain reachability, the final region for repeated visits).
inline std::vector<Antichain> reach_stages(const GameStructure& g,
                                           const Antichain& target_part,
                                           EvalStats& stats) {
  std::vector<Antichain> stages;
  Antichain x;  // bottom
  while (true) {
    Antichain next = join(target_part, cpre_antichain(g, x));
    ++stats.cpre_calls;
    stats.note_size(next.size());
    if (next == x) break;
    check_internal(x.leq(next), "reach stages are not increasing");
    stages.push_back(next);
    x = std::move(next);
  }
  return stages;
}

inline Antichain observation_atom(const GameStructure& g,
                                  const std::vector<std::uint32_t>& obs) {
  Antichain a;
  for (auto o : obs) a.insert(g.observation_block(o));
  return a;
}

}  // namespace detail

// Evaluates the characteristic formula on the antichain lattice and decides
// whether the initial state is winning.  For reach, safe, and buchi the
// result carries a knowledge-based strategy extracted from the stage
// antichains; for the other kinds only the region is produced.
inline SureSolveResult solve_sure(const GameStructure& g, const Objective& obj) {
  g.ensure_valid();
  SureSolveResult res;
  res.formula = characteristic_formula(g, obj);
  check_internal(res.formula.closed(), "characteristic formula must be closed");

  Antichain atom_t = detail::observation_atom(g, obj.target);

  switch (obj.kind) {
    case Objective::Kind::Reach: {
      std::vector<Antichain> stages = detail::reach_stages(g, atom_t, res.stats);
      res.winning = stages.empty() ? Antichain::bottom() : stages.back();
      res.stats.fixpoints.push_back(
          {"X", true, static_cast<std::uint32_t>(stages.size() + 1)});
      res.strategy = KnowledgeStrategy{obj.kind, obj.target, res.winning,
                                       std::move(stages)};
      break;
    }
    case Objective::Kind::Safe: {
      Antichain y = Antichain::top(g.num_states());
      std::uint32_t iter = 0;
      while (true) {
        ++iter;
        Antichain next = meet(atom_t, cpre_antichain(g, y));
        ++res.stats.cpre_calls;
        res.stats.note_size(next.size());
        if (next == y) break;
        check_internal(next.leq(y), "safety iteration is not decreasing");
        y = std::move(next);
      }
      res.stats.fixpoints.push_back({"X", false, iter});
      res.winning = y;
      res.strategy = KnowledgeStrategy{obj.kind, obj.target, res.winning, {}};
      break;
    }
    case Objective::Kind::Buchi: {
      Antichain y = Antichain::top(g.num_states());
      std::vector<Antichain> stages;
      std::uint32_t outer = 0;
      while (true) {
        ++outer;
        Antichain recharge = meet(atom_t, cpre_antichain(g, y));
        ++res.stats.cpre_calls;
        stages = detail::reach_stages(g, recharge, res.stats);
        Antichain next = stages.empty() ? Antichain::bottom() : stages.back();
        if (next == y) break;
        check_internal(next.leq(y), "outer iteration is not decreasing");
        y = std::move(next);
      }
      res.stats.fixpoints.push_back({"Y", false, outer});
      res.winning = y;
      res.strategy = KnowledgeStrategy{obj.kind, obj.target, res.winning,
                                       std::move(stages)};
      break;
    }
    case Objective::Kind::CoBuchi:
    case Objective::Kind::Parity:
      res.winning = eval_antichain(g, res.formula, {}, &res.stats);
      break;
  }

  StateSet init(g.num_states());
  init.set(g.initial());
  res.verdict = res.winning.dominates(init);
  return res;
}

}  // namespace antik
