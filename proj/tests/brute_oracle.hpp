#pragma once

// Independent brute-force oracles for grammar derivations, shared by the
// grammar test suite and the acceptance driver.
//
// A derivation step rewrites one nonterminal occurrence by one rule.  For a
// fixed term we enumerate every derivation with at most `budget` steps and
// record its (steps, total weight) pair.  Written against the RuleSet data
// only; it shares no matching machinery with GrammarMatcher or
// WeightAnalyzer.

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sygus/grammar.hpp"
#include "sygus/printer.hpp"

namespace bruteoracle {

using namespace sygus;

inline bool leafEqual(const Term& a, const Term& b) {
  return toString(a) == toString(b);
}

// Matches a concrete rule pattern against t; nonterminal occurrences in the
// pattern become (nt index, subterm) goals.
inline bool matchPattern(const RuleSet& rs, const Term& pattern,
                         const Term& t,
                         std::vector<std::pair<int, const Term*>>& goals) {
  if (auto* id = asIdent(pattern)) {
    if (!id->id.indexed()) {
      int nt = rs.indexOf(id->id.base);
      if (nt >= 0) {
        goals.emplace_back(nt, &t);
        return true;
      }
    }
    return leafEqual(pattern, t);
  }
  if (asLiteral(pattern)) return leafEqual(pattern, t);
  auto* pa = asApply(pattern);
  if (!pa) return false;
  auto* ta = asApply(t);
  if (!ta) return false;
  if (toString(Term{TermIdent{pa->head}, {}}) !=
      toString(Term{TermIdent{ta->head}, {}}))
    return false;
  if (pa->args.size() != ta->args.size()) return false;
  for (std::size_t i = 0; i < pa->args.size(); ++i)
    if (!matchPattern(rs, *pa->args[i], *ta->args[i], goals)) return false;
  return true;
}

using StepWeight = std::set<std::pair<int, long long>>;

inline StepWeight bruteDerive(const RuleSet& rs, int nt, const Term& t,
                              int budget, const std::string& kw);

inline StepWeight combineGoals(
    const RuleSet& rs,
    const std::vector<std::pair<int, const Term*>>& goals, std::size_t idx,
    int budget, const std::string& kw) {
  StepWeight out;
  if (idx == goals.size()) {
    out.insert({0, 0});
    return out;
  }
  for (auto& [s1, w1] :
       bruteDerive(rs, goals[idx].first, *goals[idx].second, budget, kw))
    for (auto& [s2, w2] : combineGoals(rs, goals, idx + 1, budget - s1, kw))
      out.insert({s1 + s2, w1 + w2});
  return out;
}

inline StepWeight bruteDerive(const RuleSet& rs, int nt, const Term& t,
                              int budget, const std::string& kw) {
  StepWeight out;
  if (budget <= 0) return out;
  long long dflt = rs.defaultFor(kw);
  for (auto& rule : rs.rules[nt]) {
    if (rule.kind != Rule::Concrete) continue;
    std::vector<std::pair<int, const Term*>> goals;
    if (!matchPattern(rs, *rule.base, t, goals)) continue;
    long long rw = rule.weightFor(kw, dflt);
    for (auto& [s, w] : combineGoals(rs, goals, 0, budget - 1, kw))
      out.insert({s + 1, w + rw});
  }
  return out;
}

inline std::set<long long> bruteWeights(const RuleSet& rs, int nt,
                                        const Term& t, int budget,
                                        const std::string& kw) {
  std::set<long long> ws;
  for (auto& [s, w] : bruteDerive(rs, nt, t, budget, kw)) ws.insert(w);
  return ws;
}

// ---- exhaustive term generation over the grammar signature ---------------
//
// All terms of size <= maxSize over the atoms and operators that occur in
// the rule set, independent of the grammar's structure.

struct GrammarSig {
  std::vector<TermPtr> atoms;                   // leaves
  std::vector<std::pair<Identifier, int>> ops;  // head, arity
};

inline void collectSig(const RuleSet& rs, const Term& t, GrammarSig& sig,
                       std::set<std::string>& seen) {
  if (auto* id = asIdent(t)) {
    if (!id->id.indexed() && rs.indexOf(id->id.base) >= 0) return;  // NT
    if (seen.insert(toString(t)).second)
      sig.atoms.push_back(mkTerm(Term{t.node, {}}));
    return;
  }
  if (asLiteral(t)) {
    if (seen.insert(toString(t)).second)
      sig.atoms.push_back(mkTerm(Term{t.node, {}}));
    return;
  }
  if (auto* a = asApply(t)) {
    std::string key = "op:" + toString(Term{TermIdent{a->head}, {}}) + "/" +
                      std::to_string(a->args.size());
    if (seen.insert(key).second)
      sig.ops.emplace_back(a->head, static_cast<int>(a->args.size()));
    for (auto& arg : a->args) collectSig(rs, *arg, sig, seen);
  }
}

inline GrammarSig signatureOf(const RuleSet& rs) {
  GrammarSig sig;
  std::set<std::string> seen;
  for (auto& group : rs.rules)
    for (auto& rule : group) {
      if (rule.kind == Rule::VariableClass) {
        for (auto& v : rule.matchingVars)
          if (seen.insert(v).second) sig.atoms.push_back(mkVar(v));
        continue;
      }
      if (rule.kind == Rule::Concrete) collectSig(rs, *rule.base, sig, seen);
    }
  return sig;
}

inline std::vector<TermPtr> allTerms(const GrammarSig& sig,
                                     std::size_t maxSize) {
  // terms[k] = all terms of size exactly k+1
  std::vector<std::vector<TermPtr>> bySize(maxSize);
  bySize[0] = sig.atoms;
  for (std::size_t size = 2; size <= maxSize; ++size) {
    for (auto& [head, arity] : sig.ops) {
      if (arity + 1 > static_cast<int>(size)) continue;
      // distribute size-1 over `arity` children
      std::vector<std::size_t> pick(arity, 1);
      std::vector<TermPtr> children(arity);
      std::function<void(int, std::size_t)> rec = [&](int i,
                                                      std::size_t left) {
        if (i == arity) {
          if (left != 0) return;
          TermPtr t = mkApply(head, children);
          bySize[size - 1].push_back(t);
          return;
        }
        for (std::size_t c = 1; c + (arity - i - 1) <= left; ++c) {
          for (auto& ch : bySize[c - 1]) {
            children[i] = ch;
            rec(i + 1, left - c);
          }
        }
      };
      rec(0, size - 1);
    }
  }
  std::vector<TermPtr> out;
  for (auto& v : bySize) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace bruteoracle
