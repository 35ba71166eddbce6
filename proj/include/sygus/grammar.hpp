#pragma once

// Grammar engine: normalization of grammar definitions into rule sets,
// membership (does the grammar generate a term), size-bounded enumeration,
// and weighted-derivation sets.
//
// Weight sets are unions of linear sets {base + k1*p1 + ... : ki >= 0}.
// Pumping arises only from unit-rule cycles; a cycle's weight is attached to
// exactly the bases whose unit walk can reach it, which keeps the
// representation exact.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sygus/ast.hpp"
#include "sygus/eval.hpp"
#include "sygus/printer.hpp"
#include "sygus/theories.hpp"

namespace sygus {

struct Rule {
  enum Kind { ConstantClass, VariableClass, Concrete } kind;
  Sort classSort;                         // Constant/Variable
  std::vector<std::string> matchingVars;  // Variable
  TermPtr base;                           // Concrete (annotation-stripped)
  std::map<std::string, long long> weights;  // keyword (no ':') -> value
  int unitTarget = -1;  // nonterminal index when base is a lone nonterminal

  long long weightFor(const std::string& kw, long long dflt) const {
    auto it = weights.find(kw);
    return it == weights.end() ? dflt : it->second;
  }
};

struct RuleSet {
  std::string owner;
  std::vector<SortedVar> args;
  std::vector<SortedVar> nonterminals;
  std::vector<std::vector<Rule>> rules;
  std::map<std::string, int> ntIndex;
  std::map<std::string, long long> weightDefaults;  // keyword -> default

  int indexOf(const std::string& name) const {
    auto it = ntIndex.find(name);
    return it == ntIndex.end() ? -1 : it->second;
  }
  long long defaultFor(const std::string& kw) const {
    auto it = weightDefaults.find(kw);
    return it == weightDefaults.end() ? 0 : it->second;
  }
};

// ---- compile -------------------------------------------------------------

struct SynthFunEntry {
  std::string name;
  std::vector<SortedVar> args;
  Sort returnSort;
  std::optional<GrammarDef> grammar;
};

inline RuleSet compileGrammar(const GrammarDef& g, const SynthFunEntry& f,
                              const Signature& sig,
                              const std::map<std::string, long long>&
                                  weightDefaults = {}) {
  RuleSet rs;
  rs.owner = f.name;
  rs.weightDefaults = weightDefaults;
  for (auto& a : f.args)
    rs.args.push_back(SortedVar{a.name, resolveSort(sig, a.sort)});
  for (auto& nt : g.nonterminals) {
    if (rs.ntIndex.count(nt.name))
      throw SygusError("E-GRAMMAR", Span{},
                       "duplicate nonterminal '" + nt.name + "'");
    rs.ntIndex[nt.name] = static_cast<int>(rs.nonterminals.size());
    rs.nonterminals.push_back(SortedVar{nt.name, resolveSort(sig, nt.sort)});
  }
  Sort startSort = rs.nonterminals[0].sort;
  Sort retSort = resolveSort(sig, f.returnSort);
  if (startSort != retSort)
    throw SygusError("E-GRAMMAR-SORT", Span{},
                     "start symbol sort " + toString(startSort) +
                         " differs from return sort " + toString(retSort));

  // rule-body environment: argument variables, shadowed by nonterminals
  SortEnv env;
  for (auto& a : rs.args) env[a.name] = a.sort;
  for (auto& nt : rs.nonterminals) env[nt.name] = nt.sort;

  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) {
    const Sort& tau = rs.nonterminals[i].sort;
    std::vector<Rule> compiled;
    for (auto& gt : g.rules[i]) {
      Rule rule;
      if (auto* c = std::get_if<GTermConstant>(&gt.node)) {
        rule.kind = Rule::ConstantClass;
        rule.classSort = resolveSort(sig, c->sort);
        if (rule.classSort != tau)
          throw SygusError("E-GRAMMAR-SORT", Span{},
                           "Constant class sort differs from the "
                           "nonterminal's sort");
      } else if (auto* v = std::get_if<GTermVariable>(&gt.node)) {
        rule.kind = Rule::VariableClass;
        rule.classSort = resolveSort(sig, v->sort);
        if (rule.classSort != tau)
          throw SygusError("E-GRAMMAR-SORT", Span{},
                           "Variable class sort differs from the "
                           "nonterminal's sort");
        for (auto& a : rs.args)
          if (a.sort == rule.classSort) rule.matchingVars.push_back(a.name);
      } else {
        auto* r = std::get_if<GTermRule>(&gt.node);
        rule.kind = Rule::Concrete;
        TermPtr base = r->term;
        // strip exactly one outer annotation layer; its weight attributes
        // become the rule's weight map
        if (auto* an = asAnnotated(*base)) {
          std::map<std::string, int> counts;
          for (auto& attr : an->attrs) {
            std::string kw = attr.keyword.substr(1);
            auto num = attr.numeralValue();
            if (num && *num >= 0) {
              if (++counts[kw] == 1)
                rule.weights[kw] = *num;
              else
                rule.weights.erase(kw);  // not exactly one: fall back
            }
          }
          base = an->body;
        }
        if (auto* app = asApply(*base)) {
          if (app->head.is("Constant") || app->head.is("Variable"))
            throw SygusError("E-GRAMMAR", base->span,
                             "annotations are not allowed around " +
                                 app->head.base + " classes");
        }
        rule.base = base;
        Sort got = sortCheck(*base, sig, env);
        if (got != tau)
          throw SygusError("E-GRAMMAR-SORT", base->span,
                           "rule " + toString(*base) + " has sort " +
                               toString(got) + ", nonterminal expects " +
                               toString(tau));
        if (auto* id = asIdent(*base)) {
          if (!id->id.indexed()) {
            auto it = rs.ntIndex.find(id->id.base);
            if (it != rs.ntIndex.end()) rule.unitTarget = it->second;
          }
        }
      }
      compiled.push_back(std::move(rule));
    }
    rs.rules.push_back(std::move(compiled));
  }
  return rs;
}

// ---- membership ----------------------------------------------------------

namespace detail {

// Unit-rule reachability closure (indices of nonterminals reachable from y
// via chains of unit rules, including y itself).
inline std::vector<std::set<int>> unitClosure(const RuleSet& rs) {
  std::size_t n = rs.nonterminals.size();
  std::vector<std::set<int>> reach(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<int> stack{static_cast<int>(y)};
    while (!stack.empty()) {
      int z = stack.back();
      stack.pop_back();
      if (reach[y].count(z)) continue;
      reach[y].insert(z);
      for (auto& r : rs.rules[z])
        if (r.kind == Rule::Concrete && r.unitTarget >= 0)
          stack.push_back(r.unitTarget);
    }
  }
  return reach;
}

inline const Term& stripAnnotations(const Term& t) {
  const Term* cur = &t;
  while (auto* an = asAnnotated(*cur)) cur = an->body.get();
  return *cur;
}

// Does `r` belong to the constant class of sort σ? Plain literals of that
// sort plus unary-negated numerals/decimals for Int/Real.
inline bool isConstantOfSort(const Term& r, const Sort& sort) {
  if (auto* lit = asLiteral(r)) {
    switch (lit->lit.kind) {
      case LitKind::Numeral: return isIntSort(sort);
      case LitKind::Decimal: return isRealSort(sort);
      case LitKind::Boolean: return isBoolSort(sort);
      case LitKind::Hex:
      case LitKind::Binary:
        return isBitVecSort(sort) &&
               bvLiteralWidth(lit->lit) == bitVecWidth(sort);
      case LitKind::String: return isStringSort(sort);
    }
  }
  if (auto* neg = asNegatedNumeral(r)) {
    if (neg->kind == LitKind::Numeral) return isIntSort(sort);
    return isRealSort(sort);
  }
  return false;
}

}  // namespace detail

class GrammarMatcher {
 public:
  explicit GrammarMatcher(const RuleSet& rs)
      : rs_(rs), unitReach_(detail::unitClosure(rs)) {}

  const RuleSet& ruleSet() const { return rs_; }
  const std::vector<std::set<int>>& unitReach() const { return unitReach_; }

  bool generates(int nt, const Term& r) {
    const Term& t = detail::stripAnnotations(r);
    auto key = std::make_pair(nt, toString(t));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool result = false;
    for (int z : unitReach_[nt]) {
      for (auto& rule : rs_.rules[z]) {
        if (matchesRule(rule, t)) {
          result = true;
          break;
        }
      }
      if (result) break;
    }
    memo_[key] = result;
    return result;
  }

  bool generates(const std::string& nt, const Term& r) {
    int i = rs_.indexOf(nt);
    if (i < 0)
      throw SygusError("E-GRAMMAR", Span{}, "unknown nonterminal '" + nt + "'");
    return generates(i, r);
  }

  // Deterministic hole collection: matches `base` (a non-unit concrete rule
  // body) against `r`, returning (nonterminal, subterm) pairs in left-to-
  // right order, or false.
  bool matchCollect(const Term& base, const Term& r,
                    std::vector<std::pair<int, const Term*>>& holes) const {
    const Term& b = detail::stripAnnotations(base);
    const Term& t = detail::stripAnnotations(r);
    if (auto* id = asIdent(b)) {
      if (!id->id.indexed()) {
        int nt = rs_.indexOf(id->id.base);
        if (nt >= 0) {
          holes.emplace_back(nt, &t);
          return true;
        }
      }
      auto* rid = asIdent(t);
      return rid && rid->id == id->id;
    }
    if (auto* lit = asLiteral(b)) {
      auto* rlit = asLiteral(t);
      return rlit && rlit->lit == lit->lit;
    }
    if (auto* app = asApply(b)) {
      auto* rapp = asApply(t);
      if (!rapp || !(rapp->head == app->head) ||
          rapp->args.size() != app->args.size())
        return false;
      for (std::size_t i = 0; i < app->args.size(); ++i)
        if (!matchCollect(*app->args[i], *rapp->args[i], holes)) return false;
      return true;
    }
    return false;  // binders never occur in rules
  }

 private:
  bool matchesRule(const Rule& rule, const Term& t) {
    switch (rule.kind) {
      case Rule::ConstantClass:
        return detail::isConstantOfSort(t, rule.classSort);
      case Rule::VariableClass: {
        auto* id = asIdent(t);
        if (!id || id->id.indexed()) return false;
        return std::find(rule.matchingVars.begin(), rule.matchingVars.end(),
                         id->id.base) != rule.matchingVars.end();
      }
      case Rule::Concrete: {
        if (rule.unitTarget >= 0) return false;  // handled by the closure
        std::vector<std::pair<int, const Term*>> holes;
        if (!matchCollect(*rule.base, t, holes)) return false;
        for (auto& [nt, sub] : holes)
          if (!generates(nt, *sub)) return false;
        return true;
      }
    }
    return false;
  }

  const RuleSet& rs_;
  std::vector<std::set<int>> unitReach_;
  std::map<std::pair<int, std::string>, bool> memo_;
};

// ---- enumeration ---------------------------------------------------------

inline std::size_t termSize(const Term& t) {
  if (auto* a = asApply(t)) {
    std::size_t n = 1;
    for (auto& arg : a->args) n += termSize(*arg);
    return n;
  }
  if (auto* an = asAnnotated(t)) return termSize(*an->body);
  if (auto* b = asBinder(t)) return 1 + b->binders.size() + termSize(*b->body);
  if (auto* l = asLet(t)) {
    std::size_t n = 1 + termSize(*l->body);
    for (auto& [name, bt] : l->bindings) n += 1 + termSize(*bt);
    return n;
  }
  return 1;
}

// Finite documented samples used when enumerating Constant classes.
inline std::vector<TermPtr> constantSamples(const Sort& sort) {
  if (isIntSort(sort))
    return {mkNumeral("0"), mkNumeral("1"), mkNumeral("2"),
            mkApply("-", {mkNumeral("1")}), mkApply("-", {mkNumeral("2")})};
  if (isRealSort(sort))
    return {mkLiteral(Literal{LitKind::Decimal, "0.0"}),
            mkLiteral(Literal{LitKind::Decimal, "1.0"}),
            mkApply("-", {mkLiteral(Literal{LitKind::Decimal, "1.0"})})};
  if (isBoolSort(sort)) return {mkBool(true), mkBool(false)};
  if (isStringSort(sort))
    return {mkLiteral(Literal{LitKind::String, "\"\""}),
            mkLiteral(Literal{LitKind::String, "\"a\""}),
            mkLiteral(Literal{LitKind::String, "\"A\""})};
  if (isBitVecSort(sort)) {
    unsigned w = bitVecWidth(sort);
    auto bvLit = [&](mpz_class bits) {
      BVV v{w, std::move(bits), 0};
      return mkLiteral(Literal{
          w % 4 == 0 ? LitKind::Hex : LitKind::Binary, printBV(v)});
    };
    return {bvLit(0), bvLit((mpz_class(1) << w) - 1), bvLit(1)};
  }
  return {};
}

struct EnumResult {
  std::vector<TermPtr> terms;  // nondecreasing size, no duplicates
  bool sampled = false;        // a Constant class was sampled
};

inline EnumResult enumerateGrammar(const RuleSet& rs, int startNt,
                                   std::size_t maxSize) {
  std::size_t n = rs.nonterminals.size();
  auto unitReach = detail::unitClosure(rs);
  // terms[y][s] = derived terms of size exactly s (1-based)
  std::vector<std::vector<std::vector<TermPtr>>> terms(
      n, std::vector<std::vector<TermPtr>>(maxSize + 1));
  std::vector<std::set<std::string>> seen(n);
  EnumResult result;

  // expands rule body `base` into concrete instantiations of size <= budget,
  // grouped by exact size; nonterminal holes draw from previous size rows
  struct Expander {
    const RuleSet& rs;
    const std::vector<std::vector<std::vector<TermPtr>>>& terms;

    // returns per-size lists for the fragment
    std::vector<std::vector<TermPtr>> expand(const Term& base,
                                             std::size_t budget) {
      std::vector<std::vector<TermPtr>> out(budget + 1);
      const Term& b = detail::stripAnnotations(base);
      if (auto* id = asIdent(b)) {
        if (!id->id.indexed()) {
          int nt = rs.indexOf(id->id.base);
          if (nt >= 0) {
            for (std::size_t s = 1; s <= budget; ++s)
              out[s] = terms[nt][s];
            return out;
          }
        }
        if (budget >= 1) out[1].push_back(mkIdent(id->id));
        return out;
      }
      if (asLiteral(b)) {
        if (budget >= 1)
          out[1].push_back(mkLiteral(asLiteral(b)->lit));
        return out;
      }
      auto* app = asApply(b);
      if (budget < 1 + app->args.size()) return out;
      std::size_t argsBudget = budget - 1;
      std::vector<std::vector<std::vector<TermPtr>>> parts;
      for (auto& arg : app->args)
        parts.push_back(expand(*arg, argsBudget));
      // partial[s] = argument-vector prefixes with total size exactly s
      std::vector<std::vector<std::vector<TermPtr>>> partial(argsBudget + 1);
      partial[0].push_back({});
      for (auto& part : parts) {
        std::vector<std::vector<std::vector<TermPtr>>> next(argsBudget + 1);
        for (std::size_t s = 0; s <= argsBudget; ++s) {
          if (partial[s].empty()) continue;
          for (std::size_t extra = 1;
               extra < part.size() && s + extra <= argsBudget; ++extra) {
            for (auto& frag : part[extra]) {
              for (auto& vec : partial[s]) {
                auto copy = vec;
                copy.push_back(frag);
                next[s + extra].push_back(std::move(copy));
              }
            }
          }
        }
        partial = std::move(next);
      }
      for (std::size_t s = 0; s <= argsBudget; ++s)
        for (auto& vec : partial[s])
          out[s + 1].push_back(mkApply(app->head, vec));
      return out;
    }
  };

  Expander ex{rs, terms};

  for (std::size_t size = 1; size <= maxSize; ++size) {
    // direct productions of exact `size` per nonterminal
    std::vector<std::vector<TermPtr>> direct(n);
    for (std::size_t z = 0; z < n; ++z) {
      for (auto& rule : rs.rules[z]) {
        if (rule.kind == Rule::ConstantClass) {
          for (auto& c : constantSamples(rule.classSort))
            if (termSize(*c) == size) direct[z].push_back(c);
          result.sampled = true;
        } else if (rule.kind == Rule::VariableClass) {
          if (size == 1)
            for (auto& v : rule.matchingVars)
              direct[z].push_back(mkVar(v));
        } else if (rule.unitTarget < 0) {
          auto got = ex.expand(*rule.base, size);
          if (size < got.size())
            for (auto& t : got[size]) direct[z].push_back(t);
        }
      }
    }
    // fold in unit reachability and dedupe
    for (std::size_t y = 0; y < n; ++y) {
      for (int z : unitReach[y]) {
        for (auto& t : direct[z]) {
          std::string key = toString(*t);
          if (seen[y].count(key)) continue;
          seen[y].insert(key);
          terms[y][size].push_back(t);
        }
      }
    }
  }
  for (std::size_t s = 1; s <= maxSize; ++s)
    for (auto& t : terms[startNt][s]) result.terms.push_back(t);
  return result;
}

inline EnumResult enumerateGrammar(const RuleSet& rs, const std::string& nt,
                                   std::size_t maxSize) {
  int i = rs.indexOf(nt);
  if (i < 0)
    throw SygusError("E-GRAMMAR", Span{}, "unknown nonterminal '" + nt + "'");
  return enumerateGrammar(rs, i, maxSize);
}

// ---- weight sets ---------------------------------------------------------

struct LinearSet {
  long long base = 0;
  std::set<long long> pumps;  // positive increments

  friend bool operator<(const LinearSet& a, const LinearSet& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.pumps < b.pumps;
  }
  friend bool operator==(const LinearSet& a, const LinearSet& b) {
    return a.base == b.base && a.pumps == b.pumps;
  }
};

struct WeightSet {
  std::vector<LinearSet> parts;  // empty = no derivation

  bool empty() const { return parts.empty(); }

  std::set<long long> bases() const {
    std::set<long long> out;
    for (auto& p : parts) out.insert(p.base);
    return out;
  }
  std::set<long long> pumps() const {
    std::set<long long> out;
    for (auto& p : parts) out.insert(p.pumps.begin(), p.pumps.end());
    return out;
  }

  void normalize() {
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    // drop parts subsumed by another with the same base and more pumps
    std::vector<LinearSet> kept;
    for (auto& p : parts) {
      bool subsumed = false;
      for (auto& q : parts) {
        if (&p == &q) continue;
        if (q.base == p.base &&
            std::includes(q.pumps.begin(), q.pumps.end(), p.pumps.begin(),
                          p.pumps.end()) &&
            q.pumps.size() > p.pumps.size()) {
          subsumed = true;
          break;
        }
      }
      if (!subsumed) kept.push_back(p);
    }
    parts = std::move(kept);
  }
};

inline WeightSet wsUnion(const WeightSet& a, const WeightSet& b) {
  WeightSet out = a;
  out.parts.insert(out.parts.end(), b.parts.begin(), b.parts.end());
  out.normalize();
  return out;
}

inline WeightSet wsSum(const WeightSet& a, const WeightSet& b) {
  WeightSet out;
  for (auto& x : a.parts)
    for (auto& y : b.parts) {
      LinearSet l;
      l.base = x.base + y.base;
      l.pumps = x.pumps;
      l.pumps.insert(y.pumps.begin(), y.pumps.end());
      out.parts.push_back(std::move(l));
    }
  out.normalize();
  return out;
}

inline WeightSet wsSingleton(long long k) {
  return WeightSet{{LinearSet{k, {}}}};
}

inline bool weightAchievable(const WeightSet& ws, long long k) {
  if (k < 0) return false;
  for (auto& p : ws.parts) {
    if (k < p.base) continue;
    long long target = k - p.base;
    // coin problem over the pumps
    std::vector<char> dp(static_cast<std::size_t>(target) + 1, 0);
    dp[0] = 1;
    for (long long v = 1; v <= target; ++v)
      for (long long c : p.pumps)
        if (c > 0 && c <= v && dp[static_cast<std::size_t>(v - c)]) {
          dp[static_cast<std::size_t>(v)] = 1;
          break;
        }
    if (dp[static_cast<std::size_t>(target)]) return true;
  }
  return false;
}

namespace detail {

struct UnitEdge {
  int from, to;
  long long weight;
};

// All vertex-simple paths y -> z in the unit graph, as (edge index lists).
inline void simplePaths(const std::vector<UnitEdge>& edges, int from, int to,
                        std::vector<int>& path, std::vector<char>& visited,
                        std::vector<std::vector<int>>& out) {
  if (from == to) out.push_back(path);
  // continue even at `to` only via revisits, which simple paths forbid;
  // a path may pass through `to`? no: vertex-simple, and arriving at `to`
  // is terminal for the path decomposition
  if (from == to) return;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from != from) continue;
    if (visited[edges[i].to]) continue;
    visited[edges[i].to] = 1;
    path.push_back(static_cast<int>(i));
    simplePaths(edges, edges[i].to, to, path, visited, out);
    path.pop_back();
    visited[edges[i].to] = 0;
  }
}

// All simple cycles, each as a set of vertices plus total weight.
inline void simpleCycles(const std::vector<UnitEdge>& edges, std::size_t n,
                         std::vector<std::pair<std::set<int>, long long>>& out) {
  // enumerate cycles whose minimal vertex is `start` to avoid duplicates
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<char> visited(n, 0);
    std::vector<int> stack;
    std::function<void(int, long long, std::set<int>&)> dfs =
        [&](int v, long long w, std::set<int>& verts) {
          for (auto& e : edges) {
            if (e.from != v) continue;
            if (e.to == static_cast<int>(start)) {
              out.emplace_back(verts, w + e.weight);
              continue;
            }
            if (e.to < static_cast<int>(start) || visited[e.to]) continue;
            visited[e.to] = 1;
            verts.insert(e.to);
            dfs(e.to, w + e.weight, verts);
            verts.erase(e.to);
            visited[e.to] = 0;
          }
        };
    visited[start] = 1;
    std::set<int> verts{static_cast<int>(start)};
    dfs(static_cast<int>(start), 0, verts);
  }
}

}  // namespace detail

class WeightAnalyzer {
 public:
  WeightAnalyzer(const RuleSet& rs, std::string keyword)
      : rs_(rs),
        matcher_(rs),
        keyword_(std::move(keyword)),
        dflt_(rs.defaultFor(keyword_)) {
    buildUnitGraph();
  }

  // Weight set for deriving r from nonterminal nt.
  WeightSet weightSets(int nt, const Term& r) {
    const Term& t = detail::stripAnnotations(r);
    auto key = std::make_pair(nt, toString(t));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    WeightSet out;
    std::size_t n = rs_.nonterminals.size();
    for (std::size_t z = 0; z < n; ++z) {
      WeightSet direct = directWeights(static_cast<int>(z), t);
      if (direct.empty()) continue;
      WeightSet walk = unitWalkWeights(nt, static_cast<int>(z));
      if (walk.empty()) continue;
      out = wsUnion(out, wsSum(walk, direct));
    }
    memo_[key] = out;
    return out;
  }

  WeightSet weightSets(const std::string& nt, const Term& r) {
    int i = rs_.indexOf(nt);
    if (i < 0)
      throw SygusError("E-GRAMMAR", Span{},
                       "unknown nonterminal '" + nt + "'");
    return weightSets(i, r);
  }

 private:
  void buildUnitGraph() {
    for (std::size_t z = 0; z < rs_.rules.size(); ++z)
      for (auto& rule : rs_.rules[z])
        if (rule.kind == Rule::Concrete && rule.unitTarget >= 0)
          edges_.push_back(detail::UnitEdge{static_cast<int>(z),
                                            rule.unitTarget,
                                            rule.weightFor(keyword_, dflt_)});
    detail::simpleCycles(edges_, rs_.nonterminals.size(), cycles_);
  }

  // Exact walk-weight set from y to z over the unit graph: for each simple
  // path, attach every simple cycle transitively connected to it.
  WeightSet unitWalkWeights(int y, int z) {
    auto key = std::make_pair(y, z);
    auto it = walkMemo_.find(key);
    if (it != walkMemo_.end()) return it->second;
    std::vector<std::vector<int>> paths;
    std::vector<int> path;
    std::vector<char> visited(rs_.nonterminals.size(), 0);
    visited[y] = 1;
    detail::simplePaths(edges_, y, z, path, visited, paths);
    WeightSet out;
    for (auto& p : paths) {
      LinearSet l;
      std::set<int> verts{y};
      for (int ei : p) {
        l.base += edges_[ei].weight;
        verts.insert(edges_[ei].to);
      }
      // closure: repeatedly attach cycles sharing a vertex
      bool changed = true;
      std::vector<char> used(cycles_.size(), 0);
      while (changed) {
        changed = false;
        for (std::size_t ci = 0; ci < cycles_.size(); ++ci) {
          if (used[ci]) continue;
          bool touches = false;
          for (int v : cycles_[ci].first)
            if (verts.count(v)) {
              touches = true;
              break;
            }
          if (!touches) continue;
          used[ci] = 1;
          changed = true;
          verts.insert(cycles_[ci].first.begin(), cycles_[ci].first.end());
          if (cycles_[ci].second > 0) l.pumps.insert(cycles_[ci].second);
        }
      }
      out.parts.push_back(std::move(l));
    }
    out.normalize();
    walkMemo_[key] = out;
    return out;
  }

  WeightSet directWeights(int z, const Term& t) {
    WeightSet out;
    for (auto& rule : rs_.rules[z]) {
      switch (rule.kind) {
        case Rule::ConstantClass:
          if (detail::isConstantOfSort(t, rule.classSort))
            out = wsUnion(out, wsSingleton(dflt_));
          break;
        case Rule::VariableClass: {
          auto* id = asIdent(t);
          if (id && !id->id.indexed() &&
              std::find(rule.matchingVars.begin(), rule.matchingVars.end(),
                        id->id.base) != rule.matchingVars.end())
            out = wsUnion(out, wsSingleton(dflt_));
          break;
        }
        case Rule::Concrete: {
          if (rule.unitTarget >= 0) break;  // handled via the unit graph
          std::vector<std::pair<int, const Term*>> holes;
          if (!matcher_.matchCollect(*rule.base, t, holes)) break;
          WeightSet acc = wsSingleton(rule.weightFor(keyword_, dflt_));
          bool dead = false;
          for (auto& [nt, sub] : holes) {
            WeightSet sw = weightSets(nt, *sub);
            if (sw.empty()) {
              dead = true;
              break;
            }
            acc = wsSum(acc, sw);
          }
          if (!dead) out = wsUnion(out, acc);
          break;
        }
      }
    }
    return out;
  }

  const RuleSet& rs_;
  GrammarMatcher matcher_;
  std::string keyword_;
  long long dflt_;
  std::vector<detail::UnitEdge> edges_;
  std::vector<std::pair<std::set<int>, long long>> cycles_;
  std::map<std::pair<int, std::string>, WeightSet> memo_;
  std::map<std::pair<int, int>, WeightSet> walkMemo_;
};

}  // namespace sygus
