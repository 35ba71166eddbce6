#pragma once

// Capture-avoiding substitution, macro expansion with beta-reduction, and
// concrete evaluation of binder-free (plus let) terms over the builtin
// theories and user datatypes. Recursive definitions are fuel-bounded.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sygus/ast.hpp"
#include "sygus/theories.hpp"
#include "sygus/value.hpp"

namespace sygus {

// ---- free variables & fresh names ---------------------------------------

inline void collectFreeVars(const Term& t, std::set<std::string>& bound,
                            std::set<std::string>& out) {
  if (auto* id = asIdent(t)) {
    if (!id->id.indexed() && !bound.count(id->id.base))
      out.insert(id->id.base);
    return;
  }
  if (asLiteral(t)) return;
  if (auto* a = asApply(t)) {
    for (auto& arg : a->args) collectFreeVars(*arg, bound, out);
    return;
  }
  if (auto* an = asAnnotated(t)) {
    collectFreeVars(*an->body, bound, out);
    return;
  }
  if (auto* b = asBinder(t)) {
    std::set<std::string> inner = bound;
    for (auto& sv : b->binders) inner.insert(sv.name);
    collectFreeVars(*b->body, inner, out);
    return;
  }
  auto* l = asLet(t);
  for (auto& [name, bt] : l->bindings) collectFreeVars(*bt, bound, out);
  std::set<std::string> inner = bound;
  for (auto& [name, bt] : l->bindings) inner.insert(name);
  collectFreeVars(*l->body, inner, out);
}

inline std::set<std::string> freeVars(const Term& t) {
  std::set<std::string> bound, out;
  collectFreeVars(t, bound, out);
  return out;
}

// Fresh-name scheme: base!k with the smallest k >= 0 avoiding `taken`.
inline std::string freshName(const std::string& base,
                             const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int k = 0;; ++k) {
    std::string cand = base + "!" + std::to_string(k);
    if (!taken.count(cand)) return cand;
  }
}

// ---- substitution --------------------------------------------------------

inline TermPtr substitute(const TermPtr& t,
                          const std::map<std::string, TermPtr>& binding);

inline TermPtr substituteImpl(const TermPtr& t,
                              const std::map<std::string, TermPtr>& binding) {
  if (binding.empty()) return t;
  if (auto* id = asIdent(*t)) {
    if (!id->id.indexed()) {
      auto it = binding.find(id->id.base);
      if (it != binding.end()) return it->second;
    }
    return t;
  }
  if (asLiteral(*t)) return t;
  if (auto* a = asApply(*t)) {
    std::vector<TermPtr> args;
    for (auto& arg : a->args) args.push_back(substitute(arg, binding));
    return mkApply(a->head, std::move(args), t->span);
  }
  if (auto* an = asAnnotated(*t)) {
    return mkTerm(Term{TermAnnotated{substitute(an->body, binding), an->attrs},
                       t->span});
  }
  if (auto* b = asBinder(*t)) {
    // drop shadowed bindings; rename binders that would capture
    std::map<std::string, TermPtr> inner = binding;
    std::set<std::string> incoming;
    for (auto& [k, v] : binding) {
      auto fv = freeVars(*v);
      incoming.insert(fv.begin(), fv.end());
    }
    std::vector<SortedVar> binders = b->binders;
    std::map<std::string, TermPtr> renames;
    std::set<std::string> taken = incoming;
    for (auto& sv : binders) taken.insert(sv.name);
    auto bodyFv = freeVars(*b->body);
    taken.insert(bodyFv.begin(), bodyFv.end());
    for (auto& sv : binders) {
      inner.erase(sv.name);
      if (incoming.count(sv.name)) {
        std::string nn = freshName(sv.name, taken);
        taken.insert(nn);
        renames[sv.name] = mkVar(nn);
        sv.name = nn;
      }
    }
    TermPtr body = b->body;
    if (!renames.empty()) body = substitute(body, renames);
    body = substitute(body, inner);
    return mkTerm(Term{TermBinder{b->kind, std::move(binders), body}, t->span});
  }
  auto* l = asLet(*t);
  std::vector<std::pair<std::string, TermPtr>> bindings;
  for (auto& [name, bt] : l->bindings)
    bindings.emplace_back(name, substitute(bt, binding));
  std::map<std::string, TermPtr> inner = binding;
  std::set<std::string> incoming;
  for (auto& [k, v] : binding) {
    auto fv = freeVars(*v);
    incoming.insert(fv.begin(), fv.end());
  }
  std::map<std::string, TermPtr> renames;
  std::set<std::string> taken = incoming;
  auto bodyFv = freeVars(*l->body);
  taken.insert(bodyFv.begin(), bodyFv.end());
  for (auto& [name, bt] : bindings) taken.insert(name);
  for (auto& [name, bt] : bindings) {
    inner.erase(name);
    if (incoming.count(name)) {
      std::string nn = freshName(name, taken);
      taken.insert(nn);
      renames[name] = mkVar(nn);
      name = nn;
    }
  }
  TermPtr body = l->body;
  if (!renames.empty()) body = substitute(body, renames);
  body = substitute(body, inner);
  return mkTerm(Term{TermLet{std::move(bindings), body}, t->span});
}

inline TermPtr substitute(const TermPtr& t,
                          const std::map<std::string, TermPtr>& binding) {
  return substituteImpl(t, binding);
}

// ---- macro expansion -----------------------------------------------------

// Beta-reduces all applications of define-fun macros until no macro symbol
// remains. Macros are non-recursive, so this terminates.
inline TermPtr expandMacros(const TermPtr& t, const Signature& sig) {
  if (auto* id = asIdent(*t)) {
    if (!id->id.indexed()) {
      auto it = sig.macros.find(id->id.base);
      if (it != sig.macros.end() && it->second.params.empty())
        return expandMacros(it->second.body, sig);
    }
    return t;
  }
  if (asLiteral(*t)) return t;
  if (auto* a = asApply(*t)) {
    std::vector<TermPtr> args;
    for (auto& arg : a->args) args.push_back(expandMacros(arg, sig));
    if (!a->head.indexed()) {
      auto it = sig.macros.find(a->head.base);
      if (it != sig.macros.end() && !it->second.params.empty() &&
          it->second.params.size() == args.size()) {
        std::map<std::string, TermPtr> binding;
        for (std::size_t i = 0; i < args.size(); ++i)
          binding[it->second.params[i].name] = args[i];
        return expandMacros(substitute(it->second.body, binding), sig);
      }
    }
    return mkApply(a->head, std::move(args), t->span);
  }
  if (auto* an = asAnnotated(*t))
    return mkTerm(Term{TermAnnotated{expandMacros(an->body, sig), an->attrs},
                       t->span});
  if (auto* b = asBinder(*t))
    return mkTerm(Term{TermBinder{b->kind, b->binders,
                                  expandMacros(b->body, sig)},
                       t->span});
  auto* l = asLet(*t);
  std::vector<std::pair<std::string, TermPtr>> bindings;
  for (auto& [name, bt] : l->bindings)
    bindings.emplace_back(name, expandMacros(bt, sig));
  return mkTerm(Term{TermLet{std::move(bindings), expandMacros(l->body, sig)},
                     t->span});
}

// ---- evaluation ----------------------------------------------------------

enum class EvalStatus { Ok, Undefined, OutOfFuel, Unsupported };

struct EvalResult {
  EvalStatus status;
  ValuePtr value;  // set iff status == Ok

  static EvalResult ok(ValuePtr v) { return {EvalStatus::Ok, std::move(v)}; }
  static EvalResult undefined() { return {EvalStatus::Undefined, nullptr}; }
  static EvalResult outOfFuel() { return {EvalStatus::OutOfFuel, nullptr}; }
  static EvalResult unsupported() { return {EvalStatus::Unsupported, nullptr}; }
  bool isOk() const { return status == EvalStatus::Ok; }
};

struct Definition {
  std::vector<SortedVar> params;
  TermPtr body;
  bool recursive = false;
};

using ValueEnv = std::map<std::string, ValuePtr>;

class Evaluator {
 public:
  Evaluator(const Signature& sig, long long fuel = 10000)
      : sig_(sig), fuel_(fuel) {
    // macros are callable out of the box
    for (auto& [name, m] : sig.macros)
      defs_[name] = Definition{m.params, m.body, false};
  }

  std::map<std::string, Definition>& definitions() { return defs_; }
  const std::map<std::string, Definition>& definitions() const { return defs_; }
  void define(const std::string& name, Definition def) {
    defs_[name] = std::move(def);
  }
  void resetFuel(long long fuel) { fuel_ = fuel; }

  EvalResult eval(const Term& t, const ValueEnv& env) {
    if (auto* id = asIdent(t)) return evalIdent(id->id, env);
    if (auto* lit = asLiteral(t)) return EvalResult::ok(literalValue(lit->lit));
    if (auto* an = asAnnotated(t)) return eval(*an->body, env);
    if (asBinder(t)) return EvalResult::unsupported();
    if (auto* l = asLet(t)) {
      ValueEnv inner = env;
      for (auto& [name, bt] : l->bindings) {
        EvalResult r = eval(*bt, env);
        if (!r.isOk()) return r;
        inner[name] = r.value;
      }
      return eval(*l->body, inner);
    }
    return evalApply(*asApply(t), env);
  }

 private:
  EvalResult evalIdent(const Identifier& id, const ValueEnv& env) {
    if (id.indexed()) return EvalResult::unsupported();
    auto it = env.find(id.base);
    if (it != env.end()) return EvalResult::ok(it->second);
    auto d = defs_.find(id.base);
    if (d != defs_.end() && d->second.params.empty())
      return eval(*d->second.body, {});
    auto c = sig_.constructors.find(id.base);
    if (c != sig_.constructors.end())
      return EvalResult::ok(mkValue(Value{DTV{id.base, {}}}));
    if (id.base == "re.none" || id.base == "re.all" || id.base == "re.allchar")
      return EvalResult::unsupported();
    return EvalResult::unsupported();
  }

  EvalResult evalApply(const TermApply& app, const ValueEnv& env) {
    const std::string& h = app.head.base;

    // lazy forms first
    if (!app.head.indexed()) {
      if (h == "ite" && app.args.size() == 3) {
        EvalResult c = eval(*app.args[0], env);
        if (!c.isOk()) return c;
        auto* b = asValue<BoolV>(*c.value);
        if (!b) return EvalResult::undefined();
        return eval(*app.args[b->v ? 1 : 2], env);
      }
      if ((h == "and" || h == "or") && app.args.size() >= 2) {
        bool isAnd = h == "and";
        EvalResult pending{EvalStatus::Ok, nullptr};
        bool sawBad = false;
        for (auto& arg : app.args) {
          EvalResult r = eval(*arg, env);
          if (!r.isOk()) {
            sawBad = true;
            pending = r;
            continue;
          }
          auto* b = asValue<BoolV>(*r.value);
          if (!b) return EvalResult::undefined();
          if (b->v != isAnd) return EvalResult::ok(vBool(!isAnd));
        }
        if (sawBad) return pending;
        return EvalResult::ok(vBool(isAnd));
      }
      if (h == "=>" && app.args.size() >= 2) {
        // right-associated implication chain
        EvalResult pending{EvalStatus::Ok, nullptr};
        bool sawBad = false;
        for (std::size_t i = 0; i + 1 < app.args.size(); ++i) {
          EvalResult r = eval(*app.args[i], env);
          if (!r.isOk()) {
            sawBad = true;
            pending = r;
            continue;
          }
          auto* b = asValue<BoolV>(*r.value);
          if (!b) return EvalResult::undefined();
          if (!b->v) return EvalResult::ok(vBool(true));
        }
        EvalResult last = eval(*app.args.back(), env);
        if (!last.isOk()) return sawBad ? pending : last;
        auto* b = asValue<BoolV>(*last.value);
        if (!b) return EvalResult::undefined();
        if (b->v) return EvalResult::ok(vBool(true));
        if (sawBad) return pending;
        return EvalResult::ok(vBool(false));
      }
    }

    // strict evaluation of arguments
    std::vector<ValuePtr> a;
    for (auto& arg : app.args) {
      EvalResult r = eval(*arg, env);
      if (!r.isOk()) return r;
      a.push_back(r.value);
    }

    if (app.head.indexed()) return evalIndexed(app.head, a);

    // user definitions (macros and response definitions)
    auto d = defs_.find(h);
    if (d != defs_.end() && !d->second.params.empty()) {
      if (d->second.params.size() != a.size())
        return EvalResult::unsupported();
      if (d->second.recursive) {
        if (fuel_ <= 0) return EvalResult::outOfFuel();
        --fuel_;
      }
      ValueEnv callEnv;
      for (std::size_t i = 0; i < a.size(); ++i)
        callEnv[d->second.params[i].name] = a[i];
      return eval(*d->second.body, callEnv);
    }

    // function values bound in the environment
    auto fv = env.find(h);
    if (fv != env.end()) {
      if (auto* f = asValue<FunV>(*fv->second)) {
        if (f->params.size() != a.size()) return EvalResult::unsupported();
        ValueEnv callEnv;
        for (std::size_t i = 0; i < a.size(); ++i)
          callEnv[f->params[i].name] = a[i];
        return eval(*f->body, callEnv);
      }
    }

    // datatype constructors / selectors
    auto c = sig_.constructors.find(h);
    if (c != sig_.constructors.end())
      return EvalResult::ok(mkValue(Value{DTV{h, a}}));
    auto sel = sig_.selectors.find(h);
    if (sel != sig_.selectors.end() && a.size() == 1) {
      auto* dv = asValue<DTV>(*a[0]);
      if (!dv) return EvalResult::undefined();
      if (dv->ctor != sel->second.ctor) return EvalResult::undefined();
      return EvalResult::ok(dv->args[sel->second.index]);
    }

    return evalBuiltin(h, a);
  }

  EvalResult evalIndexed(const Identifier& id, const std::vector<ValuePtr>& a) {
    if (id.base == "extract" && id.indices.size() == 2 && a.size() == 1) {
      auto* bv = asValue<BVV>(*a[0]);
      if (!bv) return EvalResult::undefined();
      unsigned n = static_cast<unsigned>(std::stoul(id.indices[0]));
      unsigned m = static_cast<unsigned>(std::stoul(id.indices[1]));
      if (n >= bv->width || m > n) return EvalResult::undefined();
      mpz_class shifted = bv->bits >> m;
      return EvalResult::ok(vBV(n - m + 1, shifted));
    }
    if (id.base == "is" && id.indices.size() == 1 && a.size() == 1) {
      auto* dv = asValue<DTV>(*a[0]);
      if (!dv) return EvalResult::undefined();
      return EvalResult::ok(vBool(dv->ctor == id.indices[0]));
    }
    return EvalResult::unsupported();
  }

  EvalResult evalBuiltin(const std::string& h, const std::vector<ValuePtr>& a) {
    // ---- core ----
    if (h == "not" && a.size() == 1) {
      auto* b = asValue<BoolV>(*a[0]);
      if (!b) return EvalResult::undefined();
      return EvalResult::ok(vBool(!b->v));
    }
    if (h == "xor" && a.size() >= 2) {
      bool acc = false;
      for (auto& v : a) {
        auto* b = asValue<BoolV>(*v);
        if (!b) return EvalResult::undefined();
        acc ^= b->v;
      }
      return EvalResult::ok(vBool(acc));
    }
    if (h == "=" && a.size() >= 2) {
      for (std::size_t i = 1; i < a.size(); ++i)
        if (!valueEqual(*a[i - 1], *a[i])) return EvalResult::ok(vBool(false));
      return EvalResult::ok(vBool(true));
    }
    if (h == "distinct" && a.size() >= 2) {
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
          if (valueEqual(*a[i], *a[j])) return EvalResult::ok(vBool(false));
      return EvalResult::ok(vBool(true));
    }

    // ---- arithmetic ----
    auto allInt = [&] {
      for (auto& v : a)
        if (!asValue<IntV>(*v)) return false;
      return !a.empty();
    };
    auto allReal = [&] {
      for (auto& v : a)
        if (!asValue<RealV>(*v)) return false;
      return !a.empty();
    };
    if (h == "+" || h == "*" || h == "-") {
      if (allInt()) {
        mpz_class acc = asValue<IntV>(*a[0])->v;
        if (h == "-" && a.size() == 1) return EvalResult::ok(vInt(-acc));
        for (std::size_t i = 1; i < a.size(); ++i) {
          const mpz_class& x = asValue<IntV>(*a[i])->v;
          if (h == "+") acc += x;
          else if (h == "*") acc *= x;
          else acc -= x;
        }
        return EvalResult::ok(vInt(acc));
      }
      if (allReal()) {
        mpq_class acc = asValue<RealV>(*a[0])->v;
        if (h == "-" && a.size() == 1)
          return EvalResult::ok(vReal(mpq_class(-acc)));
        for (std::size_t i = 1; i < a.size(); ++i) {
          const mpq_class& x = asValue<RealV>(*a[i])->v;
          if (h == "+") acc += x;
          else if (h == "*") acc *= x;
          else acc -= x;
        }
        return EvalResult::ok(vReal(acc));
      }
    }
    if ((h == "div" || h == "mod") && a.size() == 2) {
      auto* x = asValue<IntV>(*a[0]);
      auto* y = asValue<IntV>(*a[1]);
      if (!x || !y) return EvalResult::undefined();
      if (y->v == 0) return EvalResult::undefined();
      // Euclidean: x = y*q + r with 0 <= r < |y|
      mpz_class q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x->v.get_mpz_t(),
                  y->v.get_mpz_t());
      if (r < 0) {
        // floor division already gives 0 <= r < y for y > 0; fix y < 0
        r -= y->v;
        q += 1;
      }
      if (y->v < 0 && r != 0) {
        // mpz_fdiv rounds toward -inf: r has y's sign; normalize
      }
      return EvalResult::ok(h == "div" ? vInt(q) : vInt(r));
    }
    if (h == "abs" && a.size() == 1) {
      auto* x = asValue<IntV>(*a[0]);
      if (!x) return EvalResult::undefined();
      return EvalResult::ok(vInt(abs(x->v)));
    }
    if (h == "to_real" && a.size() == 1) {
      auto* x = asValue<IntV>(*a[0]);
      if (!x) return EvalResult::undefined();
      return EvalResult::ok(vReal(mpq_class(x->v)));
    }
    if (h == "to_int" && a.size() == 1) {
      auto* x = asValue<RealV>(*a[0]);
      if (!x) return EvalResult::undefined();
      // floor of the rational
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), x->v.get_num().get_mpz_t(),
                 x->v.get_den().get_mpz_t());
      return EvalResult::ok(vInt(q));
    }
    if (h == "is_int" && a.size() == 1) {
      auto* x = asValue<RealV>(*a[0]);
      if (!x) return EvalResult::undefined();
      return EvalResult::ok(vBool(x->v.get_den() == 1));
    }
    if (h == "/" && a.size() == 2) {
      auto* x = asValue<RealV>(*a[0]);
      auto* y = asValue<RealV>(*a[1]);
      if (!x || !y) return EvalResult::undefined();
      if (y->v == 0) return EvalResult::undefined();
      return EvalResult::ok(vReal(x->v / y->v));
    }
    if ((h == "<" || h == "<=" || h == ">" || h == ">=") && a.size() >= 2) {
      auto cmpAt = [&](std::size_t i) -> std::optional<int> {
        if (auto* x = asValue<IntV>(*a[i])) {
          auto* y = asValue<IntV>(*a[i + 1]);
          if (!y) return std::nullopt;
          int c = cmp(x->v, y->v);
          return c < 0 ? -1 : c > 0 ? 1 : 0;
        }
        if (auto* x = asValue<RealV>(*a[i])) {
          auto* y = asValue<RealV>(*a[i + 1]);
          if (!y) return std::nullopt;
          int c = cmp(x->v, y->v);
          return c < 0 ? -1 : c > 0 ? 1 : 0;
        }
        return std::nullopt;
      };
      for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        auto c = cmpAt(i);
        if (!c) return EvalResult::undefined();
        bool ok = h == "<"    ? *c < 0
                  : h == "<=" ? *c <= 0
                  : h == ">"  ? *c > 0
                              : *c >= 0;
        if (!ok) return EvalResult::ok(vBool(false));
      }
      return EvalResult::ok(vBool(true));
    }

    // ---- bit-vectors ----
    if (h.rfind("bv", 0) == 0 || h == "concat") return evalBV(h, a);

    // ---- strings ----
    if (h.rfind("str.", 0) == 0) return evalString(h, a);
    if (h.rfind("re.", 0) == 0) return EvalResult::unsupported();
    if (h == "select" || h == "store") return EvalResult::unsupported();

    return EvalResult::unsupported();
  }

  EvalResult evalBV(const std::string& h, const std::vector<ValuePtr>& a) {
    std::vector<const BVV*> bv;
    for (auto& v : a) {
      auto* b = asValue<BVV>(*v);
      if (!b) return EvalResult::undefined();
      bv.push_back(b);
    }
    if (bv.empty()) return EvalResult::unsupported();
    unsigned w = bv[0]->width;
    mpz_class mask = (mpz_class(1) << w) - 1;
    auto toSigned = [&](const mpz_class& bits) -> mpz_class {
      if (w == 0) return 0;
      mpz_class half = mpz_class(1) << (w - 1);
      return bits >= half ? mpz_class(bits - (mask + 1)) : bits;
    };
    auto ok = [&](mpz_class bits) { return EvalResult::ok(vBV(w, bits)); };

    if (h == "bvnot" && a.size() == 1) return ok(~bv[0]->bits & mask);
    if (h == "bvneg" && a.size() == 1) return ok((-bv[0]->bits) & mask);
    if ((h == "bvand" || h == "bvor" || h == "bvadd" || h == "bvmul") &&
        a.size() >= 2) {
      mpz_class acc = bv[0]->bits;
      for (std::size_t i = 1; i < a.size(); ++i) {
        if (bv[i]->width != w) return EvalResult::undefined();
        if (h == "bvand") acc &= bv[i]->bits;
        else if (h == "bvor") acc |= bv[i]->bits;
        else if (h == "bvadd") acc += bv[i]->bits;
        else acc *= bv[i]->bits;
      }
      return ok(acc & mask);
    }
    if (a.size() == 2 && bv[1]->width == w) {
      const mpz_class &x = bv[0]->bits, &y = bv[1]->bits;
      if (h == "bvsub") return ok((x - y) & mask);
      if (h == "bvxor") return ok(x ^ y);
      if (h == "bvnand") return ok(~(x & y) & mask);
      if (h == "bvnor") return ok(~(x | y) & mask);
      if (h == "bvxnor") return ok(~(x ^ y) & mask);
      if (h == "bvudiv") return ok(y == 0 ? mask : mpz_class(x / y));
      if (h == "bvurem") return ok(y == 0 ? x : mpz_class(x % y));
      if (h == "bvshl") {
        if (y >= w) return ok(0);
        return ok((x << y.get_ui()) & mask);
      }
      if (h == "bvlshr") {
        if (y >= w) return ok(0);
        return ok(x >> y.get_ui());
      }
      if (h == "bvashr") {
        mpz_class sx = toSigned(x);
        unsigned long sh = y >= w ? w : y.get_ui();
        mpz_class r = sx >> sh;  // arithmetic shift on mpz is floor
        return ok(r & mask);
      }
      if (h == "bvsdiv" || h == "bvsrem" || h == "bvsmod") {
        mpz_class sx = toSigned(x), sy = toSigned(y);
        if (sy == 0) {
          if (h == "bvsdiv") return ok(sx < 0 ? 1 : mask);
          return ok(x);  // bvsrem/bvsmod by zero = dividend
        }
        mpz_class q, r;
        // SMT-LIB bvsdiv truncates toward zero
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sx.get_mpz_t(),
                    sy.get_mpz_t());
        if (h == "bvsdiv") return ok(q & mask);
        if (h == "bvsrem") return ok(r & mask);
        // bvsmod: sign follows divisor
        if (r != 0 && ((r < 0) != (sy < 0))) r += sy;
        return ok(r & mask);
      }
      if (h == "bvult") return EvalResult::ok(vBool(x < y));
      if (h == "bvule") return EvalResult::ok(vBool(x <= y));
      if (h == "bvugt") return EvalResult::ok(vBool(x > y));
      if (h == "bvuge") return EvalResult::ok(vBool(x >= y));
      mpz_class sx = toSigned(x), sy = toSigned(y);
      if (h == "bvslt") return EvalResult::ok(vBool(sx < sy));
      if (h == "bvsle") return EvalResult::ok(vBool(sx <= sy));
      if (h == "bvsgt") return EvalResult::ok(vBool(sx > sy));
      if (h == "bvsge") return EvalResult::ok(vBool(sx >= sy));
    }
    if (h == "concat" && a.size() >= 2) {
      mpz_class acc = bv[0]->bits;
      unsigned total = bv[0]->width;
      for (std::size_t i = 1; i < a.size(); ++i) {
        acc = (acc << bv[i]->width) | bv[i]->bits;
        total += bv[i]->width;
      }
      return EvalResult::ok(vBV(total, acc));
    }
    return EvalResult::unsupported();
  }

  EvalResult evalString(const std::string& h, const std::vector<ValuePtr>& a) {
    auto str = [&](std::size_t i) -> const std::string* {
      auto* s = asValue<StringV>(*a[i]);
      return s ? &s->chars : nullptr;
    };
    auto num = [&](std::size_t i) -> const mpz_class* {
      auto* n = asValue<IntV>(*a[i]);
      return n ? &n->v : nullptr;
    };
    auto okS = [&](std::string s) { return EvalResult::ok(vString(std::move(s))); };
    auto okI = [&](mpz_class v) { return EvalResult::ok(vInt(std::move(v))); };
    auto okB = [&](bool b) { return EvalResult::ok(vBool(b)); };
    auto inRange = [](const mpz_class& v, long lo, long hi) {
      return v >= lo && v <= hi;
    };

    if (h == "str.++" && a.size() >= 2) {
      std::string out;
      for (std::size_t i = 0; i < a.size(); ++i) {
        auto* s = str(i);
        if (!s) return EvalResult::undefined();
        out += *s;
      }
      return okS(out);
    }
    if (h == "str.len" && a.size() == 1) {
      auto* s = str(0);
      if (!s) return EvalResult::undefined();
      return okI(mpz_class(static_cast<long>(s->size())));
    }
    if (h == "str.at" && a.size() == 2) {
      auto* s = str(0);
      auto* n = num(1);
      if (!s || !n) return EvalResult::undefined();
      if (*n < 0 || *n >= static_cast<long>(s->size())) return okS("");
      return okS(std::string(1, (*s)[n->get_ui()]));
    }
    if (h == "str.substr" && a.size() == 3) {
      auto* s = str(0);
      auto* off = num(1);
      auto* len = num(2);
      if (!s || !off || !len) return EvalResult::undefined();
      long size = static_cast<long>(s->size());
      if (*off < 0 || *off >= size || *len <= 0) return okS("");
      long o = off->get_si();
      long l = *len > size ? size : len->get_si();
      if (o + l > size) l = size - o;
      return okS(s->substr(o, l));
    }
    if (h == "str.indexof" && a.size() == 3) {
      auto* s = str(0);
      auto* pat = str(1);
      auto* from = num(2);
      if (!s || !pat || !from) return EvalResult::undefined();
      long size = static_cast<long>(s->size());
      if (*from < 0 || *from > size) return okI(-1);
      auto pos = s->find(*pat, from->get_ui());
      if (pos == std::string::npos) return okI(-1);
      return okI(mpz_class(static_cast<long>(pos)));
    }
    if (h == "str.contains" && a.size() == 2) {
      auto* s = str(0);
      auto* t = str(1);
      if (!s || !t) return EvalResult::undefined();
      return okB(s->find(*t) != std::string::npos);
    }
    if (h == "str.prefixof" && a.size() == 2) {
      auto* p = str(0);
      auto* s = str(1);
      if (!p || !s) return EvalResult::undefined();
      return okB(s->compare(0, p->size(), *p) == 0 && p->size() <= s->size());
    }
    if (h == "str.suffixof" && a.size() == 2) {
      auto* p = str(0);
      auto* s = str(1);
      if (!p || !s) return EvalResult::undefined();
      if (p->size() > s->size()) return okB(false);
      return okB(s->compare(s->size() - p->size(), p->size(), *p) == 0);
    }
    if (h == "str.replace" && a.size() == 3) {
      auto* s = str(0);
      auto* from = str(1);
      auto* to = str(2);
      if (!s || !from || !to) return EvalResult::undefined();
      if (from->empty()) return okS(*to + *s);
      auto pos = s->find(*from);
      if (pos == std::string::npos) return okS(*s);
      std::string out = *s;
      out.replace(pos, from->size(), *to);
      return okS(out);
    }
    if (h == "str.replace_all" && a.size() == 3) {
      auto* s = str(0);
      auto* from = str(1);
      auto* to = str(2);
      if (!s || !from || !to) return EvalResult::undefined();
      if (from->empty()) return okS(*s);
      std::string out;
      std::size_t i = 0;
      while (i < s->size()) {
        if (s->compare(i, from->size(), *from) == 0) {
          out += *to;
          i += from->size();
        } else {
          out.push_back((*s)[i]);
          ++i;
        }
      }
      return okS(out);
    }
    if ((h == "str.<" || h == "str.<=") && a.size() == 2) {
      auto* x = str(0);
      auto* y = str(1);
      if (!x || !y) return EvalResult::undefined();
      int c = x->compare(*y);
      return okB(h == "str.<" ? c < 0 : c <= 0);
    }
    if (h == "str.is_digit" && a.size() == 1) {
      auto* s = str(0);
      if (!s) return EvalResult::undefined();
      return okB(s->size() == 1 && (*s)[0] >= '0' && (*s)[0] <= '9');
    }
    if (h == "str.to_int" && a.size() == 1) {
      auto* s = str(0);
      if (!s) return EvalResult::undefined();
      if (s->empty()) return okI(-1);
      for (char c : *s)
        if (c < '0' || c > '9') return okI(-1);
      return okI(mpz_class(*s));
    }
    if (h == "str.from_int" && a.size() == 1) {
      auto* n = num(0);
      if (!n) return EvalResult::undefined();
      if (*n < 0) return okS("");
      return okS(n->get_str());
    }
    if (h == "str.to_code" && a.size() == 1) {
      auto* s = str(0);
      if (!s) return EvalResult::undefined();
      if (s->size() != 1) return okI(-1);
      return okI(mpz_class(static_cast<long>(static_cast<unsigned char>((*s)[0]))));
    }
    if (h == "str.from_code" && a.size() == 1) {
      auto* n = num(0);
      if (!n) return EvalResult::undefined();
      if (!inRange(*n, 0, 196607)) return okS("");
      if (*n > 255) return EvalResult::unsupported();  // ASCII-focused storage
      return okS(std::string(1, static_cast<char>(n->get_ui())));
    }
    if (h == "str.in_re" || h == "str.to_re") return EvalResult::unsupported();
    return EvalResult::unsupported();
  }

  const Signature& sig_;
  std::map<std::string, Definition> defs_;
  long long fuel_;
};

}  // namespace sygus
