#pragma once

// External oracle protocol: invoke oracle binaries over the command-line or
// query-file transport, parse replies, instantiate binding templates into
// ground formulas, and keep an append-only transcript.

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include "sygus/session.hpp"
#include "sygus/value.hpp"

namespace sygus {

enum class OracleErrorKind {
  Resolve,       // no executable for the oracle name
  Spawn,         // process could not be started
  Timeout,       // wall-clock limit exceeded
  NonzeroExit,   // oracle exited with a nonzero status
  BadReply,      // reply is not a single well-formed value tuple
  SortMismatch,  // a reply value does not have the declared sort
  Unsupported,   // binding shape the protocol cannot serialize
};

class OracleError : public std::runtime_error {
 public:
  OracleError(OracleErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  OracleErrorKind kind() const { return kind_; }

 private:
  OracleErrorKind kind_;
};

struct OracleResolver {
  std::map<std::string, std::string> overrides;  // --oracle name=path

  std::string resolve(const std::string& name) const {
    auto it = overrides.find(name);
    if (it != overrides.end()) return it->second;
    if (name.find('/') != std::string::npos) {
      if (access(name.c_str(), X_OK) == 0) return name;
      throw OracleError(OracleErrorKind::Resolve,
                        "oracle executable '" + name + "' not found");
    }
    if (access(name.c_str(), X_OK) == 0) return "./" + name;
    const char* path = std::getenv("PATH");
    if (path) {
      std::stringstream ss(path);
      std::string dir;
      while (std::getline(ss, dir, ':')) {
        if (dir.empty()) continue;
        std::string full = dir + "/" + name;
        if (access(full.c_str(), X_OK) == 0) return full;
      }
    }
    throw OracleError(OracleErrorKind::Resolve,
                      "oracle executable '" + name + "' not found");
  }
};

struct OracleCall {
  bool isAssume = false;
  std::string oracleName;
  std::vector<ValuePtr> inputs;
  std::vector<ValuePtr> outputs;
  std::string rawRequest;
  std::string rawReply;
};

struct Transcript {
  std::vector<OracleCall> calls;
  std::vector<TermPtr> constraints;  // from constraint-kind bindings
  std::vector<TermPtr> assumptions;  // from assume-kind bindings
};

struct OracleOptions {
  double timeoutSecs = 10;
  bool keepFiles = false;
};

namespace detail {

// Runs argv, captures standard output, enforces a wall-clock limit.
inline std::string runProcess(const std::vector<std::string>& argv,
                              double timeoutSecs) {
  int fds[2];
  if (pipe(fds) != 0)
    throw OracleError(OracleErrorKind::Spawn, "pipe failed");
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw OracleError(OracleErrorKind::Spawn, "fork failed");
  }
  if (pid == 0) {
    close(fds[0]);
    dup2(fds[1], STDOUT_FILENO);
    close(fds[1]);
    std::vector<char*> args;
    for (auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  close(fds[1]);
  std::string out;
  auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(timeoutSecs));
  bool timedOut = false;
  char buf[4096];
  while (true) {
    auto remain = std::chrono::duration_cast<std::chrono::milliseconds>(
                      deadline - std::chrono::steady_clock::now())
                      .count();
    if (remain <= 0) {
      timedOut = true;
      break;
    }
    struct pollfd pfd {fds[0], POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(remain));
    if (pr == 0) {
      timedOut = true;
      break;
    }
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    ssize_t n = read(fds[0], buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  close(fds[0]);
  int status = 0;
  if (timedOut) {
    kill(pid, SIGKILL);
    waitpid(pid, &status, 0);
    throw OracleError(OracleErrorKind::Timeout,
                      "oracle '" + argv[0] + "' timed out");
  }
  waitpid(pid, &status, 0);
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw OracleError(OracleErrorKind::Spawn,
                      "oracle '" + argv[0] + "' could not be executed");
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw OracleError(OracleErrorKind::NonzeroExit,
                      "oracle '" + argv[0] + "' exited with status " +
                          std::to_string(WIFEXITED(status)
                                             ? WEXITSTATUS(status)
                                             : -1));
  return out;
}

}  // namespace detail

inline OracleCall invokeOracle(const OracleBinding& b,
                               const std::vector<ValuePtr>& inputs,
                               const OracleResolver& resolver,
                               const Signature& sig,
                               const OracleOptions& opts = {}) {
  if (inputs.size() != b.invars.size())
    throw OracleError(OracleErrorKind::Unsupported,
                      "oracle call arity mismatch");
  OracleCall call;
  call.isAssume = b.isAssume;
  call.oracleName = b.oracleName;
  call.inputs = inputs;
  std::string binary = resolver.resolve(b.oracleName);

  std::vector<std::string> printed;
  for (auto& v : inputs) printed.push_back(printValue(*v));

  std::vector<std::string> argv{binary};
  std::string tempDir;
  if (b.transport == OracleBinding::File) {
    char tmpl[] = "/tmp/sygus-oracle-XXXXXX";
    if (!mkdtemp(tmpl))
      throw OracleError(OracleErrorKind::Spawn,
                        "could not create a temporary directory");
    tempDir = tmpl;
    std::string path = tempDir + "/request.query";
    std::string content = "(";
    for (std::size_t i = 0; i < printed.size(); ++i) {
      if (i) content.push_back(' ');
      content += printed[i];
    }
    content += ")\n";
    std::ofstream f(path);
    f << content;
    f.close();
    call.rawRequest = content;
    argv.push_back(path);
  } else {
    for (auto& p : printed) {
      argv.push_back(p);
      if (!call.rawRequest.empty()) call.rawRequest.push_back(' ');
      call.rawRequest += p;
    }
  }

  std::string reply;
  try {
    reply = detail::runProcess(argv, opts.timeoutSecs);
  } catch (...) {
    if (!tempDir.empty() && !opts.keepFiles) {
      unlink((tempDir + "/request.query").c_str());
      rmdir(tempDir.c_str());
    }
    throw;
  }
  if (!tempDir.empty() && !opts.keepFiles) {
    unlink((tempDir + "/request.query").c_str());
    rmdir(tempDir.c_str());
  }
  call.rawReply = reply;

  std::vector<SExprPtr> es;
  try {
    es = readAll(reply);
  } catch (const SygusError& e) {
    throw OracleError(OracleErrorKind::BadReply,
                      std::string("unparsable oracle reply: ") + e.what());
  }
  if (es.size() != 1 || !es[0]->isList() ||
      es[0]->children.size() != b.outvars.size())
    throw OracleError(OracleErrorKind::BadReply,
                      "oracle reply is not a tuple of " +
                          std::to_string(b.outvars.size()) + " values");
  for (std::size_t i = 0; i < b.outvars.size(); ++i) {
    Sort expect = resolveSort(sig, b.outvars[i].sort);
    ValuePtr v;
    try {
      v = parseValue(*es[0]->children[i], &expect);
    } catch (const SygusError& e) {
      throw OracleError(OracleErrorKind::SortMismatch,
                        "oracle reply value " + std::to_string(i + 1) +
                            " does not have sort " + toString(expect) + ": " +
                            e.what());
    }
    call.outputs.push_back(std::move(v));
  }
  return call;
}

namespace detail {

// Substitutes binding variables with call values in the template.  Scalar
// values become literal value terms; function values are beta-reduced at
// their application sites.
inline TermPtr instantiateTemplate(const TermPtr& t,
                                   const std::map<std::string, ValuePtr>& vals) {
  if (auto* id = asIdent(*t)) {
    if (!id->id.indexed()) {
      auto it = vals.find(id->id.base);
      if (it != vals.end()) {
        if (asValue<FunV>(*it->second))
          throw OracleError(
              OracleErrorKind::Unsupported,
              "function value used outside application position");
        return valueToTerm(*it->second);
      }
    }
    return t;
  }
  if (asLiteral(*t)) return t;
  if (auto* a = asApply(*t)) {
    std::vector<TermPtr> args;
    for (auto& arg : a->args) args.push_back(instantiateTemplate(arg, vals));
    if (!a->head.indexed()) {
      auto it = vals.find(a->head.base);
      if (it != vals.end()) {
        auto* fv = asValue<FunV>(*it->second);
        if (!fv || fv->params.size() != args.size())
          throw OracleError(OracleErrorKind::Unsupported,
                            "ill-sorted application of a bound oracle value");
        std::map<std::string, TermPtr> sub;
        for (std::size_t i = 0; i < args.size(); ++i)
          sub[fv->params[i].name] = args[i];
        return substitute(fv->body, sub);
      }
    }
    return mkApply(a->head, std::move(args), t->span);
  }
  if (auto* an = asAnnotated(*t))
    return mkTerm(Term{TermAnnotated{instantiateTemplate(an->body, vals),
                                     an->attrs},
                       t->span});
  if (auto* b = asBinder(*t))
    return mkTerm(Term{TermBinder{b->kind, b->binders,
                                  instantiateTemplate(b->body, vals)},
                       t->span});
  auto* l = asLet(*t);
  std::vector<std::pair<std::string, TermPtr>> bindings;
  for (auto& [name, bt] : l->bindings)
    bindings.emplace_back(name, instantiateTemplate(bt, vals));
  return mkTerm(Term{TermLet{std::move(bindings),
                             instantiateTemplate(l->body, vals)},
                     t->span});
}

}  // namespace detail

inline TermPtr instantiate(const OracleBinding& b, const OracleCall& call) {
  std::map<std::string, ValuePtr> vals;
  for (std::size_t i = 0; i < b.invars.size(); ++i)
    vals[b.invars[i].name] = call.inputs[i];
  for (std::size_t i = 0; i < b.outvars.size(); ++i)
    vals[b.outvars[i].name] = call.outputs[i];
  return detail::instantiateTemplate(b.templ, vals);
}

// Invokes the binding on the given inputs, records the call and appends the
// instantiated formula to the transcript and the session.
inline TermPtr runOracleCall(Session& s, Transcript& tr,
                             const OracleBinding& b,
                             const std::vector<ValuePtr>& inputs,
                             const OracleResolver& resolver,
                             const OracleOptions& opts = {}) {
  OracleCall call = invokeOracle(b, inputs, resolver, s.sig, opts);
  TermPtr formula = instantiate(b, call);
  tr.calls.push_back(call);
  if (b.isAssume) {
    tr.assumptions.push_back(formula);
    s.assumptions.push_back({formula, ConstraintOrigin::Oracle, b.span});
  } else {
    tr.constraints.push_back(formula);
    s.constraints.push_back({formula, ConstraintOrigin::Oracle, b.span});
  }
  return formula;
}

// Replays a recorded transcript into a session without re-invocation.
inline void applyTranscript(Session& s, const Transcript& tr) {
  for (auto& t : tr.constraints)
    s.constraints.push_back({t, ConstraintOrigin::Oracle, Span{}});
  for (auto& t : tr.assumptions)
    s.assumptions.push_back({t, ConstraintOrigin::Oracle, Span{}});
}

// ---- stub oracle ---------------------------------------------------------

// Table format: a sequence of `((v...) (w...))` pairs and at most one
// `(fallback <term>)` entry.  The fallback term may mention x1..xn (and x,
// an alias for x1 when there is exactly one input).
struct StubTable {
  std::vector<std::pair<std::vector<SExprPtr>, std::vector<SExprPtr>>> rows;
  TermPtr fallback;
};

inline StubTable parseStubTable(const std::string& text) {
  StubTable table;
  Parser p;
  for (auto& e : readAll(text)) {
    if (e->isList() && e->children.size() == 2 &&
        e->children[0]->isSymbol("fallback")) {
      table.fallback = p.parseTerm(*e->children[1]);
      continue;
    }
    if (!e->isList() || e->children.size() != 2 || !e->children[0]->isList() ||
        !e->children[1]->isList())
      throw SygusError("E-CMD", e->span,
                       "stub table entries are ((v ...) (w ...)) pairs or "
                       "(fallback <term>)");
    table.rows.emplace_back(e->children[0]->children,
                            e->children[1]->children);
  }
  return table;
}

// Core of the stub oracle binary: reads the input tuple from argv (or from
// the query file in file mode), looks it up in the table and prints the
// reply tuple.  Returns the process exit code; the reply is appended to
// `out`.
inline int stubOracleRun(const StubTable& table, bool fileMode,
                         const std::vector<std::string>& args,
                         std::string& out, std::string& err) {
  std::vector<SExprPtr> inputs;
  try {
    if (fileMode) {
      if (args.size() != 1) {
        err = "file mode expects exactly one query-file argument";
        return 2;
      }
      std::ifstream f(args[0]);
      if (!f) {
        err = "cannot open query file '" + args[0] + "'";
        return 3;
      }
      std::stringstream ss;
      ss << f.rdbuf();
      auto es = readAll(ss.str());
      if (es.size() != 1 || !es[0]->isList()) {
        err = "query file must contain a single value tuple";
        return 3;
      }
      inputs = es[0]->children;
    } else {
      for (auto& a : args) {
        auto es = readAll(a);
        if (es.size() != 1) {
          err = "argument '" + a + "' is not a single value";
          return 3;
        }
        inputs.push_back(es[0]);
      }
    }
  } catch (const SygusError& e) {
    err = std::string("unparsable input: ") + e.what();
    return 3;
  }

  auto key = [](const std::vector<SExprPtr>& es) {
    std::string k;
    for (auto& e : es) {
      k += toString(*e);
      k.push_back('|');
    }
    return k;
  };
  // value-level comparison: parse both sides so that e.g. 25 and (- 3)
  // match regardless of spacing
  auto sameTuple = [&](const std::vector<SExprPtr>& a,
                       const std::vector<SExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      try {
        ValuePtr va = parseValue(*a[i], nullptr);
        ValuePtr vb = parseValue(*b[i], nullptr);
        if (!valueEqual(*va, *vb)) return false;
      } catch (const SygusError&) {
        if (key({a[i]}) != key({b[i]})) return false;
      }
    }
    return true;
  };
  for (auto& [ins, outs] : table.rows) {
    if (!sameTuple(ins, inputs)) continue;
    out = "(";
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (i) out.push_back(' ');
      out += toString(*outs[i]);
    }
    out += ")\n";
    return 0;
  }
  if (table.fallback) {
    try {
      ValueEnv env;
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        ValuePtr v = parseValue(*inputs[i], nullptr);
        env["x" + std::to_string(i + 1)] = v;
        if (inputs.size() == 1) env["x"] = v;
      }
      Signature sig =
          baseSignature(TheorySet{true, true, true, true, true, true});
      Evaluator ev(sig, 100000);
      EvalResult r = ev.eval(*table.fallback, env);
      if (!r.isOk()) {
        err = "fallback evaluation failed";
        return 3;
      }
      out = "(" + printValue(*r.value) + ")\n";
      return 0;
    } catch (const SygusError& e) {
      err = std::string("fallback failed: ") + e.what();
      return 3;
    }
  }
  err = "no table entry matches the input";
  return 3;
}

}  // namespace sygus
