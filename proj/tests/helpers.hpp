// Shared helpers for the test suite.
#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sygus/parser.hpp"
#include "sygus/session.hpp"

#ifndef SYGUS_CORPUS_DIR
#error "SYGUS_CORPUS_DIR must be defined by the build"
#endif
#ifndef SYGUS_CLI_PATH
#error "SYGUS_CLI_PATH must be defined by the build"
#endif

namespace testutil {

inline std::string corpusPath(const std::string& name) {
  return std::string(SYGUS_CORPUS_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline sygus::Session loadText(const std::string& text,
                               bool permissive = false) {
  auto es = sygus::readAll(text);
  sygus::Parser p{sygus::ParserOptions{permissive}};
  auto cmds = p.parseCommands(es);
  sygus::Session s{sygus::SessionOptions{permissive}};
  s.processAll(cmds);
  return s;
}

inline sygus::Session loadCorpus(const std::string& name,
                                 bool permissive = false) {
  return loadText(slurp(corpusPath(name)), permissive);
}

struct CliResult {
  int exitCode = -1;
  std::string output;  // stdout + stderr interleaved
};

// Runs the CLI with the given argument string (already shell-quoted).
inline CliResult runCli(const std::string& args) {
  std::string cmd = std::string(SYGUS_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  CliResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
    r.output.append(buf.data(), n);
  int status = pclose(p);
  r.exitCode = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace testutil
