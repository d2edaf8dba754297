#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hdp/hdp.hpp"

namespace hdp::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string grammar_path(const std::string& name) { return std::string(HDP_GRAMMAR_DIR) + "/" + name; }

inline GenHeadGrammar example1() { return parse_ghg(read_file(grammar_path("ex1.ghg"))); }

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  for (std::string w; ss >> w;) out.push_back(w);
  return out;
}

template <class Grammar>
std::vector<SymId> tokens(const Grammar& g, const std::string& s) {
  return to_symbols(g, words(s));
}

template <class Item>
Verdict verdict(const Automaton<Item>& a, const std::vector<SymId>& w, const RunLimits& limits = {}) {
  return run(a, w, limits).verdict;
}

inline std::vector<std::string> names(const HeadGrammar& g, const std::vector<SymId>& w) {
  std::vector<std::string> out;
  for (SymId s : w) out.push_back(g.name(s));
  return out;
}

}  // namespace hdp::test
