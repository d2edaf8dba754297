#pragma once

// Ground truth that ignores heads: a chart recognizer, bounded enumeration
// of the language, useless-symbol detection, and a checker for the
// correct subsequence property.

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "hdp/engine.hpp"
#include "hdp/grammar.hpp"
#include "hdp/transform.hpp"

namespace hdp {

namespace detail {

// cell[i][j]: nonterminals deriving a_{i+1} … a_j.
class Chart {
 public:
  Chart(const HeadGrammar& g, std::span<const SymId> w) : g_(g), w_(w), n_(w.size()) {
    cells_.assign((n_ + 1) * (n_ + 1), std::vector<bool>(g.symbol_count(), false));
    for (std::size_t len = 1; len <= n_; ++len)
      for (std::size_t i = 0; i + len <= n_; ++i) fill(i, i + len);
  }

  bool derives(SymId a, std::size_t i, std::size_t j) const { return cell(i, j)[a]; }

 private:
  const std::vector<bool>& cell(std::size_t i, std::size_t j) const { return cells_[i * (n_ + 1) + j]; }
  std::vector<bool>& cell(std::size_t i, std::size_t j) { return cells_[i * (n_ + 1) + j]; }

  bool member_derives(SymId x, std::size_t i, std::size_t j) const {
    if (g_.is_nonterminal(x)) return cell(i, j)[x];
    return j == i + 1 && w_[i] == x;
  }

  bool sequence_derives(const std::vector<SymId>& rhs, std::size_t idx, std::size_t i, std::size_t j) const {
    const std::size_t rest = rhs.size() - idx;
    if (rest == 0) return i == j;
    if (j - i < rest) return false;
    if (rest == 1) return member_derives(rhs[idx], i, j);
    for (std::size_t e = i + 1; e + (rest - 1) <= j; ++e)
      if (member_derives(rhs[idx], i, e) && sequence_derives(rhs, idx + 1, e, j)) return true;
    return false;
  }

  // Members of a rule with two or more members cover strictly shorter spans;
  // unit rules are closed over the cell until nothing changes.
  void fill(std::size_t i, std::size_t j) {
    auto& c = cell(i, j);
    for (const auto& r : g_.rules())
      if (r.rhs.size() >= 2 && !c[r.lhs] && sequence_derives(r.rhs, 0, i, j)) c[r.lhs] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : g_.rules())
        if (r.rhs.size() == 1 && !c[r.lhs] && member_derives(r.rhs[0], i, j)) c[r.lhs] = changed = true;
    }
  }

  const HeadGrammar& g_;
  std::span<const SymId> w_;
  std::size_t n_;
  std::vector<std::vector<bool>> cells_;
};

}  // namespace detail

/// S →* w, heads ignored. The empty string is never in the language.
inline bool oracle_recognize(const HeadGrammar& g, std::span<const SymId> w) {
  if (w.empty()) return false;
  return detail::Chart(g, w).derives(g.start(), 0, w.size());
}

inline bool oracle_recognize(const GenHeadGrammar& g, std::span<const SymId> w) {
  return oracle_recognize(flatten(g), w);
}

class EnumerationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All strings of length ≤ max_len in L(g), by breadth-first leftmost
/// derivation. Without epsilon rules sentential forms never shrink, so
/// forms longer than max_len are dropped.
inline std::set<std::vector<SymId>> enumerate(const HeadGrammar& g, std::size_t max_len,
                                              std::size_t frontier_cap = 2'000'000) {
  std::set<std::vector<SymId>> language;
  std::set<std::vector<SymId>> seen{{g.start()}};
  std::deque<std::vector<SymId>> frontier{{g.start()}};
  while (!frontier.empty()) {
    std::vector<SymId> form = std::move(frontier.front());
    frontier.pop_front();
    const auto nt = std::find_if(form.begin(), form.end(), [&](SymId s) { return g.is_nonterminal(s); });
    if (nt == form.end()) {
      language.insert(form);
      continue;
    }
    const auto at = static_cast<std::size_t>(nt - form.begin());
    for (auto r : g.rules_for(*nt)) {
      const auto& rhs = g.rule(r).rhs;
      if (form.size() - 1 + rhs.size() > max_len) continue;
      std::vector<SymId> next(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(at));
      next.insert(next.end(), rhs.begin(), rhs.end());
      next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(at) + 1, form.end());
      if (!seen.insert(next).second) continue;
      if (seen.size() > frontier_cap) throw EnumerationLimit("enumeration exceeded the frontier cap");
      frontier.push_back(std::move(next));
    }
  }
  return language;
}

inline std::set<std::vector<SymId>> enumerate(const GenHeadGrammar& g, std::size_t max_len,
                                              std::size_t frontier_cap = 2'000'000) {
  return enumerate(flatten(g), max_len, frontier_cap);
}

/// Nonterminals deriving some terminal string.
inline std::set<SymId> productive_symbols(const HeadGrammar& g) {
  std::set<SymId> out;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules()) {
      if (out.count(r.lhs)) continue;
      if (std::all_of(r.rhs.begin(), r.rhs.end(), [&](SymId s) { return g.is_terminal(s) || out.count(s); }))
        changed = out.insert(r.lhs).second || changed;
    }
  }
  return out;
}

/// Symbols reachable from the start using only rules made of productive symbols.
inline std::set<SymId> reachable_symbols(const HeadGrammar& g) {
  const auto productive = productive_symbols(g);
  auto usable = [&](const HeadRule& r) {
    return std::all_of(r.rhs.begin(), r.rhs.end(), [&](SymId s) { return g.is_terminal(s) || productive.count(s); });
  };
  std::set<SymId> out;
  if (!productive.count(g.start())) return out;
  std::vector<SymId> work{g.start()};
  out.insert(g.start());
  while (!work.empty()) {
    const SymId a = work.back();
    work.pop_back();
    for (auto r : g.rules_for(a)) {
      if (!usable(g.rule(r))) continue;
      for (SymId s : g.rule(r).rhs)
        if (out.insert(s).second && g.is_nonterminal(s)) work.push_back(s);
    }
  }
  return out;
}

/// Symbols occurring in g (start, left-hand sides, right-hand sides) that
/// take part in no derivation of a terminal string from the start.
inline std::set<SymId> useless_symbols(const HeadGrammar& g) {
  const auto reachable = reachable_symbols(g);
  std::set<SymId> out;
  auto check = [&](SymId s) {
    if (!reachable.count(s)) out.insert(s);
  };
  check(g.start());
  for (const auto& r : g.rules()) {
    check(r.lhs);
    for (SymId s : r.rhs) check(s);
  }
  return out;
}

inline bool has_useless_symbols(const HeadGrammar& g) { return !useless_symbols(g).empty(); }

/// Length of the longest string in L(g), capped at cap + 1.
inline std::size_t longest_string(const HeadGrammar& g, std::size_t cap) {
  const auto reachable = reachable_symbols(g);
  std::vector<std::optional<std::size_t>> best(g.symbol_count());
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules()) {
      if (!reachable.count(r.lhs)) continue;
      std::size_t sum = 0;
      bool ok = true;
      for (SymId s : r.rhs) {
        if (g.is_terminal(s)) {
          ++sum;
        } else if (best[s]) {
          sum += *best[s];
        } else {
          ok = false;
        }
      }
      if (!ok) continue;
      sum = std::min(sum, cap + 1);
      if (!best[r.lhs] || *best[r.lhs] < sum) {
        best[r.lhs] = sum;
        changed = true;
      }
    }
  }
  return best[g.start()].value_or(0);
}

enum class SubsequenceVerdict { holds, violated, inconclusive };

inline std::string to_string(SubsequenceVerdict v) {
  switch (v) {
    case SubsequenceVerdict::holds: return "holds";
    case SubsequenceVerdict::violated: return "violated";
    case SubsequenceVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline bool is_subsequence(const std::vector<SymId>& needle, const std::vector<SymId>& hay) {
  std::size_t p = 0;
  for (SymId s : hay)
    if (p < needle.size() && needle[p] == s) ++p;
  return p == needle.size();
}

// Decides, for sequences of consulted input symbols, whether they occur in
// order inside some string of L(g) of length ≤ max_len. When no such string
// exists but L(g) has longer strings the answer is inconclusive.
class SubsequenceChecker {
 public:
  SubsequenceChecker(const HeadGrammar& g, std::size_t max_len)
      : language_(enumerate(g, max_len)), longer_exists_(longest_string(g, max_len) > max_len) {}

  SubsequenceVerdict check(const std::vector<SymId>& consulted) const {
    if (consulted.empty()) return SubsequenceVerdict::holds;
    for (const auto& w : language_)
      if (is_subsequence(consulted, w)) return SubsequenceVerdict::holds;
    return longer_exists_ ? SubsequenceVerdict::inconclusive : SubsequenceVerdict::violated;
  }

  /// Consulted symbols of `positions` in input order.
  static std::vector<SymId> consulted_symbols(const PositionSet& positions, std::span<const SymId> input) {
    std::vector<SymId> out;
    for (int p : positions.to_vector()) out.push_back(input[static_cast<std::size_t>(p - 1)]);
    return out;
  }

  SubsequenceVerdict check(const PositionSet& positions, std::span<const SymId> input) const {
    return check(consulted_symbols(positions, input));
  }

 private:
  std::set<std::vector<SymId>> language_;
  bool longer_exists_;
};

/// Worst verdict over every consulted set recorded by a run.
inline SubsequenceVerdict check_subsequence_property(const HeadGrammar& g, const RunStats& stats,
                                                     std::span<const SymId> input, std::size_t max_len) {
  if (has_useless_symbols(g)) throw std::invalid_argument("grammar has useless symbols");
  const SubsequenceChecker checker(g, max_len);
  SubsequenceVerdict worst = SubsequenceVerdict::holds;
  auto consider = [&](const PositionSet& ps) {
    const auto v = checker.check(ps, input);
    if (v == SubsequenceVerdict::violated) worst = v;
    if (v == SubsequenceVerdict::inconclusive && worst == SubsequenceVerdict::holds) worst = v;
  };
  consider(stats.consulted_positions);
  for (const auto& ps : stats.consulted_sets) consider(ps);
  return worst;
}

}  // namespace hdp
