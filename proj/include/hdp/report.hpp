#pragma once

// Running any recognizer by name and describing the outcome as a RunReport,
// with JSON (de)serialization and the plain-text trace table.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hdp/ehi.hpp"
#include "hdp/ghi.hpp"
#include "hdp/hc.hpp"
#include "hdp/hi.hpp"
#include "hdp/phi.hpp"
#include "hdp/td.hpp"

namespace hdp {

enum class Algorithm { td, hc, phi, ehi, hi, ghi };

inline const std::vector<Algorithm>& plain_algorithms() {
  static const std::vector<Algorithm> all{Algorithm::td, Algorithm::hc, Algorithm::phi, Algorithm::ehi, Algorithm::hi};
  return all;
}

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::td: return "td";
    case Algorithm::hc: return "hc";
    case Algorithm::phi: return "phi";
    case Algorithm::ehi: return "ehi";
    case Algorithm::hi: return "hi";
    case Algorithm::ghi: return "ghi";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (auto a : {Algorithm::td, Algorithm::hc, Algorithm::phi, Algorithm::ehi, Algorithm::hi, Algorithm::ghi})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

inline std::optional<Verdict> parse_verdict(std::string_view s) {
  for (auto v : {Verdict::accept, Verdict::reject, Verdict::resource_limit})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

struct TraceRecord {
  std::string label;
  std::vector<std::string> stack;

  bool operator==(const TraceRecord&) const = default;
};

struct StatsSummary {
  std::size_t configurations_explored = 0;
  std::size_t clause_applications = 0;
  std::size_t max_stack_depth = 0;
  std::size_t pruned = 0;
  bool step_limit_hit = false;
  bool depth_limit_hit = false;
  std::vector<int> consulted_positions;

  bool operator==(const StatsSummary&) const = default;
};

struct RunReport {
  std::string grammar;
  std::string algorithm;
  std::vector<std::string> input;
  Verdict verdict = Verdict::reject;
  StatsSummary stats;
  std::optional<std::vector<std::string>> initial;  // present with the trace
  std::optional<std::vector<TraceRecord>> trace;
  bool trace_replayed = false;
  /// Trace rows for display (GHI merges close/finish pairs); not serialized.
  std::vector<std::pair<std::string, std::string>> table;

  bool operator==(const RunReport& o) const {
    return grammar == o.grammar && algorithm == o.algorithm && input == o.input && verdict == o.verdict &&
           stats == o.stats && initial == o.initial && trace == o.trace && trace_replayed == o.trace_replayed;
  }
};

inline void to_json(nlohmann::json& j, const StatsSummary& s) {
  j = {{"configurations_explored", s.configurations_explored},
       {"clause_applications", s.clause_applications},
       {"max_stack_depth", s.max_stack_depth},
       {"pruned", s.pruned},
       {"step_limit_hit", s.step_limit_hit},
       {"depth_limit_hit", s.depth_limit_hit},
       {"consulted_positions", s.consulted_positions}};
}

inline void from_json(const nlohmann::json& j, StatsSummary& s) {
  j.at("configurations_explored").get_to(s.configurations_explored);
  j.at("clause_applications").get_to(s.clause_applications);
  j.at("max_stack_depth").get_to(s.max_stack_depth);
  j.at("pruned").get_to(s.pruned);
  j.at("step_limit_hit").get_to(s.step_limit_hit);
  j.at("depth_limit_hit").get_to(s.depth_limit_hit);
  j.at("consulted_positions").get_to(s.consulted_positions);
}

inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = {{"grammar", r.grammar},
       {"algorithm", r.algorithm},
       {"input", r.input},
       {"verdict", to_string(r.verdict)},
       {"stats", r.stats},
       {"trace", nullptr}};
  if (r.trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : *r.trace) steps.push_back({{"label", s.label}, {"stack", s.stack}});
    j["trace"] = {{"initial", r.initial.value_or(std::vector<std::string>{})},
                  {"steps", steps},
                  {"replayed", r.trace_replayed}};
  }
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("grammar").get_to(r.grammar);
  j.at("algorithm").get_to(r.algorithm);
  j.at("input").get_to(r.input);
  const auto v = parse_verdict(j.at("verdict").get<std::string>());
  if (!v) throw std::invalid_argument("unknown verdict");
  r.verdict = *v;
  j.at("stats").get_to(r.stats);
  r.initial.reset();
  r.trace.reset();
  r.trace_replayed = false;
  const auto& t = j.at("trace");
  if (!t.is_null()) {
    r.initial = t.at("initial").get<std::vector<std::string>>();
    std::vector<TraceRecord> steps;
    for (const auto& s : t.at("steps")) steps.push_back({s.at("label").get<std::string>(), s.at("stack")});
    r.trace = std::move(steps);
    t.at("replayed").get_to(r.trace_replayed);
  }
}

inline StatsSummary summarize(const RunStats& s) {
  return {s.configurations_explored, s.clause_applications, s.max_stack_depth,      s.pruned,
          s.step_limit_hit,          s.depth_limit_hit,     s.consulted_positions.to_vector()};
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <class Item>
RunReport make_report(const Automaton<Item>& a, const std::string& grammar_id, const std::vector<std::string>& input,
                      std::span<const SymId> tokens, const RunLimits& limits) {
  const auto result = run(a, tokens, limits);
  RunReport r;
  r.grammar = grammar_id;
  r.algorithm = a.name;
  r.input = input;
  r.verdict = result.verdict;
  r.stats = summarize(result.stats);
  if (result.trace) {
    auto render_stack = [&](const std::vector<Item>& st) {
      std::vector<std::string> out;
      for (const auto& it : st) out.push_back(a.render(it));
      return out;
    };
    r.initial = render_stack(result.trace->initial);
    std::vector<TraceRecord> steps;
    for (const auto& s : result.trace->steps) steps.push_back({s.label, render_stack(s.stack)});
    r.trace = std::move(steps);
    r.trace_replayed = replay(a, tokens, *result.trace);
    r.table.emplace_back("", join(*r.initial, " "));
    for (const auto& s : *r.trace) r.table.emplace_back(s.label, join(s.stack, " "));
  }
  return r;
}

/// Runs one of the plain-grammar recognizers.
inline RunReport run_report(Algorithm alg, const std::shared_ptr<const GrammarContext>& ctx,
                            const std::string& grammar_id, const std::vector<std::string>& input,
                            const RunLimits& limits = {}) {
  const auto tokens = to_symbols(ctx->aug.base(), input);
  switch (alg) {
    case Algorithm::td: return make_report(build_td(ctx), grammar_id, input, tokens, limits);
    case Algorithm::hc: return make_report(build_hc(ctx), grammar_id, input, tokens, limits);
    case Algorithm::phi: return make_report(build_phi(ctx), grammar_id, input, tokens, limits);
    case Algorithm::ehi: return make_report(build_ehi(ctx), grammar_id, input, tokens, limits);
    case Algorithm::hi: return make_report(build_hi(ctx), grammar_id, input, tokens, limits);
    case Algorithm::ghi: break;
  }
  throw std::invalid_argument("ghi runs on generalized grammars");
}

inline RunReport run_report_ghi(const std::shared_ptr<const GhiGrammar>& g, const std::string& grammar_id,
                                const std::vector<std::string>& input, const RunLimits& limits = {}) {
  const auto tokens = to_symbols(g->base(), input);
  const auto a = build_ghi(g);
  RunReport r = make_report(a, grammar_id, input, tokens, limits);
  if (r.trace) {
    const auto result = run(a, tokens, limits);
    r.table.clear();
    for (const auto& row : trace_rows(*result.trace, *g)) r.table.emplace_back(row.label, row.stack);
  }
  return r;
}

/// Two columns, as in a printed trace: stack, then the clause that produced it.
inline std::string trace_table(const RunReport& r) {
  std::string out = "Stack\tClause\n";
  for (const auto& [label, stack] : r.table) out += stack + "\t" + label + "\n";
  return out;
}

}  // namespace hdp
