// hdp: recognize, transform, compare and enumerate from the command line.
//
// Exit codes: 0 accept (or success), 1 reject, 2 resource-limit, 3 usage,
// 4 grammar file error, 5 verdict disagreement.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hdp/hdp.hpp"

namespace {

using namespace hdp;

enum Exit { kAccept = 0, kReject = 1, kLimit = 2, kUsage = 3, kGrammarError = 4, kDisagree = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using LoadedGrammar = std::variant<HeadGrammar, GenHeadGrammar>;

bool is_ghg(const std::string& path) { return std::filesystem::path(path).extension() == ".ghg"; }

LoadedGrammar load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path + ": cannot open");
  std::stringstream text;
  text << in.rdbuf();
  try {
    if (is_ghg(path)) return parse_ghg(text.str());
    return parse_hg(text.str());
  } catch (const ParseError& e) {
    throw FileError(path + ":" + e.what());
  } catch (const GrammarError& e) {
    throw FileError(path + ": " + e.what());
  }
}

std::string grammar_id(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::vector<std::string> tokenize(const std::string& input, bool chars) {
  std::vector<std::string> out;
  if (chars) {
    for (char c : input)
      if (!std::isspace(static_cast<unsigned char>(c))) out.emplace_back(1, c);
    return out;
  }
  std::istringstream ss(input);
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::accept: return kAccept;
    case Verdict::reject: return kReject;
    case Verdict::resource_limit: return kLimit;
  }
  return kUsage;
}

struct Common {
  std::string grammar;
  std::string input;
  bool chars = false;
  bool embed = false;
  bool json = false;
  bool exhaustive = false;
  std::size_t max_steps = RunLimits{}.max_steps;
  std::optional<std::size_t> max_depth;

  RunLimits limits() const {
    RunLimits l;
    l.max_steps = max_steps;
    l.max_depth = max_depth;
    l.stop_at_accept = !exhaustive;
    return l;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-g,--grammar,grammar", c.grammar, "grammar file (.hg or .ghg)");
  cmd->add_option("-i,--input", c.input, "whitespace-separated input tokens");
  cmd->add_flag("--chars", c.chars, "split --input into single characters");
  cmd->add_flag("--embed", c.embed, "run ghi on a plain .hg grammar via its embedding");
  cmd->add_flag("--json", c.json, "machine-readable output");
  cmd->add_flag("--exhaustive", c.exhaustive, "keep searching after the first acceptance");
  cmd->add_option("--max-steps", c.max_steps, "clause application bound");
  cmd->add_option("--max-depth", c.max_depth, "stack depth bound");
}

// A loaded grammar prepared for every algorithm it can run.
struct Prepared {
  std::string id;
  std::optional<HeadGrammar> plain;  // .hg itself, or tau_head of a .ghg
  std::shared_ptr<const GrammarContext> ctx;
  std::shared_ptr<const GhiGrammar> general;

  RunReport run(Algorithm a, const std::vector<std::string>& input, const RunLimits& limits) const {
    if (a == Algorithm::ghi) return run_report_ghi(general, id, input, limits);
    return run_report(a, ctx, id, input, limits);
  }
};

Prepared prepare(const std::string& path, const LoadedGrammar& g, bool embed_plain) {
  Prepared p;
  p.id = grammar_id(path);
  if (const auto* hg = std::get_if<HeadGrammar>(&g)) {
    p.plain = *hg;
    if (embed_plain) p.general = std::make_shared<const GhiGrammar>(embed(*hg));
  } else {
    const auto& gg = std::get<GenHeadGrammar>(g);
    p.plain = tau_head(gg);
    p.general = std::make_shared<const GhiGrammar>(gg);
  }
  p.ctx = make_context(*p.plain);
  return p;
}

std::vector<SymId> oracle_tokens(const Prepared& p, const std::vector<std::string>& input) {
  return to_symbols(*p.plain, input);
}

int cmd_recognize(const Common& c, const std::string& algorithm, bool trace) {
  const auto alg = parse_algorithm(algorithm);
  if (!alg) throw UsageError("unknown algorithm '" + algorithm + "'");
  const auto g = load(c.grammar);
  if (*alg == Algorithm::ghi && !is_ghg(c.grammar) && !c.embed)
    throw UsageError("ghi needs a .ghg grammar, or --embed for a .hg grammar");
  const Prepared p = prepare(c.grammar, g, c.embed);
  const auto input = tokenize(c.input, c.chars);
  if (input.size() > static_cast<std::size_t>(kMaxInputLength))
    throw UsageError("input longer than " + std::to_string(kMaxInputLength) + " tokens");
  RunReport r = p.run(*alg, input, c.limits());
  if (r.trace && !r.trace_replayed) {
    std::cerr << "internal error: accepting trace does not replay\n";
    return kDisagree;
  }
  if (!trace) {
    r.initial.reset();
    r.trace.reset();
  }
  if (c.json) {
    std::cout << nlohmann::json(r).dump(2) << "\n";
  } else {
    if (trace && r.trace) std::cout << trace_table(r);
    std::cout << to_string(r.verdict) << "\n";
  }
  return exit_for(r.verdict);
}

int cmd_transform(const Common& c, bool head, bool two, const std::string& output) {
  if (head == two) throw UsageError("give exactly one of --tau-head and --tau-two");
  const auto g = load(c.grammar);
  std::string text;
  if (head) {
    const auto* gg = std::get_if<GenHeadGrammar>(&g);
    if (!gg) throw UsageError("--tau-head needs a .ghg grammar");
    text = to_hg(tau_head(*gg));
  } else {
    const auto* hg = std::get_if<HeadGrammar>(&g);
    if (!hg) throw UsageError("--tau-two needs a .hg grammar");
    text = to_hg(tau_two(*hg));
  }
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw FileError(output + ": cannot write");
    out << text;
  }
  return kAccept;
}

std::vector<Algorithm> chosen(const std::vector<std::string>& names, bool with_ghi) {
  std::vector<Algorithm> out;
  for (const auto& n : names) {
    const auto a = parse_algorithm(n);
    if (!a) throw UsageError("unknown algorithm '" + n + "'");
    out.push_back(*a);
  }
  if (out.empty()) {
    out = plain_algorithms();
    if (with_ghi) out.push_back(Algorithm::ghi);
  }
  return out;
}

struct RandomOptions {
  std::size_t count = 0;
  std::size_t max_len = 5;
  std::uint32_t seed = 1;
};

int cmd_compare_random(const Common& c, const std::vector<std::string>& names, const RandomOptions& ro) {
  const auto algs = chosen(names, false);
  std::cout << "seed " << ro.seed << "\n";
  std::mt19937 rng(ro.seed);
  std::size_t runs = 0, limits = 0, disagreements = 0;
  for (std::size_t k = 0; k < ro.count; ++k) {
    const HeadGrammar g = random_head_grammar(rng);
    const auto ctx = make_context(g);
    const auto ghi = std::find(algs.begin(), algs.end(), Algorithm::ghi) != algs.end()
                         ? std::make_shared<const GhiGrammar>(embed(g))
                         : nullptr;
    std::vector<SymId> alphabet;
    for (SymId t : g.terminals()) alphabet.push_back(t);
    for (const auto& w : all_strings(alphabet, ro.max_len)) {
      std::vector<std::string> input;
      for (SymId s : w) input.push_back(g.symbols().name(s));
      const Verdict expected = oracle_recognize(g, w) ? Verdict::accept : Verdict::reject;
      for (Algorithm a : algs) {
        const RunReport r = a == Algorithm::ghi ? run_report_ghi(ghi, "random", input, c.limits())
                                                : run_report(a, ctx, "random", input, c.limits());
        ++runs;
        if (r.verdict == Verdict::resource_limit) {
          ++limits;
        } else if (r.verdict != expected) {
          ++disagreements;
          std::cout << "DISAGREE grammar " << k << " " << to_string(a) << " input \"" << join(input, " ")
                    << "\": " << to_string(r.verdict) << ", oracle " << to_string(expected) << "\n"
                    << to_hg(g);
        }
      }
    }
  }
  std::cout << ro.count << " grammars, " << runs << " runs, " << limits << " resource-limit, " << disagreements
            << " disagreements\n";
  return disagreements ? kDisagree : kAccept;
}

int cmd_compare(const Common& c, const std::vector<std::string>& names, const RandomOptions& ro) {
  if (ro.count > 0) return cmd_compare_random(c, names, ro);
  const auto g = load(c.grammar);
  const bool ghi_ok = is_ghg(c.grammar) || c.embed;
  const auto algs = chosen(names, ghi_ok);
  if (!ghi_ok && std::find(algs.begin(), algs.end(), Algorithm::ghi) != algs.end())
    throw UsageError("ghi needs a .ghg grammar, or --embed for a .hg grammar");
  const Prepared p = prepare(c.grammar, g, c.embed);
  const auto input = tokenize(c.input, c.chars);
  const bool expected = oracle_recognize(*p.plain, oracle_tokens(p, input));

  std::vector<RunReport> reports;
  bool disagree = false;
  for (Algorithm a : algs) {
    RunReport r = p.run(a, input, c.limits());
    r.initial.reset();
    r.trace.reset();
    if (r.verdict != Verdict::resource_limit && (r.verdict == Verdict::accept) != expected) disagree = true;
    reports.push_back(std::move(r));
  }
  if (c.json) {
    nlohmann::json j = {{"oracle", expected ? "accept" : "reject"}, {"runs", reports}, {"agree", !disagree}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "algorithm\tverdict\tconfigurations\tapplications\tmax_depth\n";
    for (const auto& r : reports)
      std::cout << r.algorithm << "\t" << to_string(r.verdict) << "\t" << r.stats.configurations_explored << "\t"
                << r.stats.clause_applications << "\t" << r.stats.max_stack_depth
                << (r.verdict == Verdict::resource_limit ? "\t(limit)" : "") << "\n";
    std::cout << "oracle\t" << (expected ? "accept" : "reject") << "\n";
    if (disagree) std::cout << "DISAGREEMENT\n";
  }
  return disagree ? kDisagree : kAccept;
}

int cmd_enumerate(const Common& c, std::size_t max_len) {
  const auto g = load(c.grammar);
  const HeadGrammar flat = std::holds_alternative<HeadGrammar>(g) ? std::get<HeadGrammar>(g)
                                                                   : flatten(std::get<GenHeadGrammar>(g));
  std::vector<std::vector<std::string>> strings;
  for (const auto& w : enumerate(flat, max_len)) {
    std::vector<std::string> s;
    for (SymId x : w) s.push_back(flat.symbols().name(x));
    strings.push_back(std::move(s));
  }
  std::sort(strings.begin(), strings.end());
  if (c.json) {
    std::cout << nlohmann::json(strings).dump(2) << "\n";
  } else {
    for (const auto& s : strings) std::cout << join(s, " ") << "\n";
  }
  return kAccept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Head-driven recognizers for head grammars and generalized head grammars"};
  app.require_subcommand(1);

  Common common;
  std::string algorithm = "hi";
  bool trace = false;
  auto* recognize = app.add_subcommand("recognize", "run one recognizer on one input");
  add_common(recognize, common);
  recognize->add_option("-a,--algorithm", algorithm, "td, hc, phi, ehi, hi or ghi");
  recognize->add_flag("--trace", trace, "print the accepting trace");

  bool tau_head_flag = false, tau_two_flag = false;
  std::string output;
  auto* transform = app.add_subcommand("transform", "print tau_head or tau_two of a grammar");
  add_common(transform, common);
  transform->add_flag("--tau-head", tau_head_flag, "generalized head grammar to head grammar");
  transform->add_flag("--tau-two", tau_two_flag, "head grammar to two normal form");
  transform->add_option("-o,--output", output, "write to a file instead of stdout");

  std::vector<std::string> algorithms;
  RandomOptions ro;
  auto* compare = app.add_subcommand("compare", "run several recognizers and the oracle on one input");
  add_common(compare, common);
  compare->add_option("-a,--algorithm", algorithms, "algorithms to run (default: all applicable)")->delimiter(',');
  compare->add_option("--random", ro.count, "differential test on N seeded random grammars instead");
  compare->add_option("--max-len", ro.max_len, "longest input in random mode");
  compare->add_option("--seed", ro.seed, "random seed");

  std::size_t max_len = 5;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "list the language up to a length");
  add_common(enumerate_cmd, common);
  enumerate_cmd->add_option("--max-len", max_len, "longest string");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    const bool random_mode = compare->parsed() && ro.count > 0;
    if (common.grammar.empty() && !random_mode) throw UsageError("--grammar is required");
    if (recognize->parsed()) return cmd_recognize(common, algorithm, trace);
    if (transform->parsed()) return cmd_transform(common, tau_head_flag, tau_two_flag, output);
    if (compare->parsed()) return cmd_compare(common, algorithms, ro);
    if (enumerate_cmd->parsed()) return cmd_enumerate(common, max_len);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const FileError& e) {
    std::cerr << e.what() << "\n";
    return kGrammarError;
  } catch (const GrammarError& e) {
    std::cerr << e.what() << "\n";
    return kGrammarError;
  } catch (const EnumerationLimit& e) {
    std::cerr << e.what() << "\n";
    return kLimit;
  }
  return kUsage;
}
