#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace hdp {
namespace {

using test::tokens;

TEST(Oracle, ExampleOne) {
  const auto g = test::example1();
  EXPECT_TRUE(oracle_recognize(g, tokens(g, "c a b s")));
  EXPECT_TRUE(oracle_recognize(g, tokens(g, "a d s")));
  EXPECT_FALSE(oracle_recognize(g, tokens(g, "s")));
  EXPECT_FALSE(oracle_recognize(g, tokens(g, "c a b")));
  EXPECT_FALSE(oracle_recognize(g, std::vector<SymId>{}));
}

TEST(Oracle, UnitRuleChains) {
  const auto g = parse_hg("start S\nS -> *A\nA -> *B\nB -> *a\nB -> *S b\n");
  EXPECT_TRUE(oracle_recognize(g, tokens(g, "a")));
  EXPECT_TRUE(oracle_recognize(g, tokens(g, "a b b")));
  EXPECT_FALSE(oracle_recognize(g, tokens(g, "b")));
}

TEST(Enumerate, Examples) {
  const auto tiny = parse_hg("start S\nS -> *a\n");
  EXPECT_EQ(enumerate(tiny, 3), (std::set<std::vector<SymId>>{tokens(tiny, "a")}));

  const auto g = test::example1();
  const auto lang = enumerate(g, 4);
  for (const auto* text : {"c a b s", "a d s", "a b s"}) EXPECT_TRUE(lang.count(tokens(g, text))) << text;
  EXPECT_EQ(lang.size(), 3u);
}

TEST(Enumerate, FrontierCap) {
  const auto g = parse_hg("start S\nS -> *S S\nS -> *a\nS -> *b\n");
  EXPECT_THROW(enumerate(g, 12, 100), EnumerationLimit);
}

TEST(Enumerate, AgreesWithChart) {
  std::mt19937 rng(13);
  for (int k = 0; k < 150; ++k) {
    const auto g = random_head_grammar(rng);
    const auto lang = enumerate(g, 5);
    for (const auto& w : all_strings(g.terminals(), 5)) EXPECT_EQ(lang.count(w) == 1, oracle_recognize(g, w)) << to_hg(g);
  }
}

TEST(UselessSymbols, Examples) {
  const auto g = parse_hg("start S\nS -> *a\nS -> *B\nB -> *B b\nC -> *c\n");
  std::set<std::string> names;
  for (SymId s : useless_symbols(g)) names.insert(g.name(s));
  EXPECT_EQ(names, (std::set<std::string>{"B", "C", "b", "c"}));
  EXPECT_FALSE(has_useless_symbols(parse_hg("start S\nS -> c *A b\nA -> *a\n")));
}

// A symbol is useful exactly when it occurs in some derivation of a short
// string, for grammars whose language is finite enough to see it.
TEST(UselessSymbols, MatchEnumerationEvidence) {
  std::mt19937 rng(17);
  for (int k = 0; k < 150; ++k) {
    const auto g = random_head_grammar(rng);
    const auto productive = productive_symbols(g);
    for (SymId a : g.nonterminals()) {
      const bool derives = [&] {
        HeadGrammar sub(g.symbols(), g.rules(), a);
        return !enumerate(sub, 6).empty();
      }();
      if (derives) EXPECT_TRUE(productive.count(a)) << to_hg(g);
    }
    if (!productive.count(g.start())) EXPECT_TRUE(enumerate(g, 6).empty());
    const auto reachable = reachable_symbols(g);
    const auto useless = useless_symbols(g);
    for (const auto& w : enumerate(g, 5))
      for (SymId s : w) {
        EXPECT_TRUE(reachable.count(s));
        EXPECT_FALSE(useless.count(s));
      }
  }
}

TEST(Subsequence, Checker) {
  const auto g = parse_hg("start S\nS -> c *A b\nA -> *a\n");
  const SubsequenceChecker checker(g, 3);
  EXPECT_EQ(checker.check(std::vector<SymId>{}), SubsequenceVerdict::holds);
  EXPECT_EQ(checker.check(tokens(g, "c b")), SubsequenceVerdict::holds);
  EXPECT_EQ(checker.check(tokens(g, "b c")), SubsequenceVerdict::violated);
  EXPECT_EQ(checker.check(tokens(g, "c a d")), SubsequenceVerdict::violated);

  const auto rec = parse_hg("start S\nS -> a *S\nS -> *b\n");
  const SubsequenceChecker bounded(rec, 3);
  EXPECT_EQ(bounded.check(tokens(rec, "a a a b")), SubsequenceVerdict::inconclusive);
  EXPECT_EQ(bounded.check(tokens(rec, "b a")), SubsequenceVerdict::inconclusive);
  EXPECT_EQ(bounded.check(tokens(rec, "a b")), SubsequenceVerdict::holds);
}

TEST(Subsequence, UselessSymbolsAreRejected) {
  const auto g = parse_hg("start S\nS -> *a\nC -> *c\n");
  EXPECT_THROW(check_subsequence_property(g, RunStats{}, std::vector<SymId>{}, 3), std::invalid_argument);
}

TEST(Subsequence, RecognizersKeepTheProperty) {
  const auto g = parse_hg("start S\nS -> c *A b\nS -> c *A d\nA -> e *a\n");
  for (auto alg : plain_algorithms()) {
    for (const auto* text : {"c e a b", "c e a e", "b e a c", "c c c c"}) {
      const auto w = tokens(g, text);
      const auto ctx = make_context(g);
      RunStats stats;
      switch (alg) {
        case Algorithm::td: stats = run(build_td(ctx), w).stats; break;
        case Algorithm::hc: stats = run(build_hc(ctx), w).stats; break;
        case Algorithm::phi: stats = run(build_phi(ctx), w).stats; break;
        case Algorithm::ehi: stats = run(build_ehi(ctx), w).stats; break;
        case Algorithm::hi: stats = run(build_hi(ctx), w).stats; break;
        default: continue;
      }
      EXPECT_EQ(check_subsequence_property(g, stats, w, 8), SubsequenceVerdict::holds) << to_string(alg) << " " << text;
    }
  }
}

}  // namespace
}  // namespace hdp
