#include <gtest/gtest.h>

#include "test_util.hpp"

namespace hdp {
namespace {

using test::tokens;

const char* kCab = "start S\nS -> c *A b\nA -> *a\n";
const char* kInfix = "start S\nS -> c *A b\nS -> c *A d\nA -> *a\n";

Verdict verdict_of(Algorithm alg, const HeadGrammar& g, const std::string& input, const RunLimits& limits = {}) {
  return run_report(alg, make_context(g), "g", test::words(input), limits).verdict;
}

TEST(Td, SingleRule) {
  const auto g = parse_hg("start S\nS -> *a\n");
  const auto r = run(build_td(g), tokens(g, "a"));
  ASSERT_EQ(r.verdict, Verdict::accept);
  EXPECT_EQ(accepting_trace(r).labels(), (std::vector<std::string>{"0a", "1", "4a"}));
}

TEST(Td, InitAndFin) {
  const auto ctx = make_context(parse_hg(kCab));
  const auto a = build_td(ctx);
  const auto& g = ctx->aug.grammar();
  EXPECT_EQ(render(a.init(3), g), "[-1, -1, S′ → • ⊥ • S, 0, 3]");
  EXPECT_EQ(render(a.fin(3), g), "[-1, -1, S′ → • ⊥ S •, 3, 3]");
}

TEST(Td, HeadInTheMiddle) {
  const auto g = parse_hg(kCab);
  EXPECT_EQ(verdict_of(Algorithm::td, g, "c a b"), Verdict::accept);
  EXPECT_EQ(verdict_of(Algorithm::td, g, "a b"), Verdict::reject);
}

TEST(Td, HeadRecursionHitsGuards) {
  const auto g = parse_hg("start S\nS -> *S a\nS -> *b\n");
  const auto r = run(build_td(g), tokens(g, "b a c"));
  EXPECT_EQ(r.verdict, Verdict::resource_limit);
  EXPECT_TRUE(r.stats.depth_limit_hit || r.stats.step_limit_hit);
}

TEST(Hc, AgreesWithTdAndOracle) {
  const auto g = parse_hg(kCab);
  const auto alphabet = g.terminals();
  for (const auto& w : all_strings(alphabet, 4)) {
    const auto input = test::names(g, w);
    std::string text;
    for (const auto& s : input) text += s + " ";
    const Verdict expected = oracle_recognize(g, w) ? Verdict::accept : Verdict::reject;
    EXPECT_EQ(verdict_of(Algorithm::hc, g, text), expected) << text;
    EXPECT_EQ(verdict_of(Algorithm::td, g, text), expected) << text;
  }
}

TEST(Hc, NeverPredictsUnreachableHeadCorners) {
  const auto ctx = make_context(parse_hg("start S\nS -> c *A b\nA -> *a\nC -> *a\n"));
  const auto& g = ctx->aug.grammar();
  const SymId C = *g.symbols().find("C");
  const auto a = build_hc(ctx);
  bool saw_c = false;
  run(a, tokens(g, "c a b"), {}, Observer<DottedItem>([&](const StackView<DottedItem>& s) {
        for (std::size_t i = 0; i < s.size(); ++i)
          if (!s[i].goal && g.rule(s[i].rule).lhs == C) saw_c = true;
      }));
  EXPECT_FALSE(saw_c);
}

TEST(Hc, CyclicGrammarHitsGuards) {
  const auto g = parse_hg("start S\nS -> *A\nA -> *S\nA -> *a\n");
  RunLimits limits;
  limits.stop_at_accept = false;
  const auto r = run(build_hc(g), tokens(g, "a"), limits);
  EXPECT_TRUE(r.stats.pruned > 0 || r.stats.depth_limit_hit || r.stats.step_limit_hit);
}

TEST(Phi, InitAndFin) {
  const auto ctx = make_context(parse_hg(kCab));
  const auto a = build_phi(ctx);
  const auto& g = ctx->aug.grammar();
  EXPECT_EQ(render(a.init(3), g), "[-1, -1, S′ → ⊥, 0, 3]");
  EXPECT_EQ(render(a.fin(3), g), "[-1, -1, S′ → ⊥ S, 3, 3]");
}

TEST(Phi, AgreesWithHcOnCommonInfix) {
  const auto g = parse_hg(kInfix);
  for (const auto& w : all_strings(g.terminals(), 4)) {
    const auto ctx = make_context(g);
    EXPECT_EQ(run(build_phi(ctx), w).verdict, run(build_hc(ctx), w).verdict);
  }
}

TEST(Phi, FewerConfigurationsThanHcOnCommonInfix) {
  const auto g = parse_hg(kInfix);
  const auto ctx = make_context(g);
  RunLimits exhaustive;
  exhaustive.stop_at_accept = false;
  const auto w = tokens(g, "c a b");
  const auto hc = run(build_hc(ctx), w, exhaustive);
  const auto phi = run(build_phi(ctx), w, exhaustive);
  EXPECT_EQ(phi.verdict, Verdict::accept);
  EXPECT_LT(phi.stats.configurations_explored, hc.stats.configurations_explored);
}

TEST(Phi, SingleRule) {
  const auto g = parse_hg("start S\nS -> *a\n");
  EXPECT_EQ(verdict_of(Algorithm::phi, g, "a"), Verdict::accept);
  EXPECT_EQ(verdict_of(Algorithm::phi, g, "a a"), Verdict::reject);
}

TEST(Ehi, InitAndFin) {
  const auto ctx = make_context(parse_hg(kCab));
  const auto a = build_ehi(ctx);
  const auto& g = ctx->aug.grammar();
  EXPECT_EQ(render(a.init(3), g), "[-1, -1, {S′} → ⊥, 0, 3]");
  EXPECT_EQ(render(a.fin(3), g), "[-1, -1, {S′} → ⊥ S, 3, 3]");
}

TEST(Ehi, MergesAcrossLeftHandSides) {
  const auto g = parse_hg(test::read_file(test::grammar_path("infix3.hg")));
  const auto ctx = make_context(g);
  RunLimits exhaustive;
  exhaustive.stop_at_accept = false;
  const auto w = tokens(g, "e c a d");
  const auto phi = run(build_phi(ctx), w, exhaustive);
  const auto ehi = run(build_ehi(ctx), w, exhaustive);
  EXPECT_EQ(ehi.verdict, Verdict::accept);
  EXPECT_LT(ehi.stats.configurations_explored, phi.stats.configurations_explored);
  bool merged = false;
  run(build_ehi(ctx), w, exhaustive, Observer<EhiItem>([&](const StackView<EhiItem>& s) {
        if (s.top().delta.size() > 1) merged = true;
      }));
  EXPECT_TRUE(merged);
}

// Every item of every explored stack is well formed; for EHI this includes
// a non-empty Δ.
TEST(WellFormedness, AllRecognizers) {
  const auto corpus = head_grammar_corpus(77, 40, CorpusFilter::non_head_recursive, 4);
  std::size_t checked = 0;
  for (const auto& g : corpus) {
    const auto ctx = make_context(g);
    const auto& ag = ctx->aug.grammar();
    RunLimits limits;
    limits.stop_at_accept = false;
    for (const auto& w : all_strings(g.terminals(), 3)) {
      run(build_td(ctx), w, limits, Observer<DottedItem>([&](const StackView<DottedItem>& s) {
            for (std::size_t i = 0; i < s.size(); ++i) ASSERT_TRUE(well_formed(s[i], ag)) << render(s[i], ag);
            ++checked;
          }));
      run(build_hc(ctx), w, limits, Observer<DottedItem>([&](const StackView<DottedItem>& s) {
            for (std::size_t i = 0; i < s.size(); ++i) ASSERT_TRUE(well_formed(s[i], ag)) << render(s[i], ag);
          }));
      run(build_phi(ctx), w, limits, Observer<PhiItem>([&](const StackView<PhiItem>& s) {
            for (std::size_t i = 0; i < s.size(); ++i)
              ASSERT_TRUE(well_formed(s[i], ctx->forward)) << render(s[i], ag);
          }));
      run(build_ehi(ctx), w, limits, Observer<EhiItem>([&](const StackView<EhiItem>& s) {
            for (std::size_t i = 0; i < s.size(); ++i)
              ASSERT_TRUE(well_formed(s[i], ctx->forward)) << render(s[i], ag);
          }));
      run(build_hi(ctx), w, limits, Observer<HiItem>([&](const StackView<HiItem>& s) {
            for (std::size_t i = 0; i < s.size(); ++i) ASSERT_TRUE(well_formed(s[i], ag)) << render(s[i], ag);
          }));
    }
  }
  EXPECT_GT(checked, 1000u);
}

// HC with a scan clause that ignores which symbol it reads.
Automaton<DottedItem> broken_hc(std::shared_ptr<const GrammarContext> ctx) {
  auto a = build_hc(ctx);
  const OrientedGrammar& o = ctx->forward;
  for (auto& c : a.clauses) {
    if (c.label != "2a") continue;
    c.apply = [&o](const StackView<DottedItem>& s, const InputView& in, std::vector<Successor<DottedItem>>& out) {
      const DottedItem& top = s.top();
      const SymId a = dotted::next_right(top, o);
      if (a == kNoSymbol || !o.is_terminal(a) || top.m >= top.j) return;
      DottedItem next = top;
      ++next.rd;
      ++next.m;
      out.push_back({1, {next}, {top.m + 1}});
    };
  }
  return a;
}

TEST(SubsequenceMetaTest, MutatedScanIsCaught) {
  const auto g = parse_hg("start S\nS -> *a b\n");
  const auto ctx = make_context(g);
  const auto w = tokens(g, "a c");
  const auto good = run(build_hc(ctx), w);
  EXPECT_EQ(good.verdict, Verdict::reject);
  EXPECT_EQ(check_subsequence_property(g, good.stats, w, 8), SubsequenceVerdict::holds);
  const auto bad = run(broken_hc(ctx), w);
  EXPECT_EQ(bad.verdict, Verdict::accept);
  EXPECT_EQ(check_subsequence_property(g, bad.stats, w, 8), SubsequenceVerdict::violated);
}

TEST(SubsequenceProperty, FailedHcRun) {
  const auto g = parse_hg(kCab);
  const auto w = tokens(g, "c a d");
  const auto r = run(build_hc(g), w);
  EXPECT_EQ(r.verdict, Verdict::reject);
  EXPECT_EQ(check_subsequence_property(g, r.stats, w, 3), SubsequenceVerdict::holds);
}

}  // namespace
}  // namespace hdp
