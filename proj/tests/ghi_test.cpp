#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace hdp {
namespace {

using test::tokens;

struct Ex1 {
  Ex1() : base(test::example1()), gp(std::make_shared<const GhiGrammar>(base)) {}

  const GhiGrammar& g() const { return *gp; }
  const GhiView& v() const { return gp->forward(); }
  SymId sym(const std::string& name) const { return *g().symbols().find(name); }

  Element elem(const std::string& text) const {
    for (std::uint32_t t = 0; t < g().nodes().size(); ++t)
      if (g().render_tree(t) == text) return t;
    for (std::size_t r = 0; r < g().rules().size(); ++r)
      if (g().render_element(rule_element(r)) == text) return rule_element(r);
    throw std::invalid_argument("no element " + text);
  }

  ElementSet set(std::initializer_list<const char*> texts) const {
    std::set<Element> out;
    for (const char* t : texts) out.insert(elem(t));
    return canonical(out);
  }

  GenHeadGrammar base;
  std::shared_ptr<const GhiGrammar> gp;
};

TEST(GhiTrace, ExampleGrammar) {
  const Ex1 ex;
  const auto w = tokens(ex.base, "c a b s");
  const auto r = run(build_ghi(ex.gp), w);
  ASSERT_EQ(r.verdict, Verdict::accept);
  const auto rows = trace_rows(accepting_trace(r), ex.g());
  ASSERT_EQ(rows.size(), 17u);

  const std::string init = "[-1, {S′ → ⊥(S)}, 0, 4]";
  const std::string s_rules = "[0, 3, {S → ((c)A(b))s, S → (A(d))s, S → (B)s}, 4]";
  const std::string q7 = "[0, 1, {(c)A(b), A(d), B → A(b)}, 2, 3]";
  const std::string q4 = "[0, 1, {(c)A(b), B → A(b)}, 3]";
  const std::vector<std::pair<std::string, std::string>> expected{
      {"", init},
      {"3a", init + " [0, 3, {S → ((c)A(b))s, S → (A(d))s, S → (B)s}, 4, 4]"},
      {"1a", init + " " + s_rules},
      {"3b", init + " " + s_rules + " [0, 1, {A → a}, 2, 3]"},
      {"1a", init + " " + s_rules + " [0, 1, {A → a}, 2]"},
      {"1d", init + " " + s_rules + " [1, A → a, 2]"},
      {"7b", init + " " + s_rules + " " + q7},
      {"2a", init + " " + s_rules + " " + q7 + " [2, 2, {b}, 3, 3]"},
      {"1a, 1d", init + " " + s_rules + " " + q7 + " [2, b, 3]"},
      {"4a", init + " " + s_rules + " " + q4},
      {"3b", init + " " + s_rules + " " + q4 + " [0, 0, {c}, 1, 1]"},
      {"1a, 1d", init + " " + s_rules + " " + q4 + " [0, c, 1]"},
      {"5b", init + " " + s_rules + " [0, (c)A(b), 3]"},
      {"5b", init + " [0, S → ((c)A(b))s, 4]"},
      {"7a", init + " [0, 0, {S}, 4, 4]"},
      {"1a, 1d", init + " [0, S, 4]"},
      {"5a", "[-1, S′ → ⊥(S), 4]"},
  };
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(rows[i].label, expected[i].first) << "row " << i;
    EXPECT_EQ(rows[i].stack, expected[i].second) << "row " << i;
  }
  EXPECT_TRUE(replay(build_ghi(ex.gp), w, accepting_trace(r)));
}

TEST(GhiTrace, PrefixIsRejected) {
  const Ex1 ex;
  EXPECT_EQ(run(build_ghi(ex.gp), tokens(ex.base, "c a b")).verdict, Verdict::reject);
  EXPECT_EQ(run(build_ghi(ex.gp), tokens(ex.base, "s")).verdict, Verdict::reject);
}

TEST(GhiSets, Closure) {
  const Ex1 ex;
  const auto q = ex.set({"(c)A(b)", "A(d)", "B"});
  EXPECT_EQ(ex.v().closure(q), ex.set({"(c)A(b)", "A(d)", "B", "B → A(b)", "A → a"}));
  EXPECT_TRUE(ex.v().closure({}).empty());
  EXPECT_EQ(ex.v().closure(ex.v().closure(q)), ex.v().closure(q));
}

TEST(GhiSets, Goto) {
  const Ex1 ex;
  const auto q = ex.v().closure(ex.set({"(c)A(b)", "A(d)", "B"}));
  EXPECT_EQ(ex.v().goto_symbol(q, ex.sym("A")), ex.set({"(c)A(b)", "A(d)", "B → A(b)"}));
  EXPECT_TRUE(ex.v().goto_symbol(ex.v().closure(ex.set({"(c)A(b)"})), ex.sym("c")).empty());
}

TEST(GhiSets, GotoLeftAndRight) {
  const Ex1 ex;
  const auto top = ex.set({"S′ → ⊥(S)"});
  EXPECT_EQ(ex.v().goto_right(top, ex.elem("S")), top);
  EXPECT_TRUE(ex.v().goto_left(ex.set({"(c)A(b)", "((c)A(b))s"}), kNoTree).empty());
  EXPECT_EQ(ex.v().goto_right(ex.set({"A(d)", "A → a", "B"}), kNoTree), ex.set({"A → a", "B"}));
  EXPECT_EQ(ex.v().goto_left(ex.set({"(c)A(b)", "A(d)"}), ex.elem("c")), ex.set({"(c)A(b)"}));
}

TEST(GhiSets, LeftAndRightSets) {
  const Ex1 ex;
  const auto s_rules = ex.set({"S → ((c)A(b))s", "S → (A(d))s", "S → (B)s"});
  EXPECT_EQ(ex.v().left_set(s_rules), ex.v().closure(ex.set({"(c)A(b)", "A(d)", "B"})));
  EXPECT_TRUE(ex.v().right_set(s_rules).empty());
  EXPECT_TRUE(ex.v().right_set(ex.set({"A → a"})).empty());
  EXPECT_TRUE(ex.v().left_set({}).empty());
  EXPECT_EQ(ex.g().backward().right_set(s_rules), ex.g().mirror(ex.v().left_set(s_rules)));
}

TEST(GhiSets, RandomSubsetsAndClosure) {
  std::mt19937 rng(9);
  for (int n = 0; n < 60; ++n) {
    const GhiGrammar g(random_gen_head_grammar(rng));
    for (const GhiView* v : {&g.forward(), &g.backward()}) {
      std::set<Element> raw;
      for (int k = 0; k < 3; ++k)
        raw.insert(std::uniform_int_distribution<Element>(0, static_cast<Element>(g.nodes().size() - 1))(rng));
      const auto q = canonical(raw);
      const auto c = v->closure(q);
      EXPECT_TRUE(std::includes(c.begin(), c.end(), q.begin(), q.end()));
      EXPECT_EQ(v->closure(c), c);
      for (SymId x = 0; x < g.symbols().size(); ++x) {
        const auto sub = v->goto_symbol(c, x);
        EXPECT_TRUE(std::includes(c.begin(), c.end(), sub.begin(), sub.end()));
      }
      for (std::uint32_t t = 0; t < g.nodes().size(); ++t) {
        const auto l = v->goto_left(c, t);
        const auto r = v->goto_right(c, t);
        EXPECT_TRUE(std::includes(c.begin(), c.end(), l.begin(), l.end()));
        EXPECT_TRUE(std::includes(c.begin(), c.end(), r.begin(), r.end()));
      }
    }
  }
}

TEST(Yld, Cases) {
  const Ex1 ex;
  const auto s_rules = ex.set({"S → ((c)A(b))s", "S → (A(d))s", "S → (B)s"});
  EXPECT_EQ(yld(GhiItem::full(0, 3, s_rules, 4, 4), ex.g()), std::vector<std::string>{"s"});
  EXPECT_EQ(yld(ghi_fin(ex.g(), 4), ex.g()), (std::vector<std::string>{"⊥", "[S]"}));
  EXPECT_EQ(yld(GhiItem::done(0, ex.elem("c"), 1), ex.g()), std::vector<std::string>{"c"});
  EXPECT_EQ(yld(GhiItem::right_open(0, ex.set({"(c)A(b)"}), 2, 3), ex.g()), (std::vector<std::string>{"[c]", "A"}));
  EXPECT_THROW(yld(GhiItem::left_open(0, 1, ex.set({"(c)A(b)", "A(d)"}), 2), ex.g()), std::logic_error);
}

TEST(Yld, ConsistentOnReachableItems) {
  const Ex1 ex;
  RunLimits all;
  all.stop_at_accept = false;
  std::size_t seen = 0;
  for (const auto* text : {"c a b s", "a d s", "a b s", "c a d s"})
    run(build_ghi(ex.gp), tokens(ex.base, text), all, Observer<GhiItem>([&](const StackView<GhiItem>& s) {
          for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NO_THROW(yld(s[i], ex.g()));
          ++seen;
        }));
  EXPECT_GT(seen, 20u);
}

// Reachable configurations cover pairwise disjoint spans (k, m].
TEST(GhiProperties, SpansDoNotOverlap) {
  const auto corpus = gen_head_grammar_corpus(41, 30, CorpusFilter::non_head_recursive, 4);
  std::size_t seen = 0;
  for (const auto& base : corpus) {
    const auto gp = std::make_shared<const GhiGrammar>(base);
    const auto a = build_ghi(gp);
    RunLimits all;
    all.stop_at_accept = false;
    for (const auto& w : all_strings(flatten(base).terminals(), 3))
      run(a, w, all, Observer<GhiItem>([&](const StackView<GhiItem>& s) {
            std::vector<std::pair<int, int>> spans;
            for (std::size_t i = 0; i < s.size(); ++i) {
              ASSERT_TRUE(well_formed(s[i])) << render(s[i], *gp);
              spans.emplace_back(s[i].k, s[i].m);
            }
            std::sort(spans.begin(), spans.end());
            for (std::size_t t = 1; t < spans.size(); ++t) EXPECT_LE(spans[t - 1].second, spans[t].first);
            ++seen;
          }));
  }
  EXPECT_GT(seen, 1000u);
}

std::vector<std::vector<GhiItem>> apply(const Automaton<GhiItem>& a, const std::string& label,
                                        const std::vector<GhiItem>& stack, const InputView& in) {
  std::vector<const GhiItem*> ptrs;
  for (const auto& it : stack) ptrs.push_back(&it);
  std::vector<Successor<GhiItem>> succ;
  a.find_clause(label)->apply(StackView<GhiItem>(ptrs), in, succ);
  std::vector<std::vector<GhiItem>> out;
  for (const auto& s : succ) {
    auto next = stack;
    next.resize(next.size() - s.pop);
    next.insert(next.end(), s.push.begin(), s.push.end());
    out.push_back(std::move(next));
  }
  return out;
}

// Closing both sides of a leaf in either order gives the same finished trees.
TEST(GhiProperties, EmptySubtreeConversionsCommute) {
  const Ex1 ex;
  const auto a = build_ghi(ex.gp);
  std::size_t compared = 0;
  for (const auto* text : {"c a b s", "a d s", "a b s"}) {
    const auto w = tokens(ex.base, text);
    const InputView in(w, ex.g().bottom());
    RunLimits all;
    all.stop_at_accept = false;
    run(a, w, all, Observer<GhiItem>([&](const StackView<GhiItem>& s) {
          if (s.top().shape != GhiShape::full) return;
          const std::vector<GhiItem> one{s.top()};
          auto finish = [&](const char* first, const char* second) {
            std::set<std::string> out;
            for (const auto& mid : apply(a, first, one, in))
              for (const auto& end : apply(a, second, mid, in)) out.insert(render(end.back(), ex.g()));
            return out;
          };
          const auto right_first = finish("1a", "1d");
          const auto left_first = finish("1b", "1c");
          EXPECT_EQ(right_first, left_first) << render(s.top(), ex.g());
          compared += right_first.size();
        }));
  }
  EXPECT_GT(compared, 0u);
}

TEST(GhiEmbed, AgreesWithHc) {
  const auto corpus = head_grammar_corpus(51, 25, CorpusFilter::non_head_recursive, 4);
  for (const auto& g : corpus) {
    const auto hc = build_hc(g);
    const auto gp = std::make_shared<const GhiGrammar>(embed(g));
    const auto ghi = build_ghi(gp);
    for (const auto& w : all_strings(g.terminals(), 5)) {
      const auto a = run(hc, w);
      const auto b = run(ghi, w);
      if (a.verdict == Verdict::resource_limit || b.verdict == Verdict::resource_limit) continue;
      EXPECT_EQ(a.verdict, b.verdict) << to_hg(g);
    }
  }
}

TEST(GhiOracle, AgreesOnTauHead) {
  const auto corpus = gen_head_grammar_corpus(61, 30, CorpusFilter::non_head_recursive, 4);
  for (const auto& base : corpus) {
    const auto t = tau_head(base);
    const auto a = build_ghi(base);
    for (const auto& w : all_strings(flatten(base).terminals(), 4)) {
      const auto r = run(a, w);
      ASSERT_NE(r.verdict, Verdict::resource_limit) << to_ghg(base);
      EXPECT_EQ(r.verdict == Verdict::accept, oracle_recognize(t, w)) << to_ghg(base);
    }
  }
}

}  // namespace
}  // namespace hdp
