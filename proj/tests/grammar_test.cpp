#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace hdp {
namespace {

using test::example1;

HeadGrammar hg(const std::string& text) { return parse_hg(text); }

SymId sym(const HeadGrammar& g, const std::string& name) { return *g.symbols().find(name); }

TEST(Validate, SmallestGrammarIsValid) { EXPECT_TRUE(validate(hg("start S\nS -> *a\n")).empty()); }

TEST(Validate, EmptyRhsIsReported) {
  const auto d = validate(hg("start S\nS -> *a\nS ->\n"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].rule, 1u);
  EXPECT_NE(d[0].message.find("empty right-hand side"), std::string::npos);
}

TEST(Validate, StartWithoutRules) {
  const auto d = validate(hg("start T\nS -> *a\n"));
  EXPECT_FALSE(d.empty());
}

TEST(HgFormat, MultipleHeadsIsAParseError) {
  try {
    parse_hg("start S\nS -> *a *b\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
    EXPECT_NE(std::string(e.what()).find("multiple heads"), std::string::npos);
  }
}

TEST(HgFormat, MissingHeadAndBadTokens) {
  EXPECT_THROW(parse_hg("start S\nS -> a b\n"), ParseError);
  EXPECT_THROW(parse_hg("S -> *a\n"), ParseError);
  EXPECT_THROW(parse_hg("start S\nS => *a\n"), ParseError);
  EXPECT_THROW(parse_hg("start S\nS -> *a-b\n"), ParseError);
}

TEST(HgFormat, CommentsAndBlankLines) {
  const auto g = hg("# grammar\n\nstart S   # the start\nS -> c *A b\n\nA -> *a # leaf\n");
  ASSERT_EQ(g.rules().size(), 2u);
  EXPECT_EQ(g.rule_string(0), "S -> c *A b");
  EXPECT_EQ(g.rule_string(1), "A -> *a");
}

TEST(HgFormat, RoundTrip) {
  const auto g = hg("start S\nS -> c *A b\nA -> *a\nA -> [x] *a S'\n");
  EXPECT_EQ(to_hg(parse_hg(to_hg(g))), to_hg(g));
}

TEST(HgFormat, BottomIsNotWritable) { EXPECT_THROW(parse_hg("start S\nS -> *⊥\n"), ParseError); }

TEST(Grammar, StatusIsInferredFromLeftHandSides) {
  const auto g = hg("start S\nS -> c *A b\nA -> *a\n");
  EXPECT_TRUE(g.is_nonterminal(sym(g, "S")));
  EXPECT_TRUE(g.is_nonterminal(sym(g, "A")));
  EXPECT_TRUE(g.is_terminal(sym(g, "c")));
  EXPECT_EQ(g.terminals().size(), 3u);
}

TEST(Augment, AddsOneRuleAndTwoFreshSymbols) {
  const auto g = hg("start S\nS -> *a\n");
  const auto aug = augment(g);
  const auto& r = aug.grammar().rules();
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(aug.grammar().rule_string(1), "S′ -> *⊥ S");
  EXPECT_EQ(aug.grammar().rule_string(0), "S -> *a");
  EXPECT_EQ(aug.grammar().symbol_count(), g.symbol_count() + 2);
  EXPECT_EQ(aug.grammar().start(), aug.start_prime());
  EXPECT_TRUE(aug.grammar().is_terminal(aug.bottom()));
}

TEST(Augment, AsciiPrimeDoesNotCollide) {
  const auto g = hg("start S\nS -> *S' \nS' -> *a\n");
  const auto aug = augment(g);
  EXPECT_EQ(aug.grammar().name(aug.start_prime()), "S′");
  EXPECT_NE(aug.start_prime(), sym(g, "S'"));
}

TEST(Augment, CollidingNameGetsAnotherPrime) {
  SymbolTable symbols;
  const SymId s = symbols.intern("S");
  const SymId sp = symbols.intern("S′");
  const SymId a = symbols.intern("a");
  const HeadGrammar g(symbols, {{s, {sp}, 0}, {sp, {a}, 0}}, s);
  const auto aug = augment(g);
  EXPECT_EQ(aug.grammar().name(aug.start_prime()), "S′′");
}

TEST(Augment, AfterTauHeadAddsOneRule) {
  const auto t = tau_head(example1());
  EXPECT_EQ(augment(t).grammar().rules().size(), t.rules().size() + 1);
}

TEST(HeadCorner, HeadInTheMiddle) {
  const auto aug = augment(hg("start S\nS -> c *A b\nA -> *a\n"));
  const auto& g = aug.grammar();
  const auto full = head_corner(aug, HeadCornerVariant::full);
  const auto left = head_corner(aug, HeadCornerVariant::left);
  const SymId S = sym(g, "S"), A = sym(g, "A");
  EXPECT_TRUE(full.contains(A, S));
  EXPECT_FALSE(full.contains(S, A));
  EXPECT_TRUE(full.contains(S, S));
  EXPECT_FALSE(left.contains(A, S));
  for (SymId x : g.nonterminals()) EXPECT_TRUE(left.contains(x, x));
  EXPECT_EQ(left.pairs().size(), g.nonterminals().size());
}

TEST(HeadCorner, LeftmostHead) {
  const auto aug = augment(hg("start S\nS -> *A b\nA -> *a\n"));
  const auto& g = aug.grammar();
  const auto left = head_corner(aug, HeadCornerVariant::left);
  EXPECT_TRUE(left.contains(sym(g, "A"), sym(g, "S")));
  EXPECT_EQ(left.pairs().size(), g.nonterminals().size() + 1);
  EXPECT_FALSE(head_corner(aug, HeadCornerVariant::right).contains(sym(g, "A"), sym(g, "S")));
}

// Independent fixpoint: add (B, C) whenever (B, A) and A ◇ C, until stable.
std::set<std::pair<SymId, SymId>> naive_closure(const HeadGrammar& g, HeadCornerVariant v) {
  std::set<std::pair<SymId, SymId>> out;
  for (SymId a : g.nonterminals()) out.insert({a, a});
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules()) {
      const auto e = head_corner_edge(g, r, v);
      if (!e) continue;
      for (const auto& [b, a] : std::set(out))
        if (a == e->first && out.insert({b, e->second}).second) changed = true;
    }
  }
  return out;
}

TEST(HeadCorner, TauHeadOfExample1MatchesFixpoint) {
  const auto aug = augment(tau_head(example1()));
  for (auto v : {HeadCornerVariant::full, HeadCornerVariant::left, HeadCornerVariant::right})
    EXPECT_EQ(head_corner(aug, v).pairs(), naive_closure(aug.grammar(), v));
  const auto& g = aug.grammar();
  EXPECT_TRUE(head_corner(aug, HeadCornerVariant::full).contains(sym(g, "A"), sym(g, "[(c)A(b)]")));
}

TEST(HeadRecursion, SelfHead) {
  const auto c = detect_head_recursion(hg("start S\nS -> a *S b\nS -> *c\n"));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->size(), 1u);
}

TEST(HeadRecursion, NoneWhenHeadsBottomOut) {
  EXPECT_FALSE(detect_head_recursion(hg("start S\nS -> c *A b\nA -> *a\n")));
}

TEST(Cyclic, UnitCycle) {
  const auto g = hg("start S\nS -> *A\nA -> *S\nA -> *a\n");
  const auto c = detect_cyclic(g);
  ASSERT_TRUE(c);
  EXPECT_EQ(std::set<SymId>(c->begin(), c->end()), (std::set<SymId>{sym(g, "S"), sym(g, "A")}));
}

TEST(Cyclic, LongRhsCannotCycle) { EXPECT_FALSE(detect_cyclic(hg("start S\nS -> *A A\nA -> *a\n"))); }

// Brute force: A →⁺ A through unit rules within |N| steps.
bool derives_itself(const HeadGrammar& g, SymId a) {
  std::set<SymId> frontier{a};
  for (std::size_t step = 0; step < g.nonterminals().size(); ++step) {
    std::set<SymId> next;
    for (SymId x : frontier)
      for (auto r : g.rules_for(x))
        if (g.rule(r).rhs.size() == 1 && g.is_nonterminal(g.rule(r).rhs[0])) next.insert(g.rule(r).rhs[0]);
    if (next.count(a)) return true;
    frontier = next;
  }
  return false;
}

// Cycle in the ◇ edge graph by repeated relation composition.
bool head_cycle(const HeadGrammar& g) {
  const auto base = naive_closure(g, HeadCornerVariant::full);
  for (const auto& r : g.rules()) {
    const auto e = head_corner_edge(g, r, HeadCornerVariant::full);
    if (e && base.count({e->second, e->first})) return true;
  }
  return false;
}

TEST(RelationLaws, RandomGrammars) {
  std::mt19937 rng(11);
  for (int k = 0; k < 300; ++k) {
    const auto g = random_head_grammar(rng);
    const auto aug = augment(g);
    const auto full = head_corner(aug, HeadCornerVariant::full);
    const auto left = head_corner(aug, HeadCornerVariant::left);
    const auto right = head_corner(aug, HeadCornerVariant::right);
    const auto fp = full.pairs();
    for (SymId a : aug.grammar().nonterminals()) EXPECT_TRUE(full.contains(a, a));
    for (const auto& [b, a] : fp)
      for (const auto& [c, b2] : fp)
        if (b2 == b) EXPECT_TRUE(full.contains(c, a));
    for (const auto& p : left.pairs()) EXPECT_TRUE(fp.count(p));
    for (const auto& p : right.pairs()) EXPECT_TRUE(fp.count(p));
    auto again = full;
    again.close();
    EXPECT_EQ(again, full);
    EXPECT_EQ(fp, naive_closure(aug.grammar(), HeadCornerVariant::full));

    bool cyclic = false;
    for (SymId a : g.nonterminals()) cyclic = cyclic || derives_itself(g, a);
    EXPECT_EQ(detect_cyclic(g).has_value(), cyclic) << to_hg(g);
    EXPECT_EQ(detect_head_recursion(g).has_value(), head_cycle(g)) << to_hg(g);
    if (const auto c = detect_head_recursion(g)) {
      for (std::size_t i = 0; i < c->size(); ++i)
        EXPECT_TRUE(full.contains((*c)[(i + 1) % c->size()], (*c)[i]));
    }
  }
}

}  // namespace
}  // namespace hdp
