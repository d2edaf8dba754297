#pragma once

// HI recognition: items [i, k, Q, m, j] carry a set Q of double-dotted rules,
// and scanning or attaching a symbol may at the same time start a rule whose
// head is leftmost (gated by ∠*). Extending a recognized part pushes a new
// item instead of replacing the old one, so completing a rule of length r
// pops r items.

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hdp/engine.hpp"
#include "hdp/oriented.hpp"

namespace hdp {

struct DRule {
  std::uint32_t rule = 0;
  std::uint32_t ld = 0, rd = 0;

  auto operator<=>(const DRule&) const = default;
};

using DRuleSet = std::vector<DRule>;  // sorted, duplicate-free

struct HiItem {
  int i = 0, k = 0, m = 0, j = 0;
  DRuleSet q;

  bool operator==(const HiItem&) const = default;
};

inline std::size_t hash_value(const HiItem& it) {
  std::size_t h = hash_combine(hash_combine(std::size_t(it.i + 1), std::size_t(it.k + 1)), std::size_t(it.m + 1));
  h = hash_combine(h, std::size_t(it.j + 1));
  for (const auto& d : it.q) h = hash_combine(hash_combine(hash_combine(h, d.rule), d.ld), d.rd);
  return h;
}

inline DRuleSet canonical(std::set<DRule> s) { return {s.begin(), s.end()}; }

inline DRule mirror(const DRule& d, const HeadGrammar& g) {
  const auto len = static_cast<std::uint32_t>(g.rule(d.rule).size());
  return {d.rule, len - d.rd, len - d.ld};
}

inline DRuleSet mirror(const DRuleSet& q, const HeadGrammar& g) {
  std::set<DRule> out;
  for (const auto& d : q) out.insert(mirror(d, g));
  return canonical(std::move(out));
}

inline HiItem mirror(const HiItem& it, int n, const HeadGrammar& g) {
  return {n - it.j, n - it.m, n - it.k, n - it.i, mirror(it.q, g)};
}

inline std::string render(const DRule& d, const HeadGrammar& g) {
  const auto& r = g.rule(d.rule);
  std::string out = g.name(r.lhs) + " →";
  for (std::size_t p = 0; p <= r.size(); ++p) {
    if (p == d.ld || p == d.rd) out += " •";
    if (p < r.size()) out += " " + g.name(r.rhs[p]);
  }
  return out;
}

inline std::string render(const HiItem& it, const HeadGrammar& g) {
  std::string q;
  for (std::size_t p = 0; p < it.q.size(); ++p) q += (p ? ", " : "") + render(it.q[p], g);
  return "[" + std::to_string(it.i) + ", " + std::to_string(it.k) + ", {" + q + "}, " + std::to_string(it.m) + ", " +
         std::to_string(it.j) + "]";
}

inline bool well_formed(const HiItem& it, const HeadGrammar& g) {
  if (it.q.empty() || !std::is_sorted(it.q.begin(), it.q.end())) return false;
  for (const auto& d : it.q) {
    if (d.rule >= g.rules().size()) return false;
    const auto& r = g.rule(d.rule);
    if (!(d.ld <= r.head && r.head < d.rd && d.rd <= r.size())) return false;
  }
  return it.i <= it.k && it.k < it.m && it.m <= it.j;
}

namespace hi {

/// Nonterminals B with A → α•γ•Bβ ∈ Q (in the orientation of `o`).
inline std::set<SymId> wanted_right(const OrientedGrammar& o, const DRuleSet& q) {
  std::set<SymId> out;
  for (const auto& d : q) {
    const auto& r = o.rule(d.rule);
    if (d.rd < r.size() && o.is_nonterminal(r.rhs[d.rd])) out.insert(r.rhs[d.rd]);
  }
  return out;
}

inline bool gated(const HeadCornerRelation& rel, SymId c, const std::set<SymId>& wanted) {
  for (SymId b : wanted)
    if (rel.contains(c, b)) return true;
  return false;
}

inline DRuleSet goto_right1(const OrientedGrammar& o, const DRuleSet& q, SymId x) {
  const auto wanted = wanted_right(o, q);
  std::set<DRule> out;
  for (auto r : o.rules_with_head(x)) {
    const auto& rule = o.rule(r);
    if (gated(o.head_corner(), rule.lhs, wanted))
      out.insert({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(rule.head),
                  static_cast<std::uint32_t>(rule.head + 1)});
  }
  return canonical(std::move(out));
}

inline DRuleSet goto_right2(const OrientedGrammar& o, const DRuleSet& q, SymId x) {
  const auto wanted = wanted_right(o, q);
  std::set<DRule> out;
  for (auto r : o.rules_with_head(x)) {
    const auto& rule = o.rule(r);
    if (rule.head == 0 && gated(o.left_corner(), rule.lhs, wanted)) out.insert({static_cast<std::uint32_t>(r), 0, 1});
  }
  for (const auto& d : q) {
    const auto& rule = o.rule(d.rule);
    if (d.rd < rule.size() && rule.rhs[d.rd] == x) out.insert({d.rule, d.ld, d.rd + 1});
  }
  return canonical(std::move(out));
}

using Item = HiItem;
using Out = std::vector<Successor<Item>>;

// [i, k, Q, m, j] ↦ … [m, p−1, gotoright₁(Q, a_p), p, j]   for m+1 < p ≤ j
inline Matcher<Item> predict_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    for (int p = top.m + 2; p <= top.j; ++p) {
      const SymId a = in.at(p);
      if (a == kNoSymbol || !o.is_terminal(a)) continue;
      auto q = goto_right1(o, top.q, a);
      if (q.empty()) continue;
      Successor<Item> succ{0, {Item{top.m, p - 1, p, top.j, std::move(q)}}, {}};
      consult(succ.consulted, p, in.n());
      out.push_back(std::move(succ));
    }
  };
}

// [i, k, Q, m, j] ↦ … [i, k, gotoright₂(Q, a_{m+1}), m+1, j]
inline Matcher<Item> scan(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    if (top.m >= top.j) return;
    const SymId a = in.at(top.m + 1);
    if (a == kNoSymbol || !o.is_terminal(a)) return;
    auto q = goto_right2(o, top.q, a);
    if (q.empty()) return;
    Successor<Item> succ{0, {Item{top.i, top.k, top.m + 1, top.j, std::move(q)}}, {}};
    consult(succ.consulted, top.m + 1, in.n());
    out.push_back(std::move(succ));
  };
}

/// (lhs, length) of every complete rule in the top item, in order.
inline std::vector<std::pair<SymId, std::size_t>> completed(const OrientedGrammar& o, const Item& top) {
  std::set<std::pair<SymId, std::size_t>> seen;
  std::vector<std::pair<SymId, std::size_t>> out;
  for (const auto& d : top.q) {
    const auto& rule = o.rule(d.rule);
    if (d.ld == 0 && d.rd == rule.size() && seen.insert({rule.lhs, rule.size()}).second)
      out.emplace_back(rule.lhs, rule.size());
  }
  return out;
}

// I₁…I_{r−1} and the top item are successive snapshots of one rule being
// recognized, so each span strictly contains the one below it.
inline void check_nested(const StackView<Item>& s, std::size_t r) {
  for (std::size_t d = r - 1; d >= 1; --d) {
    const Item& lower = s.top(d);
    const Item& upper = s.top(d - 1);
    if (!(upper.k <= lower.k && lower.m <= upper.m && upper.m - upper.k > lower.m - lower.k))
      throw std::logic_error("reduction over items whose spans do not nest");
  }
}

// [i, k, Q, m, j] I₁…I_{r−1} [i′, k′, Q′, m′, j′] ↦ [i, k, Q, m, j][i′, k′, gotoright₁(Q, B), m′, j′]
//   if m < k′, for B → •X₁…X_r• ∈ Q′
inline Matcher<Item> climb_right(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    const Item& top = s.top();
    for (const auto& [b, r] : completed(o, top)) {
      if (s.size() <= r) continue;
      const Item& ctx = s.top(r);
      if (!(ctx.m < top.k)) continue;
      check_nested(s, r);
      auto q = goto_right1(o, ctx.q, b);
      if (q.empty()) continue;
      out.push_back({r, {Item{top.i, top.k, top.m, top.j, std::move(q)}}, {}});
    }
  };
}

// [i, k, Q, m, j] I₁…I_{r−1} [i′, k′, Q′, m′, j′] ↦ [i, k, Q, m, j][i, k, gotoright₂(Q, B), m′, j′]
//   if m = k′ or k = k′, for B → •X₁…X_r• ∈ Q′
inline Matcher<Item> attach(const OrientedGrammar& o) {
  return [&o](const StackView<Item>& s, const InputView&, Out& out) {
    const Item& top = s.top();
    for (const auto& [b, r] : completed(o, top)) {
      if (s.size() <= r) continue;
      const Item& ctx = s.top(r);
      if (ctx.m != top.k && ctx.k != top.k) continue;
      check_nested(s, r);
      auto q = goto_right2(o, ctx.q, b);
      if (q.empty()) continue;
      out.push_back({r, {Item{ctx.i, ctx.k, top.m, top.j, std::move(q)}}, {}});
    }
  };
}

}  // namespace hi

inline DRuleSet goto_right1(const GrammarContext& c, const DRuleSet& q, SymId x) {
  return hi::goto_right1(c.forward, q, x);
}
inline DRuleSet goto_right2(const GrammarContext& c, const DRuleSet& q, SymId x) {
  return hi::goto_right2(c.forward, q, x);
}
inline DRuleSet goto_left1(const GrammarContext& c, const DRuleSet& q, SymId x) {
  const HeadGrammar& g = c.aug.grammar();
  return mirror(hi::goto_right1(c.backward, mirror(q, g), x), g);
}
inline DRuleSet goto_left2(const GrammarContext& c, const DRuleSet& q, SymId x) {
  const HeadGrammar& g = c.aug.grammar();
  return mirror(hi::goto_right2(c.backward, mirror(q, g), x), g);
}

inline HiItem hi_init(const AugmentedGrammar& aug, int n) {
  return {-1, -1, 0, n, {{static_cast<std::uint32_t>(aug.augmented_rule()), 0, 1}}};
}

/// The stack [Init(n), [−1, −1, Q, n, n]] with S′ → •⊥S• ∈ Q.
inline bool hi_accepts(const AugmentedGrammar& aug, const StackView<HiItem>& s, int n) {
  if (s.size() != 2 || !(s[0] == hi_init(aug, n))) return false;
  const HiItem& top = s.top();
  const DRule done{static_cast<std::uint32_t>(aug.augmented_rule()), 0, 2};
  return top.i == -1 && top.k == -1 && top.m == n && top.j == n &&
         std::binary_search(top.q.begin(), top.q.end(), done);
}

inline Automaton<HiItem> build_hi(std::shared_ptr<const GrammarContext> ctx) {
  const auto& fwd = ctx->forward;
  const auto& bwd = ctx->backward;
  const AugmentedGrammar& aug = ctx->aug;
  const HeadGrammar& g = aug.grammar();
  std::function<HiItem(const HiItem&, int)> flip = [&g](const HiItem& it, int n) { return mirror(it, n, g); };

  Automaton<HiItem> a;
  a.name = "hi";
  a.bottom = aug.bottom();
  a.init = [&aug](int n) { return hi_init(aug, n); };
  a.fin = [&aug](int n) {
    return HiItem{-1, -1, n, n, {{static_cast<std::uint32_t>(aug.augmented_rule()), 0, 2}}};
  };
  a.accepts = [&aug](const StackView<HiItem>& s, int n) { return hi_accepts(aug, s, n); };
  std::size_t window = 0;
  for (const auto& r : g.rules()) window = std::max(window, r.size() + 1);
  a.clauses = {
      {"1a", hi::predict_right(fwd)},
      {"1b", mirror_matcher(hi::predict_right(bwd), flip, window)},
      {"2a", hi::scan(fwd)},
      {"2b", mirror_matcher(hi::scan(bwd), flip, window)},
      {"3a", hi::climb_right(fwd)},
      {"3b", mirror_matcher(hi::climb_right(bwd), flip, window)},
      {"4a", hi::attach(fwd)},
      {"4b", mirror_matcher(hi::attach(bwd), flip, window)},
  };
  a.render = [&g](const HiItem& it) { return render(it, g); };
  a.size_hint = g.rules().size() + g.nonterminals().size();
  a.owner = ctx;
  return a;
}

inline Automaton<HiItem> build_hi(const HeadGrammar& g) { return build_hi(make_context(g)); }

}  // namespace hdp
