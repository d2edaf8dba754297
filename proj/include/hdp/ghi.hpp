#pragma once

// Generalized HI recognition over generalized head grammars. Sets Q hold
// trees (α)X(β) and rules A → (α)X(β); items come in four shapes:
//   full       [i, k, Q, m, j]
//   right-open [k, Q, m, j]     (left part already attached)
//   left-open  [i, k, Q, m]     (right part already attached)
//   done       [k, t, m]

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hdp/engine.hpp"
#include "hdp/transform.hpp"

namespace hdp {

// Elements of Q: tree ids below kRuleBit, rule r encoded as kRuleBit | r, so
// trees sort before rules.
using Element = std::uint32_t;
using ElementSet = std::vector<Element>;  // sorted, duplicate-free
inline constexpr Element kRuleBit = 0x80000000U;
inline constexpr std::uint32_t kNoTree = 0xffffffffU;

inline bool is_rule(Element e) { return (e & kRuleBit) != 0; }
inline Element rule_element(std::size_t r) { return kRuleBit | static_cast<Element>(r); }
inline std::size_t rule_index(Element e) { return e & ~kRuleBit; }

inline ElementSet canonical(const std::set<Element>& s) { return {s.begin(), s.end()}; }

class GhiGrammar;

// Tree/rule operations in one reading direction. In the mirrored direction
// every tree has its subtrees swapped, so left and right trade places.
class GhiView {
 public:
  GhiView(const GhiGrammar& g, bool mirrored) : g_(&g), mirrored_(mirrored) {}

  bool mirrored() const { return mirrored_; }
  std::uint32_t tree_of(Element e) const;
  SymId root(Element e) const;
  std::uint32_t left(Element e) const;
  std::uint32_t right(Element e) const;

  ElementSet closure(const ElementSet& q) const;
  ElementSet goto_symbol(const ElementSet& q, SymId x) const;
  ElementSet goto_left(const ElementSet& q, std::uint32_t alpha) const;
  ElementSet goto_right(const ElementSet& q, std::uint32_t beta) const;
  ElementSet left_set(const ElementSet& q) const;
  ElementSet right_set(const ElementSet& q) const;

  bool is_terminal(SymId s) const;

 private:
  template <class Pred>
  ElementSet select(const ElementSet& q, Pred pred) const {
    ElementSet out;
    for (Element e : q)
      if (pred(e)) out.push_back(e);
    return out;
  }

  const GhiGrammar* g_;
  bool mirrored_;
};

class GhiGrammar {
 public:
  struct Node {
    SymId root = kNoSymbol;
    std::uint32_t left = kNoTree, right = kNoTree;
    std::uint32_t mirror = kNoTree;
  };
  struct Rule {
    SymId lhs = kNoSymbol;
    std::uint32_t rhs = kNoTree;
  };

  explicit GhiGrammar(const GenHeadGrammar& g) : base_(g), forward_(*this, false), backward_(*this, true) {
    require_valid(g);
    symbols_ = g.symbols();
    start_prime_ = symbols_.intern(symbols_.fresh_name(g.name(g.start()) + std::string(kPrimeSuffix), kPrimeSuffix));
    bottom_ = symbols_.intern(symbols_.fresh_name(std::string(kBottomName), kPrimeSuffix));

    std::vector<std::pair<SymId, RhsTree>> all;
    for (const auto& r : g.rules()) all.emplace_back(r.lhs, r.rhs);
    all.emplace_back(start_prime_, RhsTree(bottom_, std::nullopt, RhsTree(g.start())));
    augmented_rule_ = all.size() - 1;

    std::map<RhsTree, std::uint32_t> ids;
    for (const auto& [lhs, tree] : all) rules_.push_back({lhs, intern(tree, ids)});
    const std::size_t originals = nodes_.size();
    for (std::size_t t = 0; t < originals; ++t) nodes_[t].mirror = intern(mirrored(tree_at(t)), ids);
    for (std::size_t t = 0; t < nodes_.size(); ++t)
      if (nodes_[t].mirror == kNoTree) nodes_[t].mirror = ids.at(mirrored(tree_at(t)));

    is_nt_.assign(symbols_.size(), false);
    by_lhs_.assign(symbols_.size(), {});
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      is_nt_[rules_[r].lhs] = true;
      by_lhs_[rules_[r].lhs].push_back(r);
    }
  }

  GhiGrammar(const GhiGrammar&) = delete;
  GhiGrammar& operator=(const GhiGrammar&) = delete;

  const GenHeadGrammar& base() const { return base_; }
  const SymbolTable& symbols() const { return symbols_; }
  const std::string& name(SymId s) const { return symbols_.name(s); }
  SymId start_prime() const { return start_prime_; }
  SymId bottom() const { return bottom_; }
  SymId start() const { return base_.start(); }
  std::size_t augmented_rule() const { return augmented_rule_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::uint32_t t) const { return nodes_.at(t); }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<std::size_t>& rules_for(SymId lhs) const {
    static const std::vector<std::size_t> none;
    return lhs < by_lhs_.size() ? by_lhs_[lhs] : none;
  }
  bool is_nonterminal(SymId s) const { return s < is_nt_.size() && is_nt_[s]; }
  bool is_terminal(SymId s) const { return s < symbols_.size() && !is_nonterminal(s); }
  std::size_t nonterminal_count() const { return static_cast<std::size_t>(std::count(is_nt_.begin(), is_nt_.end(), true)); }

  const GhiView& forward() const { return forward_; }
  const GhiView& backward() const { return backward_; }
  const GhiView& view(bool mirrored) const { return mirrored ? backward_ : forward_; }

  /// Tree id of an existing tree, or kNoTree.
  std::uint32_t find_tree(const RhsTree& t) const {
    for (std::uint32_t id = 0; id < nodes_.size(); ++id)
      if (tree_at(id) == t) return id;
    return kNoTree;
  }

  RhsTree tree_at(std::uint32_t t) const {
    const Node& n = nodes_.at(t);
    std::optional<RhsTree> l, r;
    if (n.left != kNoTree) l = tree_at(n.left);
    if (n.right != kNoTree) r = tree_at(n.right);
    return RhsTree(n.root, std::move(l), std::move(r));
  }

  std::string render_tree(std::uint32_t t) const {
    const Node& n = nodes_.at(t);
    std::string out;
    if (n.left != kNoTree) out += "(" + render_tree(n.left) + ")";
    out += name(n.root);
    if (n.right != kNoTree) out += "(" + render_tree(n.right) + ")";
    return out;
  }

  std::string render_element(Element e) const {
    if (!is_rule(e)) return render_tree(e);
    const Rule& r = rules_.at(rule_index(e));
    return name(r.lhs) + " → " + render_tree(r.rhs);
  }

  std::string render_set(const ElementSet& q) const {
    std::string out = "{";
    for (std::size_t p = 0; p < q.size(); ++p) out += (p ? ", " : "") + render_element(q[p]);
    return out + "}";
  }

  Element mirror(Element e) const { return is_rule(e) ? e : nodes_.at(e).mirror; }
  ElementSet mirror(const ElementSet& q) const {
    std::set<Element> out;
    for (Element e : q) out.insert(mirror(e));
    return canonical(out);
  }

 private:
  static RhsTree mirrored(const RhsTree& t) {
    std::optional<RhsTree> l, r;
    if (t.right()) l = mirrored(*t.right());
    if (t.left()) r = mirrored(*t.left());
    return RhsTree(t.root(), std::move(l), std::move(r));
  }

  // Pre-order: a tree gets its id before its subtrees.
  std::uint32_t intern(const RhsTree& t, std::map<RhsTree, std::uint32_t>& ids) {
    auto it = ids.find(t);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    ids.emplace(t, id);
    nodes_.push_back({t.root(), kNoTree, kNoTree, kNoTree});
    const std::uint32_t l = t.left() ? intern(*t.left(), ids) : kNoTree;
    const std::uint32_t r = t.right() ? intern(*t.right(), ids) : kNoTree;
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  GenHeadGrammar base_;
  SymbolTable symbols_;
  SymId start_prime_ = kNoSymbol;
  SymId bottom_ = kNoSymbol;
  std::size_t augmented_rule_ = 0;
  std::vector<Node> nodes_;
  std::vector<Rule> rules_;
  std::vector<bool> is_nt_;
  std::vector<std::vector<std::size_t>> by_lhs_;
  GhiView forward_;
  GhiView backward_;
};

inline std::uint32_t GhiView::tree_of(Element e) const {
  if (!is_rule(e)) return e;
  const std::uint32_t t = g_->rules().at(rule_index(e)).rhs;
  return mirrored_ ? g_->node(t).mirror : t;
}
inline SymId GhiView::root(Element e) const { return g_->node(tree_of(e)).root; }
inline std::uint32_t GhiView::left(Element e) const { return g_->node(tree_of(e)).left; }
inline std::uint32_t GhiView::right(Element e) const { return g_->node(tree_of(e)).right; }
inline bool GhiView::is_terminal(SymId s) const { return g_->is_terminal(s); }

inline ElementSet GhiView::closure(const ElementSet& q) const {
  std::set<Element> out(q.begin(), q.end());
  std::vector<Element> work(q.begin(), q.end());
  while (!work.empty()) {
    const Element e = work.back();
    work.pop_back();
    for (auto r : g_->rules_for(root(e)))
      if (out.insert(rule_element(r)).second) work.push_back(rule_element(r));
  }
  return canonical(out);
}

inline ElementSet GhiView::goto_symbol(const ElementSet& q, SymId x) const {
  return select(q, [&](Element e) { return root(e) == x; });
}
inline ElementSet GhiView::goto_left(const ElementSet& q, std::uint32_t alpha) const {
  return select(q, [&](Element e) { return left(e) == alpha; });
}
inline ElementSet GhiView::goto_right(const ElementSet& q, std::uint32_t beta) const {
  return select(q, [&](Element e) { return right(e) == beta; });
}
inline ElementSet GhiView::left_set(const ElementSet& q) const {
  std::set<Element> sub;
  for (Element e : q)
    if (left(e) != kNoTree) sub.insert(left(e));
  return closure(canonical(sub));
}
inline ElementSet GhiView::right_set(const ElementSet& q) const {
  std::set<Element> sub;
  for (Element e : q)
    if (right(e) != kNoTree) sub.insert(right(e));
  return closure(canonical(sub));
}

// ---------------------------------------------------------------------------

enum class GhiShape : std::uint8_t { full, right_open, left_open, done };

struct GhiItem {
  GhiShape shape = GhiShape::full;
  int i = 0, k = 0, m = 0, j = 0;  // unused components are 0
  ElementSet q;                    // the single t for done items

  static GhiItem full(int i, int k, ElementSet q, int m, int j) { return {GhiShape::full, i, k, m, j, std::move(q)}; }
  static GhiItem right_open(int k, ElementSet q, int m, int j) {
    return {GhiShape::right_open, 0, k, m, j, std::move(q)};
  }
  static GhiItem left_open(int i, int k, ElementSet q, int m) {
    return {GhiShape::left_open, i, k, m, 0, std::move(q)};
  }
  static GhiItem done(int k, Element t, int m) { return {GhiShape::done, 0, k, m, 0, {t}}; }

  Element t() const { return q.front(); }
  bool operator==(const GhiItem&) const = default;
};

inline std::size_t hash_value(const GhiItem& it) {
  std::size_t h = static_cast<std::size_t>(it.shape);
  for (int v : {it.i, it.k, it.m, it.j}) h = hash_combine(h, static_cast<std::size_t>(v + 1));
  for (Element e : it.q) h = hash_combine(h, e);
  return h;
}

inline GhiItem mirror(const GhiItem& it, int n, const GhiGrammar& g) {
  ElementSet q = g.mirror(it.q);
  switch (it.shape) {
    case GhiShape::full: return GhiItem::full(n - it.j, n - it.m, std::move(q), n - it.k, n - it.i);
    case GhiShape::right_open: return GhiItem::left_open(n - it.j, n - it.m, std::move(q), n - it.k);
    case GhiShape::left_open: return GhiItem::right_open(n - it.m, std::move(q), n - it.k, n - it.i);
    case GhiShape::done: return GhiItem::done(n - it.m, q.front(), n - it.k);
  }
  return it;
}

inline std::string render(const GhiItem& it, const GhiGrammar& g) {
  auto s = [](int x) { return std::to_string(x); };
  switch (it.shape) {
    case GhiShape::full:
      return "[" + s(it.i) + ", " + s(it.k) + ", " + g.render_set(it.q) + ", " + s(it.m) + ", " + s(it.j) + "]";
    case GhiShape::right_open: return "[" + s(it.k) + ", " + g.render_set(it.q) + ", " + s(it.m) + ", " + s(it.j) + "]";
    case GhiShape::left_open: return "[" + s(it.i) + ", " + s(it.k) + ", " + g.render_set(it.q) + ", " + s(it.m) + "]";
    case GhiShape::done: return "[" + s(it.k) + ", " + g.render_element(it.t()) + ", " + s(it.m) + "]";
  }
  return "?";
}

inline bool well_formed(const GhiItem& it) {
  if (it.q.empty() || !std::is_sorted(it.q.begin(), it.q.end())) return false;
  switch (it.shape) {
    case GhiShape::full: return it.i <= it.k && it.k < it.m && it.m <= it.j;
    case GhiShape::right_open: return it.k < it.m && it.m <= it.j;
    case GhiShape::left_open: return it.i <= it.k && it.k < it.m;
    case GhiShape::done: return it.q.size() == 1 && it.k < it.m;
  }
  return false;
}

/// The string an item stands for over the nonterminals of tau_head(g):
/// X, [α]X, X[β] or [α]X[β] by shape. Throws if elements of Q disagree.
inline std::vector<std::string> yld(const GhiItem& it, const GhiGrammar& g) {
  const GhiView& v = g.forward();
  std::optional<std::vector<std::string>> result;
  for (Element e : it.q) {
    std::vector<std::string> out;
    const bool with_left = it.shape == GhiShape::right_open || it.shape == GhiShape::done;
    const bool with_right = it.shape == GhiShape::left_open || it.shape == GhiShape::done;
    if (with_left && v.left(e) != kNoTree) out.push_back("[" + g.render_tree(v.left(e)) + "]");
    out.push_back(g.name(v.root(e)));
    if (with_right && v.right(e) != kNoTree) out.push_back("[" + g.render_tree(v.right(e)) + "]");
    if (result && *result != out) throw std::logic_error("inconsistent yld for item " + render(it, g));
    result = std::move(out);
  }
  if (!result) throw std::logic_error("yld of an item with empty Q");
  return *result;
}

namespace ghi {

using Item = GhiItem;
using Out = std::vector<Successor<Item>>;

// [i, k, Q, m, j] ↦ [i, k, gotoright(Q, ϵ), m]
inline Matcher<Item> close_right(const GhiView& v) {
  return [&v](const StackView<Item>& s, const InputView&, Out& out) {
    const Item& top = s.top();
    if (top.shape != GhiShape::full) return;
    auto q = v.goto_right(top.q, kNoTree);
    if (!q.empty()) out.push_back({1, {Item::left_open(top.i, top.k, std::move(q), top.m)}, {}});
  };
}

// [k, Q, m, j] ↦ [k, t, m]   for t ∈ gotoright(Q, ϵ)
inline Matcher<Item> finish_right(const GhiView& v) {
  return [&v](const StackView<Item>& s, const InputView&, Out& out) {
    const Item& top = s.top();
    if (top.shape != GhiShape::right_open) return;
    for (Element t : v.goto_right(top.q, kNoTree)) out.push_back({1, {Item::done(top.k, t, top.m)}, {}});
  };
}

// [i, k, Q, m, j] or [k, Q, m, j] ↦ … [m, p−1, goto(right(Q), a_p), p, j]
inline Matcher<Item> shift_right(const GhiView& v, GhiShape shape) {
  return [&v, shape](const StackView<Item>& s, const InputView& in, Out& out) {
    const Item& top = s.top();
    if (top.shape != shape) return;
    const ElementSet rq = v.right_set(top.q);
    if (rq.empty()) return;
    for (int p = top.m + 1; p <= top.j; ++p) {
      const SymId a = in.at(p);
      if (a == kNoSymbol || !v.is_terminal(a)) continue;
      auto q = v.goto_symbol(rq, a);
      if (q.empty()) continue;
      Successor<Item> succ{0, {Item::full(top.m, p - 1, std::move(q), p, top.j)}, {}};
      consult(succ.consulted, p, in.n());
      out.push_back(std::move(succ));
    }
  };
}

// [i, k, Q, m, j][k′, γ, m′] ↦ [i, k, gotoright(Q, γ), m′]   if m = k′
inline Matcher<Item> attach_tree(const GhiView& v) {
  return [&v](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (top.shape != GhiShape::done || is_rule(top.t()) || below.shape != GhiShape::full || below.m != top.k) return;
    auto q = v.goto_right(below.q, top.t());
    if (!q.empty()) out.push_back({2, {Item::left_open(below.i, below.k, std::move(q), top.m)}, {}});
  };
}

// [k, Q, m, j][k′, γ, m′] ↦ [k, t, m′]   if m = k′, for t ∈ gotoright(Q, γ)
inline Matcher<Item> finish_tree(const GhiView& v) {
  return [&v](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (top.shape != GhiShape::done || is_rule(top.t()) || below.shape != GhiShape::right_open || below.m != top.k)
      return;
    for (Element t : v.goto_right(below.q, top.t())) out.push_back({2, {Item::done(below.k, t, top.m)}, {}});
  };
}

// [i, k, Q, m, j][k′, A → γ, m′] or [k, Q, m, j][k′, A → γ, m′]
//   ↦ … [m, k′, goto(right(Q), A), m′, j]   if m ≤ k′
inline Matcher<Item> reduce_rule(const GhiView& v, const GhiGrammar& g, GhiShape shape) {
  return [&v, &g, shape](const StackView<Item>& s, const InputView&, Out& out) {
    if (s.size() < 2) return;
    const Item& top = s.top();
    const Item& below = s.top(1);
    if (top.shape != GhiShape::done || !is_rule(top.t()) || below.shape != shape || !(below.m <= top.k)) return;
    const SymId a = g.rules().at(rule_index(top.t())).lhs;
    auto q = v.goto_symbol(v.right_set(below.q), a);
    if (!q.empty()) out.push_back({1, {Item::full(below.m, top.k, std::move(q), top.m, below.j)}, {}});
  };
}

}  // namespace ghi

inline GhiItem ghi_init(const GhiGrammar& g, int n) {
  return GhiItem::right_open(-1, {rule_element(g.augmented_rule())}, 0, n);
}
inline GhiItem ghi_fin(const GhiGrammar& g, int n) { return GhiItem::done(-1, rule_element(g.augmented_rule()), n); }

inline Automaton<GhiItem> build_ghi(std::shared_ptr<const GhiGrammar> gp) {
  const GhiGrammar& g = *gp;
  const GhiView& fwd = g.forward();
  const GhiView& bwd = g.backward();
  std::function<GhiItem(const GhiItem&, int)> flip = [&g](const GhiItem& it, int n) { return mirror(it, n, g); };
  auto both = [&](const std::string& n, const Matcher<GhiItem>& a, const Matcher<GhiItem>& b,
                  std::vector<Clause<GhiItem>>& out) {
    out.push_back({n + "a", a});
    out.push_back({n + "b", mirror_matcher(b, flip)});
  };

  Automaton<GhiItem> a;
  a.name = "ghi";
  a.bottom = g.bottom();
  a.init = [&g](int n) { return ghi_init(g, n); };
  a.fin = [&g](int n) { return ghi_fin(g, n); };
  a.clauses.push_back({"1a", ghi::close_right(fwd)});
  a.clauses.push_back({"1b", mirror_matcher(ghi::close_right(bwd), flip)});
  a.clauses.push_back({"1c", ghi::finish_right(fwd)});
  a.clauses.push_back({"1d", mirror_matcher(ghi::finish_right(bwd), flip)});
  both("2", ghi::shift_right(fwd, GhiShape::full), ghi::shift_right(bwd, GhiShape::full), a.clauses);
  both("3", ghi::shift_right(fwd, GhiShape::right_open), ghi::shift_right(bwd, GhiShape::right_open), a.clauses);
  both("4", ghi::attach_tree(fwd), ghi::attach_tree(bwd), a.clauses);
  both("5", ghi::finish_tree(fwd), ghi::finish_tree(bwd), a.clauses);
  both("6", ghi::reduce_rule(fwd, g, GhiShape::full), ghi::reduce_rule(bwd, g, GhiShape::full), a.clauses);
  both("7", ghi::reduce_rule(fwd, g, GhiShape::right_open), ghi::reduce_rule(bwd, g, GhiShape::right_open),
       a.clauses);
  a.render = [&g](const GhiItem& it) { return render(it, g); };
  a.size_hint = g.rules().size() + g.nonterminal_count();
  a.owner = gp;
  return a;
}

inline Automaton<GhiItem> build_ghi(const GenHeadGrammar& g) {
  return build_ghi(std::make_shared<const GhiGrammar>(g));
}

struct TraceRow {
  std::string label;  // empty for the initial row
  std::string stack;
};

/// Trace rows in the layout of a printed GHI trace: a close step 1a (1b)
/// immediately followed by 1d (1c) that leaves a finished tree is shown as a
/// single row "1a, 1d" ("1b, 1c").
inline std::vector<TraceRow> trace_rows(const Trace<GhiItem>& trace, const GhiGrammar& g) {
  auto stack_text = [&](const std::vector<GhiItem>& st) {
    std::string out;
    for (std::size_t p = 0; p < st.size(); ++p) out += (p ? " " : "") + render(st[p], g);
    return out;
  };
  std::vector<TraceRow> rows{{"", stack_text(trace.initial)}};
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const auto& step = trace.steps[s];
    if (s + 1 < trace.steps.size()) {
      const auto& next = trace.steps[s + 1];
      const bool pair = (step.label == "1a" && next.label == "1d") || (step.label == "1b" && next.label == "1c");
      const GhiItem& top = next.stack.back();
      if (pair && top.shape == GhiShape::done && !is_rule(top.t())) {
        rows.push_back({step.label + ", " + next.label, stack_text(next.stack)});
        ++s;
        continue;
      }
    }
    rows.push_back({step.label, stack_text(step.stack)});
  }
  return rows;
}

}  // namespace hdp
