#pragma once

// Nondeterministic stack automata. A configuration is the stack alone;
// clauses inspect the top of the stack and the input and propose
// replacements for the top segment. run() searches the configuration space
// depth-first, trying clauses in their listed order, and prunes stacks that
// were already expanded.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hdp/grammar.hpp"

namespace hdp {

inline constexpr int kMaxInputLength = 64;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Input positions 1..kMaxInputLength.
class PositionSet {
 public:
  PositionSet() = default;
  PositionSet(std::initializer_list<int> ps) {
    for (int p : ps) insert(p);
  }

  void insert(int p) {
    if (p < 1 || p > kMaxInputLength) throw std::out_of_range("input position out of range");
    bits_ |= std::uint64_t{1} << (p - 1);
  }
  bool contains(int p) const { return p >= 1 && p <= kMaxInputLength && (bits_ >> (p - 1)) & 1U; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool is_subset_of(const PositionSet& o) const { return (bits_ & ~o.bits_) == 0; }

  PositionSet& operator|=(const PositionSet& o) {
    bits_ |= o.bits_;
    return *this;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int p = 1; p <= kMaxInputLength; ++p)
      if (contains(p)) out.push_back(p);
    return out;
  }

  std::uint64_t bits() const { return bits_; }
  auto operator<=>(const PositionSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

// Read access to a_0 … a_n where a_0 is the imaginary bottom symbol. The
// mirrored view reads the string backwards: position p maps to n + 1 - p.
class InputView {
 public:
  InputView(std::span<const SymId> tokens, SymId bottom, bool mirrored = false)
      : tokens_(tokens), bottom_(bottom), mirrored_(mirrored) {
    if (tokens.size() > static_cast<std::size_t>(kMaxInputLength))
      throw std::invalid_argument("input longer than " + std::to_string(kMaxInputLength) + " tokens");
  }

  int n() const { return static_cast<int>(tokens_.size()); }
  bool is_mirrored() const { return mirrored_; }
  SymId bottom() const { return bottom_; }

  SymId at(int p) const {
    if (mirrored_) p = n() + 1 - p;
    if (p == 0) return bottom_;
    if (p < 1 || p > n()) return kNoSymbol;
    return tokens_[static_cast<std::size_t>(p - 1)];
  }

  InputView mirrored() const { return InputView(tokens_, bottom_, !mirrored_); }

  /// Position in the unmirrored string.
  int original_position(int p) const { return mirrored_ ? n() + 1 - p : p; }

 private:
  std::span<const SymId> tokens_;
  SymId bottom_;
  bool mirrored_;
};

// One cell of a persistent stack: an interned item on top of another cell.
struct StackCell {
  static constexpr std::uint32_t kNone = 0xffffffffU;
  std::uint32_t item = 0;
  std::uint32_t below = kNone;
  std::uint32_t depth = 1;
};

// Either a plain array of items (bottom first) or a chain of stack cells
// owned by a run.
template <class Item>
class StackView {
 public:
  explicit StackView(std::span<const Item* const> items) : items_(items), size_(items.size()) {}
  StackView(const std::deque<Item>& pool, const std::vector<StackCell>& cells, std::uint32_t top)
      : pool_(&pool), cells_(&cells), top_(top), size_(cells[top].depth) {}

  std::size_t size() const { return size_; }
  /// Bottom-based indexing.
  const Item& operator[](std::size_t i) const { return top(size_ - 1 - i); }
  /// top(0) is the top-most item.
  const Item& top(std::size_t depth = 0) const {
    if (!pool_) return *items_[size_ - 1 - depth];
    std::uint32_t c = top_;
    while (depth-- > 0) c = (*cells_)[c].below;
    return (*pool_)[(*cells_)[c].item];
  }

 private:
  std::span<const Item* const> items_;
  const std::deque<Item>* pool_ = nullptr;
  const std::vector<StackCell>* cells_ = nullptr;
  std::uint32_t top_ = 0;
  std::size_t size_ = 0;
};

// Replace the top `pop` items with `push`. Positions in `consulted` are the
// input symbols the clause read to fire.
template <class Item>
struct Successor {
  std::size_t pop = 0;
  std::vector<Item> push;
  std::vector<int> consulted;
};

template <class Item>
using Matcher = std::function<void(const StackView<Item>&, const InputView&, std::vector<Successor<Item>>&)>;

template <class Item>
struct Clause {
  std::string label;
  Matcher<Item> apply;
};

template <class Item>
struct Automaton {
  std::string name;
  SymId bottom = kNoSymbol;
  std::function<Item(int)> init;
  std::function<Item(int)> fin;
  /// Acceptance test on a whole stack; when empty the stack must be exactly [Fin(n)].
  std::function<bool(const StackView<Item>&, int)> accepts;
  std::vector<Clause<Item>> clauses;
  std::function<std::string(const Item&)> render;
  /// Number of rules plus nonterminals; scales the default depth bound.
  std::size_t size_hint = 1;
  /// Keeps whatever the clause closures refer to alive.
  std::shared_ptr<const void> owner;

  const Clause<Item>* find_clause(std::string_view label) const {
    for (const auto& c : clauses)
      if (c.label == label) return &c;
    return nullptr;
  }

  bool is_accepting(const StackView<Item>& stack, int n) const {
    if (accepts) return accepts(stack, n);
    return stack.size() == 1 && stack[0] == fin(n);
  }
};

/// Conjugates a matcher by the mirror map: reflect the top `window` items
/// of the stack and the input, run `inner`, reflect the proposed items and
/// consulted positions back. `inner` must not look deeper than `window`.
/// Applying this twice gives back a matcher equivalent to `inner`.
template <class Item>
Matcher<Item> mirror_matcher(Matcher<Item> inner, std::function<Item(const Item&, int)> mirror,
                             std::size_t window = 2) {
  return [inner = std::move(inner), mirror = std::move(mirror), window](
             const StackView<Item>& stack, const InputView& in, std::vector<Successor<Item>>& out) {
    const int n = in.n();
    const std::size_t w = std::min(window, stack.size());
    std::vector<Item> flipped;
    flipped.reserve(w);
    for (std::size_t d = w; d-- > 0;) flipped.push_back(mirror(stack.top(d), n));
    std::vector<const Item*> ptrs;
    ptrs.reserve(flipped.size());
    for (const auto& it : flipped) ptrs.push_back(&it);
    std::vector<Successor<Item>> local;
    inner(StackView<Item>(ptrs), in.mirrored(), local);
    for (auto& s : local) {
      for (auto& it : s.push) it = mirror(it, n);
      for (auto& p : s.consulted) p = n + 1 - p;
      out.push_back(std::move(s));
    }
  };
}

enum class Verdict { accept, reject, resource_limit };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::reject: return "reject";
    case Verdict::resource_limit: return "resource-limit";
  }
  return "?";
}

struct RunLimits {
  std::size_t max_steps = 1'000'000;        // clause applications
  std::optional<std::size_t> max_depth;     // default: 16 (n + 2) size_hint
  bool prune_duplicates = true;
  bool stop_at_accept = true;               // false: exhaust the space anyway

  std::size_t depth_for(int n, std::size_t size_hint) const {
    return max_depth.value_or(16 * static_cast<std::size_t>(n + 2) * std::max<std::size_t>(size_hint, 1));
  }
};

struct RunStats {
  std::size_t configurations_explored = 0;
  std::size_t clause_applications = 0;
  std::size_t max_stack_depth = 1;
  std::size_t pruned = 0;
  bool step_limit_hit = false;
  bool depth_limit_hit = false;
  /// Positions consulted on the way to the accepting configuration, or, when
  /// nothing was accepted, on the way to the explored configuration that had
  /// consulted the most.
  PositionSet consulted_positions;
  /// Every distinct consulted set seen on the path to an explored configuration.
  std::set<PositionSet> consulted_sets;
};

template <class Item>
struct TraceStep {
  std::string label;
  std::vector<Item> stack;
  PositionSet consulted;
};

template <class Item>
struct Trace {
  std::vector<Item> initial;
  std::vector<TraceStep<Item>> steps;

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& s : steps) out.push_back(s.label);
    return out;
  }
};

template <class Item>
struct RunResult {
  Verdict verdict = Verdict::reject;
  RunStats stats;
  std::optional<Trace<Item>> trace;  // present iff verdict == accept
};

template <class Item>
const Trace<Item>& accepting_trace(const RunResult<Item>& r) {
  if (r.verdict != Verdict::accept || !r.trace) throw std::logic_error("no accepting trace: run did not accept");
  return *r.trace;
}

template <class Item>
using Observer = std::function<void(const StackView<Item>&)>;

namespace detail {

template <class Item>
struct ItemHash {
  std::size_t operator()(const Item& it) const {
    if constexpr (std::is_arithmetic_v<Item>) {
      return std::hash<Item>{}(it);
    } else {
      return hash_value(it);
    }
  }
};

struct SearchNode {
  std::uint32_t top = 0;  // stack cell
  std::int64_t parent = -1;
  std::uint32_t clause = 0;
  PositionSet consulted;
};

struct CellKey {
  std::uint32_t item, below;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const { return hash_combine(k.item, k.below); }
};

}  // namespace detail

template <class Item>
RunResult<Item> run(const Automaton<Item>& a, std::span<const SymId> tokens, const RunLimits& limits = {},
                    const Observer<Item>& observer = {}) {
  const InputView input(tokens, a.bottom);
  const int n = input.n();
  const std::size_t depth_bound = limits.depth_for(n, a.size_hint);

  std::deque<Item> items;
  std::unordered_map<Item, std::uint32_t, detail::ItemHash<Item>> item_ids;
  auto intern = [&](const Item& it) {
    auto [pos, fresh] = item_ids.try_emplace(it, static_cast<std::uint32_t>(items.size()));
    if (fresh) items.push_back(it);
    return pos->second;
  };

  // Cells are hash-consed, so two stacks are equal iff their top cells are.
  std::vector<StackCell> cells;
  std::unordered_map<detail::CellKey, std::uint32_t, detail::CellKeyHash> cell_ids;
  auto push_cell = [&](std::uint32_t below, std::uint32_t item) {
    auto [pos, fresh] = cell_ids.try_emplace({item, below}, static_cast<std::uint32_t>(cells.size()));
    if (fresh) cells.push_back({item, below, below == StackCell::kNone ? 1 : cells[below].depth + 1});
    return pos->second;
  };

  std::vector<detail::SearchNode> nodes;
  std::unordered_set<std::uint32_t> explored;
  nodes.push_back({push_cell(StackCell::kNone, intern(a.init(n))), -1, 0, {}});

  RunResult<Item> result;
  RunStats& stats = result.stats;
  std::optional<std::uint32_t> accepted;
  std::uint32_t most_consulted = 0;
  std::vector<std::uint32_t> work{0};
  std::vector<Successor<Item>> succ;
  std::vector<std::uint32_t> succ_clause;

  while (!work.empty() && !stats.step_limit_hit) {
    const std::uint32_t idx = work.back();
    work.pop_back();
    const std::uint32_t top = nodes[idx].top;
    if (limits.prune_duplicates && !explored.insert(top).second) {
      ++stats.pruned;
      continue;
    }
    ++stats.configurations_explored;

    const StackView<Item> view(items, cells, top);
    stats.max_stack_depth = std::max(stats.max_stack_depth, view.size());
    stats.consulted_sets.insert(nodes[idx].consulted);
    if (nodes[idx].consulted.size() > nodes[most_consulted].consulted.size()) most_consulted = idx;
    if (observer) observer(view);

    if (a.is_accepting(view, n)) {
      if (!accepted) accepted = idx;
      if (limits.stop_at_accept) break;
    }

    succ.clear();
    succ_clause.clear();
    for (std::uint32_t c = 0; c < a.clauses.size(); ++c) {
      a.clauses[c].apply(view, input, succ);
      succ_clause.resize(succ.size(), c);
    }

    for (std::size_t s = succ.size(); s-- > 0;) {
      if (++stats.clause_applications > limits.max_steps) {
        stats.step_limit_hit = true;
        break;
      }
      const auto& next = succ[s];
      if (next.pop > view.size()) throw std::logic_error("clause " + a.clauses[succ_clause[s]].label + " popped too much");
      std::uint32_t child_top = top;
      for (std::size_t k = 0; k < next.pop; ++k) child_top = cells[child_top].below;
      for (const auto& it : next.push) child_top = push_cell(child_top, intern(it));
      if (child_top == StackCell::kNone)
        throw std::logic_error("clause " + a.clauses[succ_clause[s]].label + " emptied the stack");
      if (cells[child_top].depth > depth_bound) {
        stats.depth_limit_hit = true;
        continue;
      }
      if (limits.prune_duplicates && explored.count(child_top)) {
        ++stats.pruned;
        continue;
      }
      detail::SearchNode child{child_top, idx, succ_clause[s], nodes[idx].consulted};
      for (int p : next.consulted) child.consulted.insert(p);
      nodes.push_back(child);
      work.push_back(static_cast<std::uint32_t>(nodes.size() - 1));
    }
  }

  if (accepted) {
    result.verdict = Verdict::accept;
    stats.consulted_positions = nodes[*accepted].consulted;
    Trace<Item> trace;
    std::vector<std::uint32_t> chain;
    for (std::int64_t i = *accepted; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
      chain.push_back(static_cast<std::uint32_t>(i));
    std::reverse(chain.begin(), chain.end());
    auto materialize = [&](std::uint32_t i) {
      std::vector<Item> out;
      for (std::uint32_t c = nodes[i].top; c != StackCell::kNone; c = cells[c].below) out.push_back(items[cells[c].item]);
      std::reverse(out.begin(), out.end());
      return out;
    };
    trace.initial = materialize(chain.front());
    for (std::size_t c = 1; c < chain.size(); ++c)
      trace.steps.push_back({a.clauses[nodes[chain[c]].clause].label, materialize(chain[c]), nodes[chain[c]].consulted});
    result.trace = std::move(trace);
  } else {
    result.verdict = (stats.step_limit_hit || stats.depth_limit_hit) ? Verdict::resource_limit : Verdict::reject;
    stats.consulted_positions = nodes[most_consulted].consulted;
  }
  return result;
}

/// Re-derives every step of `trace` by applying the named clause to the
/// previous stack; true iff all steps reproduce and the last stack accepts.
template <class Item>
bool replay(const Automaton<Item>& a, std::span<const SymId> tokens, const Trace<Item>& trace) {
  const InputView input(tokens, a.bottom);
  const int n = input.n();
  std::vector<Item> current{a.init(n)};
  if (trace.initial != current) return false;
  std::vector<Successor<Item>> succ;
  for (const auto& step : trace.steps) {
    const Clause<Item>* clause = a.find_clause(step.label);
    if (!clause) return false;
    std::vector<const Item*> ptrs;
    for (const auto& it : current) ptrs.push_back(&it);
    succ.clear();
    clause->apply(StackView<Item>(ptrs), input, succ);
    bool matched = false;
    for (const auto& s : succ) {
      if (s.pop > current.size()) continue;
      std::vector<Item> next(current.begin(), current.end() - static_cast<std::ptrdiff_t>(s.pop));
      next.insert(next.end(), s.push.begin(), s.push.end());
      if (next == step.stack) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
    current = step.stack;
  }
  std::vector<const Item*> ptrs;
  for (const auto& it : current) ptrs.push_back(&it);
  return a.is_accepting(StackView<Item>(ptrs), n);
}

/// Maps input tokens to terminal ids of `g`; anything else becomes
/// kNoSymbol, which no clause ever matches.
template <class Grammar>
std::vector<SymId> to_symbols(const Grammar& g, const std::vector<std::string>& tokens) {
  std::vector<SymId> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto id = g.symbols().find(t);
    out.push_back(id && g.is_terminal(*id) && t != kBottomName ? *id : kNoSymbol);
  }
  return out;
}

}  // namespace hdp
