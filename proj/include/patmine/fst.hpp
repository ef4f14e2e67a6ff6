#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patmine/dictionary.hpp"
#include "patmine/pattern.hpp"

namespace patmine {

using StateId = std::uint32_t;

enum class InputKind : std::uint8_t { Dot, Descendants, Exact };

/// Compressed input label: `.` matches every item, Descendants(w) matches
/// desc(w), Exact(w) matches w only.
struct InputLabel {
  InputKind kind = InputKind::Dot;
  ItemId item = kNoItem;

  static InputLabel dot() { return {InputKind::Dot, kNoItem}; }
  static InputLabel descendants(ItemId w) { return {InputKind::Descendants, w}; }
  static InputLabel exact(ItemId w) { return {InputKind::Exact, w}; }

  bool matches(ItemId t, const Dictionary& dict) const {
    switch (kind) {
      case InputKind::Dot: return true;
      case InputKind::Exact: return t == item;
      case InputKind::Descendants: return t == item || dict.generalizes_to(t, item);
    }
    return false;
  }

  friend auto operator<=>(const InputLabel&, const InputLabel&) = default;
};

enum class OutputKind : std::uint8_t { Eps, Const, Self, SelfUpTo, SelfAll };

/// Compressed output label. On matched input t: Eps produces nothing,
/// Const(w) produces w, Self produces t, SelfUpTo(w) produces each item of
/// anc(t) ∩ desc(w), SelfAll produces each item of anc(t).
struct OutputLabel {
  OutputKind kind = OutputKind::Eps;
  ItemId item = kNoItem;

  static OutputLabel eps() { return {OutputKind::Eps, kNoItem}; }
  static OutputLabel constant(ItemId w) { return {OutputKind::Const, w}; }
  static OutputLabel self() { return {OutputKind::Self, kNoItem}; }
  static OutputLabel self_up_to(ItemId w) { return {OutputKind::SelfUpTo, w}; }
  static OutputLabel self_all() { return {OutputKind::SelfAll, kNoItem}; }

  bool is_eps() const { return kind == OutputKind::Eps; }

  /// Calls `fn(item)` for every output item produced on input `t`, in BFS
  /// order upward from t.
  template <typename Fn>
  void for_each_output(ItemId t, const Dictionary& dict, Fn&& fn) const {
    switch (kind) {
      case OutputKind::Eps: return;
      case OutputKind::Const: fn(item); return;
      case OutputKind::Self: fn(t); return;
      case OutputKind::SelfAll:
        for (ItemId a : dict.ancestors(t)) fn(a);
        return;
      case OutputKind::SelfUpTo:
        for (ItemId a : dict.ancestors(t)) {
          if (a == item || dict.generalizes_to(a, item)) fn(a);
        }
        return;
    }
  }

  friend auto operator<=>(const OutputLabel&, const OutputLabel&) = default;
};

struct Transition {
  StateId from = 0;
  InputLabel in;
  OutputLabel out;
  StateId to = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Compressed finite-state transducer. Freshly compiled machines may carry
/// epsilon transitions; normalized machines have none, and every state is
/// reachable from the initial state and co-reachable to a final state.
class CFst {
 public:
  StateId add_state();
  void add_transition(StateId from, InputLabel in, OutputLabel out, StateId to);
  void add_epsilon(StateId from, StateId to);
  void set_final(StateId state, bool final = true);
  void set_initial(StateId state) { initial_ = state; }

  std::size_t num_states() const noexcept { return finals_.size(); }
  StateId initial() const noexcept { return initial_; }
  bool is_final(StateId state) const { return finals_[state] != 0; }
  std::span<const Transition> transitions(StateId state) const { return out_[state]; }
  std::span<const StateId> epsilons(StateId state) const { return eps_[state]; }
  bool has_epsilons() const noexcept;
  std::size_t num_transitions() const noexcept;

  /// All transitions sorted by (from, in, out, to).
  std::vector<Transition> all_transitions() const;

 private:
  StateId initial_ = 0;
  std::vector<char> finals_;
  std::vector<std::vector<Transition>> out_;
  std::vector<std::vector<StateId>> eps_;
};

/// Thompson-style translation of a validated pattern tree. Item gids are
/// resolved against `dict`; an unknown item matches no input. The result may
/// contain epsilon transitions.
CFst compile(const PatternNode& ast, const Dictionary& dict);

/// Item gids of `ast` missing from `dict`, in pattern order.
std::vector<std::string> unknown_items(const PatternNode& ast, const Dictionary& dict);

/// Language-equivalent machine without epsilon transitions. A state becomes
/// final when its epsilon closure contains a final state.
CFst eliminate_epsilon(const CFst& fst);

/// Trims unreachable and dead states, merges duplicate transitions, merges
/// bisimilar states and renumbers states in BFS order from the initial state.
/// Requires an epsilon-free machine.
CFst normalize(const CFst& fst);

enum class MatchMode { Full, Partial };

/// parse + compile + eliminate_epsilon + normalize. Partial mode prepends
/// `.*` to the expression.
CFst compile_pattern(std::string_view pattern, const Dictionary& dict,
                     MatchMode mode = MatchMode::Full);

/// Throws InvariantViolation unless every produced output of every
/// transition is an ancestor of every input it matches.
void check_output_restriction(const CFst& fst, const Dictionary& dict);

/// Concrete transition. `out == kNoItem` denotes epsilon output; an
/// `in == kNoItem` transition is an epsilon transition.
struct ConcreteTransition {
  StateId from = 0;
  ItemId in = kNoItem;
  ItemId out = kNoItem;
  StateId to = 0;

  friend auto operator<=>(const ConcreteTransition&, const ConcreteTransition&) = default;
};

/// FST over concrete items, without compression.
struct UncompressedFst {
  std::size_t num_states = 0;
  StateId initial = 0;
  std::vector<char> finals;
  std::vector<ConcreteTransition> transitions;
};

/// Replaces every compressed transition by the concrete (in, out) pairs it
/// denotes over the whole vocabulary. Epsilon transitions are carried over.
UncompressedFst expand(const CFst& fst, const Dictionary& dict);

std::string format_input(const InputLabel& label, const Dictionary& dict);
std::string format_output(const OutputLabel& label, const Dictionary& dict);

/// `from<TAB>in<TAB>out<TAB>to` per transition plus `initial` and `final`
/// lines, sorted.
std::string to_text(const CFst& fst, const Dictionary& dict);

/// Graphviz rendering: initial state marked, final states double-circled.
std::string to_dot(const CFst& fst, const Dictionary& dict);

}  // namespace patmine
