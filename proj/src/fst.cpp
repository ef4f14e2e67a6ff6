#include "patmine/fst.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "patmine/error.hpp"

namespace patmine {

StateId CFst::add_state() {
  finals_.push_back(0);
  out_.emplace_back();
  eps_.emplace_back();
  return static_cast<StateId>(finals_.size() - 1);
}

void CFst::add_transition(StateId from, InputLabel in, OutputLabel out, StateId to) {
  out_[from].push_back({from, in, out, to});
}

void CFst::add_epsilon(StateId from, StateId to) { eps_[from].push_back(to); }

void CFst::set_final(StateId state, bool final) { finals_[state] = final ? 1 : 0; }

bool CFst::has_epsilons() const noexcept {
  return std::any_of(eps_.begin(), eps_.end(), [](const auto& e) { return !e.empty(); });
}

std::size_t CFst::num_transitions() const noexcept {
  std::size_t n = 0;
  for (const auto& ts : out_) n += ts.size();
  return n;
}

std::vector<Transition> CFst::all_transitions() const {
  std::vector<Transition> all;
  for (const auto& ts : out_) all.insert(all.end(), ts.begin(), ts.end());
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

struct Fragment {
  StateId start;
  StateId end;
};

class Compiler {
 public:
  Compiler(CFst& fst, const Dictionary& dict) : fst_(fst), dict_(dict) {}

  Fragment build(const PatternNode& node) {
    switch (node.kind) {
      case NodeKind::Item:
      case NodeKind::Wildcard:
        return leaf(node);
      case NodeKind::Capture:
        return build(node.children[0]);
      case NodeKind::Concat: {
        Fragment first = build(node.children[0]);
        StateId end = first.end;
        for (std::size_t i = 1; i < node.children.size(); ++i) {
          Fragment next = build(node.children[i]);
          fst_.add_epsilon(end, next.start);
          end = next.end;
        }
        return {first.start, end};
      }
      case NodeKind::Union: {
        Fragment f = fresh();
        for (const auto& child : node.children) {
          Fragment c = build(child);
          fst_.add_epsilon(f.start, c.start);
          fst_.add_epsilon(c.end, f.end);
        }
        return f;
      }
      case NodeKind::Optional: {
        Fragment f = fresh();
        Fragment c = build(node.children[0]);
        fst_.add_epsilon(f.start, c.start);
        fst_.add_epsilon(c.end, f.end);
        fst_.add_epsilon(f.start, f.end);
        return f;
      }
      case NodeKind::Star: return star(node.children[0]);
      case NodeKind::Plus: return plus(node.children[0]);
      case NodeKind::Repeat: return repeat(node);
    }
    throw InvariantViolation("unknown pattern node kind");
  }

 private:
  Fragment fresh() { return {fst_.add_state(), fst_.add_state()}; }

  Fragment star(const PatternNode& child) {
    Fragment f = fresh();
    Fragment c = build(child);
    fst_.add_epsilon(f.start, c.start);
    fst_.add_epsilon(c.end, c.start);
    fst_.add_epsilon(c.end, f.end);
    fst_.add_epsilon(f.start, f.end);
    return f;
  }

  Fragment plus(const PatternNode& child) {
    Fragment f = fresh();
    Fragment c = build(child);
    fst_.add_epsilon(f.start, c.start);
    fst_.add_epsilon(c.end, c.start);
    fst_.add_epsilon(c.end, f.end);
    return f;
  }

  // {n,m}: n mandatory copies, then m-n copies that may each be skipped to
  // the end. {n,}: n-1 copies followed by a Plus copy.
  Fragment repeat(const PatternNode& node) {
    const PatternNode& child = node.children[0];
    if (!node.max && node.min == 0) return star(child);
    Fragment f = fresh();
    StateId cur = f.start;
    std::size_t mandatory = node.max ? node.min : node.min - 1;
    for (std::size_t i = 0; i < mandatory; ++i) {
      Fragment c = build(child);
      fst_.add_epsilon(cur, c.start);
      cur = c.end;
    }
    if (!node.max) {
      Fragment p = plus(child);
      fst_.add_epsilon(cur, p.start);
      cur = p.end;
    } else {
      for (std::size_t i = node.min; i < *node.max; ++i) {
        Fragment c = build(child);
        fst_.add_epsilon(cur, c.start);
        fst_.add_epsilon(cur, f.end);
        cur = c.end;
      }
    }
    fst_.add_epsilon(cur, f.end);
    return f;
  }

  Fragment leaf(const PatternNode& node) {
    Fragment f = fresh();
    InputLabel in = InputLabel::dot();
    OutputLabel out = OutputLabel::eps();
    if (node.kind == NodeKind::Wildcard) {
      if (node.captured) out = node.generalize ? OutputLabel::self_all() : OutputLabel::self();
    } else {
      auto w = dict_.find(node.item);
      if (!w) return f;  // matches nothing
      if (node.exact && !node.generalize) {
        in = InputLabel::exact(*w);
        if (node.captured) out = OutputLabel::constant(*w);
      } else {
        in = InputLabel::descendants(*w);
        if (node.generalize) {
          out = node.exact ? OutputLabel::constant(*w) : OutputLabel::self_up_to(*w);
        } else if (node.captured) {
          out = OutputLabel::self();
        }
      }
    }
    fst_.add_transition(f.start, in, out, f.end);
    return f;
  }

  CFst& fst_;
  const Dictionary& dict_;
};

std::vector<StateId> epsilon_closure(const CFst& fst, StateId start) {
  std::vector<StateId> order{start};
  std::vector<char> seen(fst.num_states(), 0);
  seen[start] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (StateId next : fst.epsilons(order[head])) {
      if (!seen[next]) {
        seen[next] = 1;
        order.push_back(next);
      }
    }
  }
  return order;
}

std::vector<char> mark_reachable(std::size_t n, StateId start,
                                 const std::vector<std::vector<StateId>>& edges) {
  std::vector<char> seen(n, 0);
  std::vector<StateId> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId t : edges[s]) {
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

// Coarsest partition such that states in one block agree on finality and on
// the set of (in, out, target block) triples.
std::vector<std::size_t> bisimulation_blocks(const CFst& fst) {
  const std::size_t n = fst.num_states();
  std::vector<std::size_t> block(n);
  for (StateId s = 0; s < n; ++s) block[s] = fst.is_final(s) ? 1 : 0;
  std::size_t num_blocks = 0;
  for (;;) {
    using Signature = std::pair<std::size_t, std::vector<std::tuple<InputLabel, OutputLabel, std::size_t>>>;
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (StateId s = 0; s < n; ++s) {
      Signature sig{block[s], {}};
      for (const auto& t : fst.transitions(s)) sig.second.emplace_back(t.in, t.out, block[t.to]);
      std::sort(sig.second.begin(), sig.second.end());
      sig.second.erase(std::unique(sig.second.begin(), sig.second.end()), sig.second.end());
      auto [it, inserted] = ids.emplace(std::move(sig), ids.size());
      next[s] = it->second;
    }
    block = std::move(next);
    if (ids.size() == num_blocks) break;
    num_blocks = ids.size();
  }
  return block;
}

}  // namespace

std::vector<std::string> unknown_items(const PatternNode& ast, const Dictionary& dict) {
  std::vector<std::string> out;
  std::vector<const PatternNode*> stack{&ast};
  while (!stack.empty()) {
    const PatternNode* node = stack.back();
    stack.pop_back();
    if (node->kind == NodeKind::Item && !dict.find(node->item) &&
        std::find(out.begin(), out.end(), node->item) == out.end()) {
      out.push_back(node->item);
    }
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

CFst compile(const PatternNode& ast, const Dictionary& dict) {
  CFst fst;
  Compiler compiler(fst, dict);
  Fragment f = compiler.build(ast);
  fst.set_initial(f.start);
  fst.set_final(f.end);
  return fst;
}

CFst eliminate_epsilon(const CFst& fst) {
  CFst out;
  for (StateId s = 0; s < fst.num_states(); ++s) out.add_state();
  out.set_initial(fst.initial());
  for (StateId s = 0; s < fst.num_states(); ++s) {
    bool final = false;
    for (StateId q : epsilon_closure(fst, s)) {
      final = final || fst.is_final(q);
      for (const auto& t : fst.transitions(q)) out.add_transition(s, t.in, t.out, t.to);
    }
    out.set_final(s, final);
  }
  return out;
}

CFst normalize(const CFst& fst) {
  if (fst.has_epsilons()) throw InvariantViolation("normalize requires an epsilon-free machine");
  const std::size_t n = fst.num_states();

  std::vector<std::vector<StateId>> forward(n), backward(n);
  for (StateId s = 0; s < n; ++s) {
    for (const auto& t : fst.transitions(s)) {
      forward[s].push_back(t.to);
      backward[t.to].push_back(s);
    }
  }
  auto reachable = mark_reachable(n, fst.initial(), forward);
  std::vector<char> live(n, 0);
  {
    std::vector<StateId> stack;
    for (StateId s = 0; s < n; ++s) {
      if (fst.is_final(s)) {
        live[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      for (StateId p : backward[s]) {
        if (!live[p]) {
          live[p] = 1;
          stack.push_back(p);
        }
      }
    }
  }

  // Trimmed copy; states keep their ids, dropped states lose all edges.
  CFst trimmed;
  for (StateId s = 0; s < n; ++s) trimmed.add_state();
  trimmed.set_initial(fst.initial());
  auto keep = [&](StateId s) { return reachable[s] && live[s]; };
  for (StateId s = 0; s < n; ++s) {
    if (!keep(s)) continue;
    trimmed.set_final(s, fst.is_final(s));
    for (const auto& t : fst.transitions(s)) {
      if (keep(t.to)) trimmed.add_transition(s, t.in, t.out, t.to);
    }
  }

  auto block = bisimulation_blocks(trimmed);

  // BFS over the quotient from the initial block.
  std::map<std::size_t, StateId> renumber;
  std::vector<std::size_t> order;
  std::vector<StateId> representative;
  auto visit = [&](std::size_t b, StateId rep) {
    if (renumber.emplace(b, static_cast<StateId>(order.size())).second) {
      order.push_back(b);
      representative.push_back(rep);
    }
  };
  visit(block[fst.initial()], fst.initial());
  CFst result;
  for (std::size_t head = 0; head < order.size(); ++head) {
    StateId rep = representative[head];
    auto ts = std::vector<Transition>(trimmed.transitions(rep).begin(), trimmed.transitions(rep).end());
    std::sort(ts.begin(), ts.end(), [&](const Transition& a, const Transition& b) {
      return std::tie(a.in, a.out, block[a.to]) < std::tie(b.in, b.out, block[b.to]);
    });
    for (const auto& t : ts) visit(block[t.to], t.to);
  }
  for (std::size_t i = 0; i < order.size(); ++i) result.add_state();
  result.set_initial(0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    StateId rep = representative[i];
    result.set_final(static_cast<StateId>(i), trimmed.is_final(rep));
    std::vector<Transition> ts;
    for (const auto& t : trimmed.transitions(rep)) {
      ts.push_back({static_cast<StateId>(i), t.in, t.out, renumber.at(block[t.to])});
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (const auto& t : ts) result.add_transition(t.from, t.in, t.out, t.to);
  }
  return result;
}

CFst compile_pattern(std::string_view pattern, const Dictionary& dict, MatchMode mode) {
  PatternNode ast = parse_pattern(pattern);
  if (mode == MatchMode::Partial) {
    std::vector<PatternNode> parts;
    parts.push_back(PatternNode::make_unary(NodeKind::Star, PatternNode::make_wildcard()));
    parts.push_back(std::move(ast));
    ast = PatternNode::make_nary(NodeKind::Concat, std::move(parts));
    annotate_and_validate(ast);
  }
  return normalize(eliminate_epsilon(compile(ast, dict)));
}

void check_output_restriction(const CFst& fst, const Dictionary& dict) {
  for (StateId s = 0; s < fst.num_states(); ++s) {
    for (const auto& t : fst.transitions(s)) {
      for (ItemId in = 1; in <= dict.size(); ++in) {
        if (!t.in.matches(in, dict)) continue;
        t.out.for_each_output(in, dict, [&](ItemId out) {
          if (!dict.generalizes_to(in, out)) {
            throw InvariantViolation("transition from state " + std::to_string(s) + " outputs '" +
                                     dict.gid(out) + "' on input '" + dict.gid(in) +
                                     "', which is not an ancestor");
          }
        });
      }
    }
  }
}

UncompressedFst expand(const CFst& fst, const Dictionary& dict) {
  UncompressedFst out;
  out.num_states = fst.num_states();
  out.initial = fst.initial();
  out.finals.resize(fst.num_states());
  for (StateId s = 0; s < fst.num_states(); ++s) {
    out.finals[s] = fst.is_final(s);
    for (StateId to : fst.epsilons(s)) out.transitions.push_back({s, kNoItem, kNoItem, to});
    for (const auto& t : fst.transitions(s)) {
      for (ItemId in = 1; in <= dict.size(); ++in) {
        if (!t.in.matches(in, dict)) continue;
        if (t.out.is_eps()) {
          out.transitions.push_back({s, in, kNoItem, t.to});
        } else {
          t.out.for_each_output(in, dict, [&](ItemId o) { out.transitions.push_back({s, in, o, t.to}); });
        }
      }
    }
  }
  std::sort(out.transitions.begin(), out.transitions.end());
  out.transitions.erase(std::unique(out.transitions.begin(), out.transitions.end()),
                        out.transitions.end());
  return out;
}

std::string format_input(const InputLabel& label, const Dictionary& dict) {
  switch (label.kind) {
    case InputKind::Dot: return ".";
    case InputKind::Descendants: return dict.gid(label.item);
    case InputKind::Exact: return dict.gid(label.item) + "=";
  }
  return {};
}

std::string format_output(const OutputLabel& label, const Dictionary& dict) {
  switch (label.kind) {
    case OutputKind::Eps: return "eps";
    case OutputKind::Const: return dict.gid(label.item);
    case OutputKind::Self: return "$";
    case OutputKind::SelfUpTo: return "$-" + dict.gid(label.item);
    case OutputKind::SelfAll: return "$-T";
  }
  return {};
}

std::string to_text(const CFst& fst, const Dictionary& dict) {
  std::ostringstream out;
  out << "initial\t" << fst.initial() << '\n';
  for (StateId s = 0; s < fst.num_states(); ++s) {
    if (fst.is_final(s)) out << "final\t" << s << '\n';
  }
  for (const auto& t : fst.all_transitions()) {
    out << t.from << '\t' << format_input(t.in, dict) << '\t' << format_output(t.out, dict) << '\t'
        << t.to << '\n';
  }
  for (StateId s = 0; s < fst.num_states(); ++s) {
    for (StateId to : fst.epsilons(s)) out << s << "\teps\teps\t" << to << '\n';
  }
  return out.str();
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const CFst& fst, const Dictionary& dict) {
  std::ostringstream out;
  out << "digraph cfst {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  start [shape=point];\n";
  for (StateId s = 0; s < fst.num_states(); ++s) {
    out << "  q" << s << " [label=\"q" << s << "\"" << (fst.is_final(s) ? ", shape=doublecircle" : "")
        << "];\n";
  }
  out << "  start -> q" << fst.initial() << ";\n";
  for (const auto& t : fst.all_transitions()) {
    std::string output = t.out.is_eps() ? "ε" : format_output(t.out, dict);
    out << "  q" << t.from << " -> q" << t.to << " [label=\""
        << dot_escape(format_input(t.in, dict) + ":" + output) << "\"];\n";
  }
  for (StateId s = 0; s < fst.num_states(); ++s) {
    for (StateId to : fst.epsilons(s)) out << "  q" << s << " -> q" << to << " [label=\"ε\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace patmine
