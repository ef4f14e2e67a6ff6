#include "patmine/match.hpp"

#include <unordered_set>

namespace patmine {

namespace {

struct ConfigHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

SequenceSet simulate(const CFst& fst, const Sequence& input, const Dictionary& dict,
                     std::uint64_t sigma, MatchMode mode) {
  struct Frame {
    std::uint32_t pos;
    StateId state;
    std::uint32_t depth;
    ItemId item;  // appended to the buffer when the frame is entered
  };

  SequenceSet result;
  const auto n = static_cast<std::uint32_t>(input.size());
  Sequence buffer;
  std::vector<Frame> stack{{0, fst.initial(), 0, kNoItem}};
  // Different runs reaching the same (position, state, output) have the
  // same futures.
  std::unordered_set<std::vector<std::uint32_t>, ConfigHash> visited;
  std::vector<std::uint32_t> key;

  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    buffer.resize(f.depth);
    if (f.item != kNoItem) buffer.push_back(f.item);

    key.assign({f.pos, f.state});
    key.insert(key.end(), buffer.begin(), buffer.end());
    if (!visited.insert(key).second) continue;

    if (fst.is_final(f.state) && !buffer.empty() && (mode == MatchMode::Partial || f.pos == n)) {
      result.insert(buffer);
    }
    if (f.pos == n) continue;

    const ItemId t = input[f.pos];
    const auto depth = static_cast<std::uint32_t>(buffer.size());
    const auto& ts = fst.transitions(f.state);
    // Reverse order so that transitions are explored in their stored order.
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
      if (!it->in.matches(t, dict)) continue;
      if (it->out.is_eps()) {
        stack.push_back({f.pos + 1, it->to, depth, kNoItem});
        continue;
      }
      it->out.for_each_output(t, dict, [&](ItemId w) {
        if (sigma == 0 || dict.frequency(w) >= sigma) stack.push_back({f.pos + 1, it->to, depth, w});
      });
    }
  }
  return result;
}

}  // namespace

std::vector<std::pair<OutputLabel, StateId>> delta(const CFst& fst, StateId state, ItemId item,
                                                   const Dictionary& dict) {
  std::vector<std::pair<OutputLabel, StateId>> out;
  for (const auto& t : fst.transitions(state)) {
    if (t.in.matches(item, dict)) out.emplace_back(t.out, t.to);
  }
  return out;
}

SequenceSet generate(const CFst& fst, const Sequence& input, const Dictionary& dict, MatchMode mode) {
  return simulate(fst, input, dict, 0, mode);
}

SequenceSet generate_filtered(const CFst& fst, const Sequence& input, const Dictionary& dict,
                              std::uint64_t sigma, MatchMode mode) {
  return simulate(fst, input, dict, sigma, mode);
}

}  // namespace patmine
