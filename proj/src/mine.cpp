#include "patmine/mine.hpp"

#include <algorithm>
#include <unordered_map>

#include "patmine/error.hpp"
#include "patmine/match.hpp"
#include "varint.hpp"

namespace patmine {

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "naive") return Algorithm::Naive;
  if (name == "count") return Algorithm::Count;
  if (name == "dfs") return Algorithm::Dfs;
  return std::nullopt;
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Naive: return "naive";
    case Algorithm::Count: return "count";
    case Algorithm::Dfs: return "dfs";
  }
  return "unknown";
}

namespace {

struct SequenceHash {
  std::size_t operator()(const Sequence& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : s) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

template <typename Generate>
PatternSet generate_and_count(const SequenceDatabase& db, std::uint64_t sigma,
                              const MiningOptions& options, Generate generate_one) {
  std::unordered_map<Sequence, std::uint64_t, SequenceHash> counts;
  for (const auto& seq : db) {
    if (options.stop.stop_requested()) throw MiningCancelled();
    for (auto& s : generate_one(seq)) ++counts[s];
  }
  PatternSet result;
  for (auto& [s, count] : counts) {
    if (count >= sigma) result.emplace(s, count);
  }
  return result;
}

// Projected database: snapshots grouped by sequence, in ascending sequence
// order. Each group is varint(sequence gap), varint(count), then count pairs
// of varint(position delta), varint(state) sorted by (position, state).
class ProjectedDatabase {
 public:
  void add(std::uint32_t sequence, std::uint32_t position, StateId state) {
    if (sequence != current_ || !open_) {
      flush();
      current_ = sequence;
      open_ = true;
      ++prefix_support_;
    }
    pending_.emplace_back(position, state);
  }

  void finish() { flush(); }

  std::uint64_t prefix_support() const { return prefix_support_; }
  bool empty() const { return bytes_.empty(); }

  void release() {
    bytes_.clear();
    bytes_.shrink_to_fit();
  }

  template <typename Fn>
  void for_each_group(Fn&& fn) const {
    const std::uint8_t* p = bytes_.data();
    const std::uint8_t* end = p + bytes_.size();
    std::uint32_t next_sequence = 0;
    std::vector<std::pair<std::uint32_t, StateId>> group;
    while (p < end) {
      auto sequence = static_cast<std::uint32_t>(next_sequence + detail::get_varint(p));
      auto count = detail::get_varint(p);
      group.clear();
      std::uint32_t position = 0;
      for (std::uint64_t i = 0; i < count; ++i) {
        position += static_cast<std::uint32_t>(detail::get_varint(p));
        auto state = static_cast<StateId>(detail::get_varint(p));
        group.emplace_back(position, state);
      }
      fn(sequence, group);
      next_sequence = sequence + 1;
    }
  }

  std::vector<Snapshot> snapshots() const {
    std::vector<Snapshot> out;
    for_each_group([&](std::uint32_t sequence, const auto& group) {
      for (auto [pos, state] : group) out.push_back({sequence, pos, state});
    });
    return out;
  }

 private:
  void flush() {
    if (!open_) return;
    std::sort(pending_.begin(), pending_.end());
    pending_.erase(std::unique(pending_.begin(), pending_.end()), pending_.end());
    detail::put_varint(bytes_, current_ - next_sequence_);
    detail::put_varint(bytes_, pending_.size());
    std::uint32_t last = 0;
    for (auto [pos, state] : pending_) {
      detail::put_varint(bytes_, pos - last);
      detail::put_varint(bytes_, state);
      last = pos;
    }
    next_sequence_ = current_ + 1;
    pending_.clear();
    open_ = false;
  }

  std::vector<std::uint8_t> bytes_;
  std::vector<std::pair<std::uint32_t, StateId>> pending_;
  std::uint32_t current_ = 0;
  std::uint32_t next_sequence_ = 0;
  bool open_ = false;
  std::uint64_t prefix_support_ = 0;
};

class DfsMiner {
 public:
  DfsMiner(const SequenceDatabase& db, const CFst& fst, const Dictionary& dict, std::uint64_t sigma,
           const MiningOptions& options)
      : db_(db), fst_(fst), dict_(dict), sigma_(sigma), options_(options) {
    std::size_t max_length = 0;
    for (const auto& seq : db_) max_length = std::max(max_length, seq.size());
    stride_ = fst_.num_states();
    stamps_.assign((max_length + 2) * stride_, 0);
  }

  PatternSet run() {
    ProjectedDatabase root;
    for (std::uint32_t i = 0; i < db_.size(); ++i) root.add(i, 1, fst_.initial());
    root.finish();
    expand(root);
    return std::move(result_);
  }

 private:
  void expand(const ProjectedDatabase& node) {
    if (options_.stop.stop_requested()) throw MiningCancelled();
    std::map<ItemId, ProjectedDatabase> children;
    std::uint64_t support = 0;
    std::size_t groups = 0;
    node.for_each_group([&](std::uint32_t sequence, const auto& group) {
      if ((++groups & 0x3ff) == 0 && options_.stop.stop_requested()) throw MiningCancelled();
      if (resume(sequence, group, children)) ++support;
    });
    for (auto& [item, child] : children) child.finish();

    if (options_.observer) {
      options_.observer({prefix_, node.snapshots(), node.prefix_support(), support, true});
    }
    if (!prefix_.empty() && support >= sigma_) result_.emplace(prefix_, support);

    for (auto& [item, child] : children) {
      if (child.prefix_support() > node.prefix_support()) {
        throw InvariantViolation("prefix support increased along a search path");
      }
      prefix_.push_back(item);
      if (child.prefix_support() >= sigma_) {
        expand(child);
      } else if (options_.observer) {
        options_.observer({prefix_, child.snapshots(), child.prefix_support(), std::nullopt, false});
      }
      prefix_.pop_back();
      child.release();
    }
  }

  // Runs every snapshot of one sequence until it produces an item or gets
  // stuck. Returns true if the sequence supports the current prefix.
  bool resume(std::uint32_t sequence, const std::vector<std::pair<std::uint32_t, StateId>>& group,
              std::map<ItemId, ProjectedDatabase>& children) {
    const Sequence& input = db_[sequence];
    const auto length = static_cast<std::uint32_t>(input.size());
    ++generation_;
    bool supported = false;
    stack_.assign(group.begin(), group.end());
    while (!stack_.empty()) {
      auto [pos, state] = stack_.back();
      stack_.pop_back();
      auto& stamp = stamps_[pos * stride_ + state];
      if (stamp == generation_) continue;
      stamp = generation_;

      if (fst_.is_final(state) && !prefix_.empty() &&
          (options_.mode == MatchMode::Partial || pos > length)) {
        supported = true;
      }
      if (pos > length) continue;
      const ItemId t = input[pos - 1];
      for (const auto& tr : fst_.transitions(state)) {
        if (!tr.in.matches(t, dict_)) continue;
        if (tr.out.is_eps()) {
          stack_.emplace_back(pos + 1, tr.to);
          continue;
        }
        tr.out.for_each_output(t, dict_, [&](ItemId w) {
          if (dict_.frequency(w) >= sigma_) children[w].add(sequence, pos + 1, tr.to);
        });
      }
    }
    return supported;
  }

  const SequenceDatabase& db_;
  const CFst& fst_;
  const Dictionary& dict_;
  std::uint64_t sigma_;
  const MiningOptions& options_;
  PatternSet result_;
  Sequence prefix_;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> stamps_;
  std::uint64_t generation_ = 0;
  std::vector<std::pair<std::uint32_t, StateId>> stack_;
};

}  // namespace

PatternSet mine_naive(const SequenceDatabase& db, const CFst& fst, const Dictionary& dict,
                      std::uint64_t sigma, const MiningOptions& options) {
  return generate_and_count(db, sigma, options, [&](const Sequence& seq) {
    return generate(fst, seq, dict, options.mode);
  });
}

PatternSet mine_count(const SequenceDatabase& db, const CFst& fst, const Dictionary& dict,
                      std::uint64_t sigma, const MiningOptions& options) {
  return generate_and_count(db, sigma, options, [&](const Sequence& seq) {
    return generate_filtered(fst, seq, dict, sigma, options.mode);
  });
}

PatternSet mine_dfs(const SequenceDatabase& db, const CFst& fst, const Dictionary& dict,
                    std::uint64_t sigma, const MiningOptions& options) {
  return DfsMiner(db, fst, dict, sigma, options).run();
}

PatternSet mine(Algorithm algorithm, const SequenceDatabase& db, const CFst& fst,
                const Dictionary& dict, std::uint64_t sigma, const MiningOptions& options) {
  switch (algorithm) {
    case Algorithm::Naive: return mine_naive(db, fst, dict, sigma, options);
    case Algorithm::Count: return mine_count(db, fst, dict, sigma, options);
    case Algorithm::Dfs: return mine_dfs(db, fst, dict, sigma, options);
  }
  return {};
}

}  // namespace patmine
