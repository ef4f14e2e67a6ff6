#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stop_token>
#include <string_view>
#include <vector>

#include "patmine/dictionary.hpp"
#include "patmine/fst.hpp"
#include "patmine/sequence_db.hpp"

namespace patmine {

/// Frequent sequences with their frequencies (>= sigma, never empty).
using PatternSet = std::map<Sequence, std::uint64_t>;

enum class Algorithm { Naive, Count, Dfs };

std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algorithm);

/// Resumable simulation state: the next input position (1-based) of
/// database sequence `sequence` (0-based) and the current machine state.
struct Snapshot {
  std::uint32_t sequence = 0;
  std::uint32_t position = 1;
  StateId state = 0;

  friend auto operator<=>(const Snapshot&, const Snapshot&) = default;
};

/// One node of the pattern-growth tree as seen by an observer.
struct NodeReport {
  Sequence prefix;
  std::vector<Snapshot> snapshots;
  /// Distinct sequences in the projected database.
  std::uint64_t prefix_support = 0;
  /// Number of sequences generating `prefix`; only known for expanded nodes.
  std::optional<std::uint64_t> support;
  bool expanded = false;
};

using NodeObserver = std::function<void(const NodeReport&)>;

struct MiningOptions {
  MatchMode mode = MatchMode::Full;
  /// Checked periodically; a stop request aborts with MiningCancelled.
  std::stop_token stop;
  /// DFS only: called once for every node created in the search tree.
  NodeObserver observer;
};

/// Generate-and-count over the full generated sets.
PatternSet mine_naive(const SequenceDatabase& db, const CFst& fst, const Dictionary& dict,
                      std::uint64_t sigma, const MiningOptions& options = {});

/// Generate-and-count over generated sets restricted to frequent items.
PatternSet mine_count(const SequenceDatabase& db, const CFst& fst, const Dictionary& dict,
                      std::uint64_t sigma, const MiningOptions& options = {});

/// Depth-first pattern growth over projected databases of snapshots.
PatternSet mine_dfs(const SequenceDatabase& db, const CFst& fst, const Dictionary& dict,
                    std::uint64_t sigma, const MiningOptions& options = {});

PatternSet mine(Algorithm algorithm, const SequenceDatabase& db, const CFst& fst,
                const Dictionary& dict, std::uint64_t sigma, const MiningOptions& options = {});

}  // namespace patmine
