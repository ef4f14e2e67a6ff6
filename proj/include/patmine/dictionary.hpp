#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace patmine {

/// Dense item identifier, 1..size(). After freezing, ids follow descending
/// item frequency with ties broken by lexicographic gid.
using ItemId = std::uint32_t;

inline constexpr ItemId kNoItem = 0;

class SequenceDatabase;

/// Item vocabulary together with its generalization hierarchy (a DAG) and
/// per-item document frequencies.
///
/// A dictionary starts out mutable: items and edges may be added while
/// loading the hierarchy and the data. compute_flist() produces a frozen copy
/// with frequencies filled in and ids reassigned; frozen dictionaries are
/// immutable and may be shared across threads.
class Dictionary {
 public:
  Dictionary() = default;

  /// Parses `child<TAB>parent` lines. Blank lines and lines starting with
  /// '#' are skipped. Every gid in `vocabulary` is registered as well.
  /// Throws DataError on malformed lines or cycles.
  static Dictionary from_hierarchy(std::string_view text,
                                   std::span<const std::string> vocabulary = {});

  /// Registers `gid` as a root if it is not yet known. Returns its id.
  ItemId add_item(std::string_view gid);

  /// Adds the edge child => parent, registering both items. Duplicate edges
  /// are ignored. Throws DataError if the edge closes a cycle or the
  /// dictionary is frozen.
  void add_edge(std::string_view child, std::string_view parent);

  std::size_t size() const noexcept { return gids_.size(); }
  bool frozen() const noexcept { return frozen_; }
  bool valid(ItemId id) const noexcept { return id >= 1 && id <= gids_.size(); }

  std::optional<ItemId> find(std::string_view gid) const;
  /// Throws DataError for unknown gids.
  ItemId id(std::string_view gid) const;
  const std::string& gid(ItemId id) const;

  std::span<const ItemId> parents(ItemId id) const;
  std::span<const ItemId> children(ItemId id) const;

  /// Reflexive-transitive closure upward, in BFS order starting at `id`.
  std::span<const ItemId> ancestors(ItemId id) const;
  /// Reflexive-transitive closure downward, in BFS order starting at `id`.
  std::span<const ItemId> descendants(ItemId id) const;

  /// True iff `ancestor` is in anc(item).
  bool generalizes_to(ItemId item, ItemId ancestor) const;

  /// Number of database sequences containing a descendant of `id`. Zero
  /// until the dictionary has been frozen by compute_flist().
  std::uint64_t frequency(ItemId id) const;

  /// `gid<TAB>frequency` lines in id order (descending frequency).
  std::string export_flist() const;

  /// Maps every item of this dictionary to the id of the same gid in `other`.
  /// Index 0 is unused. Throws DataError if a gid is missing from `other`.
  std::vector<ItemId> recoding_to(const Dictionary& other) const;

 private:
  friend Dictionary compute_flist(const Dictionary& dict, const SequenceDatabase& db);

  void check_id(ItemId id) const;
  void ensure_closures() const;
  bool reaches(ItemId from, ItemId target) const;

  std::vector<std::string> gids_;
  std::unordered_map<std::string, ItemId> ids_;
  std::vector<std::vector<ItemId>> parents_;
  std::vector<std::vector<ItemId>> children_;
  std::vector<std::uint64_t> frequencies_;
  bool frozen_ = false;

  // Closures are computed on first use and dropped on mutation.
  mutable std::vector<std::vector<ItemId>> ancestors_;
  mutable std::vector<std::vector<ItemId>> descendants_;
  mutable bool closures_valid_ = false;
};

/// Computes item frequencies over `db` (whose ids refer to `dict`) and
/// returns a frozen dictionary with ids reassigned by frequency rank.
/// Use recode() to translate `db` to the new ids.
Dictionary compute_flist(const Dictionary& dict, const SequenceDatabase& db);

}  // namespace patmine
