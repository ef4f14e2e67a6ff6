#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patmine/dictionary.hpp"

namespace patmine {

using Sequence = std::vector<ItemId>;

/// Ordered multiset of encoded sequences. Sequence i is T_{i+1}.
class SequenceDatabase {
 public:
  SequenceDatabase() = default;
  explicit SequenceDatabase(std::vector<Sequence> sequences) : sequences_(std::move(sequences)) {}

  void add(Sequence sequence) { sequences_.push_back(std::move(sequence)); }

  std::size_t size() const noexcept { return sequences_.size(); }
  bool empty() const noexcept { return sequences_.empty(); }
  const Sequence& operator[](std::size_t i) const { return sequences_[i]; }

  auto begin() const noexcept { return sequences_.begin(); }
  auto end() const noexcept { return sequences_.end(); }

 private:
  std::vector<Sequence> sequences_;
};

/// One sequence per line, whitespace-separated gids. Empty lines yield empty
/// sequences; a trailing newline does not start a new sequence. Unknown gids
/// are registered as root items.
SequenceDatabase load_sequences(std::string_view text, Dictionary& dict);

/// Same as above, but unknown gids are rejected with a DataError naming the
/// line and token.
SequenceDatabase load_sequences(std::string_view text, const Dictionary& dict);

/// Translates ids using a table produced by Dictionary::recoding_to().
SequenceDatabase recode(const SequenceDatabase& db, std::span<const ItemId> table);

/// Renders a sequence as space-separated gids.
std::string decode(const Sequence& sequence, const Dictionary& dict);

struct DatabaseStats {
  std::size_t count = 0;
  std::size_t total_items = 0;
  std::size_t max_length = 0;
  std::size_t distinct_items = 0;
  /// Average length rounded to one decimal.
  double average_length = 0.0;
};

DatabaseStats stats(const SequenceDatabase& db);

/// Frozen dictionary plus the matching encoded database.
struct Dataset {
  Dictionary dict;
  SequenceDatabase db;
};

/// Loads hierarchy and sequences, computes the f-list and recodes the data.
Dataset load_dataset(std::string_view sequences_text, std::string_view hierarchy_text = {});

}  // namespace patmine
