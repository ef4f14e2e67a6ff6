#include "patmine/sequence_db.hpp"

#include <cmath>
#include <unordered_set>

#include "patmine/error.hpp"

namespace patmine {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

template <typename Resolve>
SequenceDatabase parse_sequences(std::string_view text, Resolve resolve) {
  SequenceDatabase db;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    Sequence seq;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !is_space(line[i])) ++i;
      if (i > start) seq.push_back(resolve(line.substr(start, i - start), line_no));
    }
    db.add(std::move(seq));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return db;
}

}  // namespace

SequenceDatabase load_sequences(std::string_view text, Dictionary& dict) {
  if (dict.frozen()) return load_sequences(text, static_cast<const Dictionary&>(dict));
  return parse_sequences(text, [&](std::string_view token, std::size_t) { return dict.add_item(token); });
}

SequenceDatabase load_sequences(std::string_view text, const Dictionary& dict) {
  return parse_sequences(text, [&](std::string_view token, std::size_t line_no) {
    auto id = dict.find(token);
    if (!id) {
      throw DataError("sequence line " + std::to_string(line_no) + ": unknown item '" +
                      std::string(token) + "'");
    }
    return *id;
  });
}

SequenceDatabase recode(const SequenceDatabase& db, std::span<const ItemId> table) {
  SequenceDatabase out;
  for (const auto& seq : db) {
    Sequence mapped;
    mapped.reserve(seq.size());
    for (ItemId item : seq) mapped.push_back(table[item]);
    out.add(std::move(mapped));
  }
  return out;
}

std::string decode(const Sequence& sequence, const Dictionary& dict) {
  std::string out;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i) out += ' ';
    out += dict.gid(sequence[i]);
  }
  return out;
}

DatabaseStats stats(const SequenceDatabase& db) {
  DatabaseStats s;
  std::unordered_set<ItemId> distinct;
  for (const auto& seq : db) {
    ++s.count;
    s.total_items += seq.size();
    s.max_length = std::max(s.max_length, seq.size());
    distinct.insert(seq.begin(), seq.end());
  }
  s.distinct_items = distinct.size();
  if (s.count > 0) {
    // Round half up on the exact rational total/count.
    auto tenths = (20 * s.total_items + s.count) / (2 * s.count);
    s.average_length = static_cast<double>(tenths) / 10.0;
  }
  return s;
}

Dataset load_dataset(std::string_view sequences_text, std::string_view hierarchy_text) {
  Dictionary raw = Dictionary::from_hierarchy(hierarchy_text);
  SequenceDatabase raw_db = load_sequences(sequences_text, raw);
  Dictionary dict = compute_flist(raw, raw_db);
  auto table = raw.recoding_to(dict);
  return {std::move(dict), recode(raw_db, table)};
}

}  // namespace patmine
