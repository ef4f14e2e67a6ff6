#pragma once

#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "patmine/match.hpp"
#include "patmine/sequence_db.hpp"

namespace patmine::testing {

// Six-sequence running example and its item hierarchy.
inline constexpr std::string_view kExampleSequences =
    "c a1 b12 e\n"
    "a1 b2 e\n"
    "d a2 a1 a2 b11 e\n"
    "d a1 B e\n"
    "e a1 b2 d\n"
    "c a1 a1 a1 b2 e\n";

inline constexpr std::string_view kExampleHierarchy =
    "b11\tb1\n"
    "b12\tb1\n"
    "b1\tB\n"
    "b2\tB\n"
    "a1\tA\n"
    "a2\tA\n";

inline constexpr std::string_view kExamplePattern = "[c|d]([A^|B=^]+)e";

inline Dataset example_dataset() { return load_dataset(kExampleSequences, kExampleHierarchy); }

/// Encodes space-separated gids.
inline Sequence seq(const Dictionary& dict, std::string_view text) {
  Sequence out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(dict.id(token));
  return out;
}

inline SequenceSet seqs(const Dictionary& dict, std::initializer_list<std::string_view> texts) {
  SequenceSet out;
  for (auto t : texts) out.insert(seq(dict, t));
  return out;
}

inline std::set<std::string> gids(const Dictionary& dict, std::span<const ItemId> ids) {
  std::set<std::string> out;
  for (auto id : ids) out.insert(dict.gid(id));
  return out;
}

}  // namespace patmine::testing
